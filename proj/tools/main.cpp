#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "run_config.hpp"
#include "solprop/quadrature.hpp"
#include "solprop/verify.hpp"

namespace {

using namespace solprop;
using nlohmann::json;
using cli::RunConfig;

constexpr int EXIT_VERIFY_FAILED = 1;
constexpr int EXIT_USAGE = 2;

std::string g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Output {
    std::ostream* os;
    std::ofstream file;

    explicit Output(const std::string& path) {
        if (path.empty()) {
            os = &std::cout;
            return;
        }
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
        os = &file;
    }
};

std::vector<double> grid_points(const cli::GridSpec& grid) {
    std::vector<double> xs(grid.points);
    const double step = (grid.x_max - grid.x_min) / (grid.points - 1);
    for (int i = 0; i < grid.points; ++i) xs[i] = grid.x_min + step * i;
    return xs;
}

int cmd_potential(const RunConfig& cfg, const std::string& out_path, const std::string& format) {
    const SolitonParams params = cfg.params();
    const auto xs = grid_points(cfg.grid);
    Output out(out_path);
    if (format == "csv") {
        *out.os << "x,V\n";
        for (double x : xs) *out.os << g(x) << "," << g(potential(params, x)) << "\n";
    } else {
        json j;
        j["command"] = "potential";
        for (double x : xs) {
            j["x"].push_back(x);
            j["V"].push_back(potential(params, x));
        }
        *out.os << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& out_path, const std::string& format) {
    const SolitonParams params = cfg.params();
    const auto xs = grid_points(cfg.grid);
    const int n = params.size();
    std::vector<double> energies(n), norms(n);
    for (int i = 1; i <= n; ++i) {
        energies[i - 1] = bound_energy(params, i);
        norms[i - 1] = bound_state_norm(params, i);
    }
    Output out(out_path);
    if (format == "csv") {
        for (int i = 1; i <= n; ++i)
            *out.os << "# bound_state " << i << ": E=" << g(energies[i - 1]) << ", norm=" << g(norms[i - 1]) << "\n";
        *out.os << "x";
        for (int i = 1; i <= n; ++i) *out.os << ",phi_" << i;
        *out.os << "\n";
        for (double x : xs) {
            *out.os << g(x);
            for (int i = 1; i <= n; ++i) *out.os << "," << g(bound_state(params, i, x));
            *out.os << "\n";
        }
    } else {
        json j;
        j["command"] = "spectrum";
        j["energies"] = energies;
        j["norms"] = norms;
        j["x"] = xs;
        j["phi"] = json::array();
        for (int i = 1; i <= n; ++i) {
            json col = json::array();
            for (double x : xs) col.push_back(bound_state(params, i, x));
            j["phi"].push_back(std::move(col));
        }
        *out.os << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_kernel(const RunConfig& cfg, const std::string& out_path, const std::string& format) {
    const SolitonParams params = cfg.params();
    const TimeParam t = cfg.time_param();
    const auto xs = grid_points(cfg.grid);
    Output out(out_path);
    json j;
    if (format == "csv") {
        *out.os << "x,y,re,im";
        if (cfg.kernel_split) *out.os << ",re_d,im_d,re_c,im_c";
        *out.os << "\n";
    } else {
        j["command"] = "kernel";
        j["t"] = {{"re", t.value().real()}, {"im", t.value().imag()}};
        j["rows"] = json::array();
    }
    for (double x : xs) {
        for (double y : xs) {
            const KernelSample sample{x, y, t.value(), kernel_closed(params, x, y, t),
                                      KernelPath::closed_form};
            if (format == "csv") {
                *out.os << g(sample.x) << "," << g(sample.y) << "," << g(sample.value.real()) << ","
                        << g(sample.value.imag());
                if (cfg.kernel_split) {
                    const auto [kd, kc] = kernel_split(params, x, y, t);
                    *out.os << "," << g(kd.real()) << "," << g(kd.imag()) << "," << g(kc.real()) << "," << g(kc.imag());
                }
                *out.os << "\n";
            } else {
                json row = {{"x", sample.x}, {"y", sample.y}, {"re", sample.value.real()},
                            {"im", sample.value.imag()}};
                if (cfg.kernel_split) {
                    const auto [kd, kc] = kernel_split(params, x, y, t);
                    row["re_d"] = kd.real();
                    row["im_d"] = kd.imag();
                    row["re_c"] = kc.real();
                    row["im_c"] = kc.imag();
                }
                j["rows"].push_back(std::move(row));
            }
        }
    }
    if (format == "json") *out.os << j.dump(2) << "\n";
    return 0;
}

int cmd_evolve(const RunConfig& cfg, const std::string& out_path, const std::string& format) {
    const SolitonParams params = cfg.params();
    const auto xs = grid_points(cfg.grid);
    SampledFunction psi0;
    psi0.x0 = cfg.grid.x_min;
    psi0.dx = (cfg.grid.x_max - cfg.grid.x_min) / (cfg.grid.points - 1);
    psi0.values.reserve(xs.size());
    for (double x : xs)
        psi0.values.push_back(gaussian_packet(x, cfg.evolve.packet.center, cfg.evolve.packet.width,
                                              cfg.evolve.packet.momentum));
    const std::complex<double> t_total(cfg.time_re, cfg.time_im);

    Output out(out_path);
    json j;
    if (format == "csv")
        *out.os << "t_re,t_im,x,re,im,norm\n";
    else {
        j["command"] = "evolve";
        j["frames"] = json::array();
    }
    for (int f = 0; f <= cfg.evolve.frames; ++f) {
        const std::complex<double> tf = t_total * (static_cast<double>(f) / cfg.evolve.frames);
        const SampledFunction psi = (f == 0) ? psi0 : evolve(params, psi0, TimeParam(tf));
        const double norm = psi.l2_norm();
        if (format == "csv") {
            for (std::size_t i = 0; i < psi.size(); ++i)
                *out.os << g(tf.real()) << "," << g(tf.imag()) << "," << g(psi.x_at(i)) << ","
                        << g(psi.values[i].real()) << "," << g(psi.values[i].imag()) << "," << g(norm) << "\n";
        } else {
            json frame;
            frame["t"] = {{"re", tf.real()}, {"im", tf.imag()}};
            frame["norm"] = norm;
            for (std::size_t i = 0; i < psi.size(); ++i) {
                frame["x"].push_back(psi.x_at(i));
                frame["psi"].push_back({{"re", psi.values[i].real()}, {"im", psi.values[i].imag()}});
            }
            j["frames"].push_back(std::move(frame));
        }
    }
    if (format == "json") *out.os << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& out_path, std::uint64_t seed) {
    const SolitonParams params = cfg.params();
    SuiteOptions opts;
    opts.corrupt_kernel = cfg.verify.corrupt_kernel;
    const auto reports = run_suite(params, seed, opts);
    Output out(out_path);
    bool all_pass = true;
    for (const auto& r : reports) {
        *out.os << r.to_json_line() << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : EXIT_VERIFY_FAILED;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"N-soliton potentials of the 1-D Schroedinger equation and their exact propagators"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format_override;
    std::uint64_t seed = 1;
    bool echo_config = false;

    auto* sub_potential = app.add_subcommand("potential", "tabulate V_N(x) on the grid");
    auto* sub_spectrum = app.add_subcommand("spectrum", "bound energies and eigenfunction samples");
    auto* sub_kernel = app.add_subcommand("kernel", "tabulate the propagator on the grid");
    auto* sub_evolve = app.add_subcommand("evolve", "propagate a Gaussian packet with the exact kernel");
    auto* sub_verify = app.add_subcommand("verify", "run the oracle suite, emit JSON-lines reports");
    for (CLI::App* sub : {sub_potential, sub_spectrum, sub_kernel, sub_evolve, sub_verify}) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--format", format_override, "csv | json (overrides config)");
        sub->add_flag("--echo-config", echo_config, "print the parsed config back as JSON and exit");
    }
    sub_verify->add_option("--seed", seed, "suite seed (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    }

    try {
        const RunConfig cfg = RunConfig::from_file(config_path);
        const std::string format = format_override.empty() ? cfg.format : format_override;
        if (format != "csv" && format != "json")
            throw std::invalid_argument("--format: expected csv or json");
        if (echo_config) {
            std::cout << cfg.to_json().dump(2) << "\n";
            return 0;
        }
        if (sub_potential->parsed()) return cmd_potential(cfg, out_path, format);
        if (sub_spectrum->parsed()) return cmd_spectrum(cfg, out_path, format);
        if (sub_kernel->parsed()) return cmd_kernel(cfg, out_path, format);
        if (sub_evolve->parsed()) return cmd_evolve(cfg, out_path, format);
        if (sub_verify->parsed()) return cmd_verify(cfg, out_path, seed);
        return EXIT_USAGE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
}
