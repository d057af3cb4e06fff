#include "run_config.hpp"

#include <fstream>
#include <stdexcept>

namespace solprop::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
    throw std::invalid_argument("config field '" + field + "': " + what);
}

double get_number(const json& j, const std::string& field, double fallback, bool required = false) {
    if (!j.contains(field)) {
        if (required) bad_field(field, "missing");
        return fallback;
    }
    if (!j.at(field).is_number()) bad_field(field, "expected a number");
    return j.at(field).get<double>();
}

} // namespace

RunConfig RunConfig::from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
    RunConfig cfg;
    if (j.contains("solitons")) {
        if (!j.at("solitons").is_array()) bad_field("solitons", "expected an array of {a, b}");
        int idx = 0;
        for (const auto& m : j.at("solitons")) {
            ++idx;
            const std::string where = "solitons[" + std::to_string(idx) + "]";
            if (!m.is_object() || !m.contains("a")) bad_field(where, "expected an object with 'a'");
            const double a = get_number(m, "a", 0.0, true);
            const double b = get_number(m, "b", 0.0);
            if (!(a > 0.0)) bad_field(where + ".a", "must be positive");
            cfg.solitons.emplace_back(a, b);
        }
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid.x_min = get_number(g, "x_min", cfg.grid.x_min);
        cfg.grid.x_max = get_number(g, "x_max", cfg.grid.x_max);
        if (g.contains("points")) {
            if (!g.at("points").is_number_integer()) bad_field("grid.points", "expected an integer");
            cfg.grid.points = g.at("points").get<int>();
        }
        if (cfg.grid.points < 2) bad_field("grid.points", "need at least 2");
        if (!(cfg.grid.x_max > cfg.grid.x_min)) bad_field("grid", "x_max must exceed x_min");
    }
    if (j.contains("time")) {
        const auto& t = j.at("time");
        cfg.time_re = get_number(t, "re", cfg.time_re);
        cfg.time_im = get_number(t, "im", cfg.time_im);
        if (cfg.time_im > 0.0) bad_field("time.im", "must be <= 0");
        if (cfg.time_re == 0.0 && cfg.time_im == 0.0) bad_field("time", "t = 0 is not a valid propagation time");
    }
    if (j.contains("format")) {
        if (!j.at("format").is_string()) bad_field("format", "expected \"csv\" or \"json\"");
        cfg.format = j.at("format").get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json") bad_field("format", "expected \"csv\" or \"json\"");
    }
    if (j.contains("kernel")) {
        const auto& k = j.at("kernel");
        if (k.contains("split")) {
            if (!k.at("split").is_boolean()) bad_field("kernel.split", "expected a boolean");
            cfg.kernel_split = k.at("split").get<bool>();
        }
    }
    if (j.contains("evolve")) {
        const auto& e = j.at("evolve");
        if (e.contains("packet")) {
            const auto& p = e.at("packet");
            cfg.evolve.packet.center = get_number(p, "center", 0.0);
            cfg.evolve.packet.width = get_number(p, "width", 1.0);
            cfg.evolve.packet.momentum = get_number(p, "momentum", 0.0);
            if (!(cfg.evolve.packet.width > 0.0)) bad_field("evolve.packet.width", "must be positive");
        }
        if (e.contains("frames")) {
            if (!e.at("frames").is_number_integer()) bad_field("evolve.frames", "expected an integer");
            cfg.evolve.frames = e.at("frames").get<int>();
            if (cfg.evolve.frames < 1) bad_field("evolve.frames", "need at least 1");
        }
    }
    if (j.contains("verify")) {
        const auto& v = j.at("verify");
        if (v.contains("corrupt_kernel")) {
            if (!v.at("corrupt_kernel").is_boolean()) bad_field("verify.corrupt_kernel", "expected a boolean");
            cfg.verify.corrupt_kernel = v.at("corrupt_kernel").get<bool>();
        }
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: " + std::string(e.what()));
    }
    return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
    json j;
    j["solitons"] = json::array();
    for (const auto& [a, b] : solitons) j["solitons"].push_back({{"a", a}, {"b", b}});
    j["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"points", grid.points}};
    j["time"] = {{"re", time_re}, {"im", time_im}};
    j["format"] = format;
    j["kernel"] = {{"split", kernel_split}};
    j["evolve"] = {{"packet", {{"center", evolve.packet.center},
                               {"width", evolve.packet.width},
                               {"momentum", evolve.packet.momentum}}},
                   {"frames", evolve.frames}};
    j["verify"] = {{"corrupt_kernel", verify.corrupt_kernel}};
    return j;
}

SolitonParams RunConfig::params() const { return SolitonParams::reflectionless(solitons); }

TimeParam RunConfig::time_param() const { return TimeParam(std::complex<double>(time_re, time_im)); }

} // namespace solprop::cli
