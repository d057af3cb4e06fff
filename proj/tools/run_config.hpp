#ifndef SOLPROP_TOOLS_RUN_CONFIG_HPP
#define SOLPROP_TOOLS_RUN_CONFIG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "solprop/propagator.hpp"

namespace solprop::cli {

struct GridSpec {
    double x_min = -5.0;
    double x_max = 5.0;
    int points = 101;
};

struct PacketSpec {
    double center = 0.0;
    double width = 1.0;
    double momentum = 0.0;
};

struct EvolveSpec {
    PacketSpec packet;
    int frames = 4;
};

struct VerifySpec {
    bool corrupt_kernel = false;
};

struct RunConfig {
    std::vector<std::pair<double, double>> solitons; // (a, b)
    GridSpec grid;
    double time_re = 0.5;
    double time_im = 0.0;
    std::string format = "csv"; // csv | json
    bool kernel_split = false;
    EvolveSpec evolve;
    VerifySpec verify;

    // Throws std::invalid_argument with field diagnostics.
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
    nlohmann::json to_json() const;

    SolitonParams params() const;
    TimeParam time_param() const;
};

} // namespace solprop::cli

#endif
