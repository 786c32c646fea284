#pragma once

#include "sparsespec/lattice.hpp"
#include "sparsespec/spectrum.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <string_view>

namespace sparsespec::cli {

using lattice::Index;

struct Lambda0Grid {
    double min = 0.01;
    double max = 100.0;
    Index count = 81;

    friend bool operator==(const Lambda0Grid&, const Lambda0Grid&) = default;
};

/// Command parameters. Every field has a default and every default is
/// echoed back into command output.
struct Params {
    // a-estimate and classification
    Index window_start = 100;
    Index window_end = 10000;
    double infinity_threshold = 1e6;
    double min_growth_exponent = 0.1;
    double tail_fraction = 0.1;
    double margin = 0.05;
    double zero_threshold = 1e-6;
    double sparse_threshold = 10.0;
    Lambda0Grid lambda0_grid;

    // growth
    double lambda0 = 1.0;

    // propagate / eigs
    Index N = 10;
    double lambda = 1.0;
    std::array<double, 2> xi0{0.0, 1.0};
    Index samples_per_interval = 0;
    double lambda_min = 0.1;
    double lambda_max = 100.0;
    Index grid_intervals = 2000;
    double tol = 1e-10;

    // finite-difference oracle
    std::string oracle = "none";  ///< "none" | "fd"
    double h = 1e-3;
    double alignment_tolerance = 0.5;
    Index max_nodes = 100000;

    friend bool operator==(const Params&, const Params&) = default;
};

struct SystemConfig {
    Kind kind = Kind::delta;
    lattice::PositionGenerator positions = lattice::Factorial{};
    Index max_index = lattice::default_max_index;
    lattice::StrengthGenerator strengths = lattice::PowerStrength{};

    friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct OutputConfig {
    std::string format;  ///< "", "csv" or "json"; empty picks the command default
    std::string path;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
    SystemConfig system;
    Params params;
    OutputConfig output;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a JSON config document. Unknown keys and ill-typed values raise
/// ConfigError naming the offending field.
RunConfig parse_config(std::string_view text);
RunConfig config_from_json(const nlohmann::ordered_json& doc);

/// Canonical JSON with every default filled in; parse_config inverts it.
nlohmann::ordered_json to_json(const RunConfig& config);
nlohmann::ordered_json to_json(const SystemConfig& system);
nlohmann::ordered_json to_json(const Params& params);
std::string serialize_config(const RunConfig& config);

lattice::SystemSpec build_system(const SystemConfig& system);
spectrum::ClassifyOptions classify_options(const Params& params);

}  // namespace sparsespec::cli
