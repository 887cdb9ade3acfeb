#pragma once

// Run configuration: flat `key = value` lines grouped in [sections].
//
//   [problem]  k, p, gamma, omega, u0, nonlinear
//   [grid]     ndim, r_max, n_r, bc
//   [time]     dt0, horizon, adaptive, max_growth, growth_floor, dt_min,
//              grow_factor, grow_below, dt_max, record_every
//   [blowup]   threshold
//   [output]   trajectory, report, map, residual, scaling
//   [sweep]    p, gamma, k, omega_amp (comma lists), omega_width, near_critical_band
//   [testfn]   horizon, radius
//
// Lines starting with # or ; are comments. Every key has a default.

#include "pseudopara/grid.hpp"
#include "pseudopara/solver.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pseudopara {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridConfig {
    int ndim = 3;
    double r_max = 20.0;
    int n_r = 201;
    Boundary bc = Boundary::Neumann;

    RadialGrid build() const { return RadialGrid(ndim, r_max, n_r, bc); }
};

struct OutputConfig {
    std::string trajectory = "trajectory.csv";
    std::string report = "report.json";
    std::string map = "map.csv";
    std::string residual = "residual.json";
    std::string scaling = "scaling.csv";
};

struct SweepSettings {
    std::vector<double> p{2.0, 3.0, 6.0};
    std::vector<double> gamma{0.0, 0.5};
    std::vector<double> k{1.0};
    std::vector<double> omega_amp{0.1};
    double omega_width = 1.0;
    double near_critical_band = 0.1;
};

struct TestfnSettings {
    double horizon = 1.0;
    double radius = 4.0;
};

struct RunConfig {
    ProblemSpec problem;
    GridConfig grid;
    RunControl control;
    OutputConfig output;
    SweepSettings sweep;
    TestfnSettings testfn;

    /// Range checks of every section; throws ConfigError naming the key.
    void validate() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Fully resolved config in canonical form; parse(serialize(c)) == c.
std::string serialize(const RunConfig& cfg);

/// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// The canonical config with every line prefixed by `prefix`, preceded by a
/// config_hash line. Used as the header of CSV outputs.
std::string header_block(const RunConfig& cfg, std::string_view prefix = "# ");

/// Path from the flag, else from the PSEUDOPARA_CONFIG environment variable.
std::string resolve_config_path(const std::string& flag_value);

}  // namespace pseudopara
