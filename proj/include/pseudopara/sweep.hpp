#pragma once

// Parameter sweeps over (p, gamma, k, omega amplitude) with a Gaussian
// forcing a exp(-r^2/s^2) and a shared grid and run control.

#include "pseudopara/blowup.hpp"
#include "pseudopara/grid.hpp"
#include "pseudopara/profile.hpp"
#include "pseudopara/solver.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pseudopara {

struct SweepConfig {
    int ndim = 3;
    double r_max = 100.0;
    int n_r = 1001;
    Boundary bc = Boundary::Dirichlet;
    std::vector<double> p{2.0};
    std::vector<double> gamma{0.0};
    std::vector<double> k{1.0};
    std::vector<double> omega_amp{0.1};
    double omega_width = 1.0;
    RadialProfile u0;
    RunControl control;
    double near_critical_band = 0.1;

    /// Throws std::invalid_argument; rejects amplitudes whose forcing has no
    /// positive cutoff integral.
    void validate() const;
};

struct CaseParams {
    int ndim = 3;
    double k = 0.0;
    double p = 2.0;
    double gamma = 0.0;
    double omega_amp = 0.0;

    auto operator<=>(const CaseParams&) const = default;
};

struct CaseResult {
    CaseParams params;
    Outcome outcome = Outcome::Undecided;
    Outcome raw_outcome = Outcome::Undecided;  // detector output before the near-critical rule
    std::optional<double> t_star;
    std::size_t steps = 0;
    bool flagged_near_critical = false;
    bool monotone_growth = false;  // sup-norm nondecreasing over the last decade
    double final_time = 0.0;
    double final_sup_norm = 0.0;
    double wall_ms = 0.0;
    std::string error;  // nonempty if the case failed; outcome is then undecided
};

/// Runs every case of the Cartesian product; workers <= 0 uses all
/// available threads. Results are sorted by (N, k, p, gamma, omega_amp).
///
/// Inside the near-critical band |p - p_c| < band a "bounded" verdict with a
/// sup-norm still rising over the last decade is reported as undecided.
std::vector<CaseResult> run_sweep(const SweepConfig& config, int workers = 0);

/// CSV columns: N,k,p,gamma,omega_amp,outcome,t_star,steps,flagged_near_critical,wall_ms
void write_map_csv(std::ostream& os, const std::vector<CaseResult>& results);

/// p x gamma pivot of the outcomes.
struct OutcomeMap {
    int ndim = 3;
    double p_critical = 0.0;
    std::vector<double> p_values;
    std::vector<double> gamma_values;
    std::vector<std::vector<std::string>> cells;  // [p][gamma]; "/" joins several k or amplitudes

    /// Text table; a marker row separates p < p_c from p >= p_c.
    std::string render() const;
};

OutcomeMap classify_map(const std::vector<CaseResult>& results);

}  // namespace pseudopara
