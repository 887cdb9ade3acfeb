#include "pseudopara/sweep.hpp"

#include "pseudopara/testfn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace pseudopara {

void SweepConfig::validate() const {
    if (p.empty() || gamma.empty() || k.empty() || omega_amp.empty()) {
        throw std::invalid_argument("sweep: p, gamma, k and omega_amp lists must be nonempty");
    }
    for (double v : p) {
        if (!(v > 1.0)) {
            throw std::invalid_argument("sweep: p must exceed 1");
        }
    }
    for (double v : gamma) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw std::invalid_argument("sweep: gamma must lie in [0, 1)");
        }
    }
    for (double v : k) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("sweep: k must be nonnegative");
        }
    }
    if (!(omega_width > 0.0)) {
        throw std::invalid_argument("sweep: omega width must be positive");
    }
    for (double a : omega_amp) {
        const double s = omega_width;
        const auto radius =
            omega_positivity_radius([a, s](double r) { return a * std::exp(-r * r / (s * s)); }, ndim);
        if (!radius) {
            throw std::invalid_argument("sweep: forcing amplitude " + format_double(a) +
                                        " has no positive integral");
        }
    }
    (void)RadialGrid(ndim, r_max, n_r, bc);
    control.validate();
}

namespace {

CaseResult run_case(const SweepConfig& cfg, const CaseParams& cp) {
    CaseResult res;
    res.params = cp;
    const double pc = p_critical(cp.ndim);
    res.flagged_near_critical = std::abs(cp.p - pc) < cfg.near_critical_band;
    const auto start = std::chrono::steady_clock::now();
    try {
        ProblemSpec spec;
        spec.k = cp.k;
        spec.p = cp.p;
        spec.gamma = cp.gamma;
        spec.omega = RadialProfile::gaussian(cp.omega_amp, cfg.omega_width);
        spec.u0 = cfg.u0;
        const RadialGrid grid(cfg.ndim, cfg.r_max, cfg.n_r, cfg.bc);
        const RunResult run_result = run(spec, grid, cfg.control);
        const auto& rep = run_result.report;
        res.raw_outcome = rep.outcome;
        res.outcome = rep.outcome;
        res.t_star = rep.t_star_estimate;
        res.steps = rep.steps;
        res.final_time = rep.final_time;
        res.final_sup_norm = rep.final_sup_norm;
        res.monotone_growth = monotone_last_decade(run_result.sup_series) &&
                              last_decade_growth(run_result.sup_series) > 1.0;
        if (res.flagged_near_critical && res.outcome == Outcome::Bounded && res.monotone_growth) {
            res.outcome = Outcome::Undecided;
        }
    } catch (const std::exception& e) {
        res.outcome = Outcome::Undecided;
        res.raw_outcome = Outcome::Undecided;
        res.error = e.what();
    }
    res.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace

std::vector<CaseResult> run_sweep(const SweepConfig& config, int workers) {
    config.validate();
    std::vector<CaseParams> cases;
    for (double k : config.k) {
        for (double p : config.p) {
            for (double g : config.gamma) {
                for (double a : config.omega_amp) {
                    cases.push_back({config.ndim, k, p, g, a});
                }
            }
        }
    }
    std::sort(cases.begin(), cases.end());
    std::vector<CaseResult> results(cases.size());
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        results[static_cast<std::size_t>(i)] = run_case(config, cases[static_cast<std::size_t>(i)]);
    }
    return results;
}

void write_map_csv(std::ostream& os, const std::vector<CaseResult>& results) {
    os << "N,k,p,gamma,omega_amp,outcome,t_star,steps,flagged_near_critical,wall_ms\n";
    for (const auto& r : results) {
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
        os << r.params.ndim << ',' << format_double(r.params.k) << ',' << format_double(r.params.p)
           << ',' << format_double(r.params.gamma) << ',' << format_double(r.params.omega_amp) << ','
           << to_string(r.outcome) << ',' << (r.t_star ? format_double(*r.t_star) : std::string())
           << ',' << r.steps << ',' << (r.flagged_near_critical ? "true" : "false") << ','
           << wall << '\n';
    }
}

OutcomeMap classify_map(const std::vector<CaseResult>& results) {
    if (results.empty()) {
        throw std::invalid_argument("classify_map: no results");
    }
    OutcomeMap m;
    m.ndim = results.front().params.ndim;
    m.p_critical = p_critical(m.ndim);
    std::set<double> ps;
    std::set<double> gs;
    for (const auto& r : results) {
        if (r.params.ndim != m.ndim) {
            throw std::invalid_argument("classify_map: results mix dimensions");
        }
        ps.insert(r.params.p);
        gs.insert(r.params.gamma);
    }
    m.p_values.assign(ps.begin(), ps.end());
    m.gamma_values.assign(gs.begin(), gs.end());
    m.cells.assign(m.p_values.size(), std::vector<std::string>(m.gamma_values.size()));
    for (const auto& r : results) {
        const auto i = static_cast<std::size_t>(
            std::lower_bound(m.p_values.begin(), m.p_values.end(), r.params.p) - m.p_values.begin());
        const auto j = static_cast<std::size_t>(
            std::lower_bound(m.gamma_values.begin(), m.gamma_values.end(), r.params.gamma) -
            m.gamma_values.begin());
        auto& cell = m.cells[i][j];
        std::string tag = to_string(r.outcome);
        if (r.flagged_near_critical) {
            tag += "*";
        }
        cell += cell.empty() ? tag : "/" + tag;
    }
    return m;
}

std::string OutcomeMap::render() const {
    std::ostringstream os;
    constexpr int w = 14;
    auto pad = [](std::string s) {
        if (s.size() < static_cast<std::size_t>(w)) {
            s.append(static_cast<std::size_t>(w) - s.size(), ' ');
        }
        return s;
    };
    os << pad("p \\ gamma");
    for (double g : gamma_values) {
        os << pad(format_double(g));
    }
    os << '\n';
    bool marked = false;
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        if (!marked && p_values[i] >= p_critical) {
            os << "---- p_c = " << format_double(p_critical) << " (N = " << ndim << ") ----\n";
            marked = true;
        }
        os << pad(format_double(p_values[i]));
        for (const auto& c : cells[i]) {
            os << pad(c);
        }
        os << '\n';
    }
    if (!marked) {
        os << "---- p_c = " << format_double(p_critical) << " (N = " << ndim << ") ----\n";
    }
    os << "(* near-critical row, |p - p_c| below the configured band)\n";
    return os.str();
}

}  // namespace pseudopara
