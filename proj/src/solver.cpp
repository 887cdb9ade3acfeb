#include "pseudopara/solver.hpp"

#include "pseudopara/fracint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pseudopara {

void ProblemSpec::validate() const {
    if (!(k >= 0.0)) {
        throw std::invalid_argument("k must be nonnegative");
    }
    if (!(p > 1.0)) {
        throw std::invalid_argument("p must exceed 1");
    }
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1)");
    }
}

void RunControl::validate() const {
    if (!(dt0 > 0.0)) {
        throw std::invalid_argument("dt0 must be positive");
    }
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("horizon must be positive");
    }
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("threshold must be positive");
    }
    if (!(max_growth > 1.0)) {
        throw std::invalid_argument("max_growth must exceed 1");
    }
    if (!(growth_floor > 0.0)) {
        throw std::invalid_argument("growth_floor must be positive");
    }
    if (!(dt_min > 0.0)) {
        throw std::invalid_argument("dt_min must be positive");
    }
    if (!(grow_factor >= 1.0)) {
        throw std::invalid_argument("grow_factor must be >= 1");
    }
    if (!(dt_max >= dt0)) {
        throw std::invalid_argument("dt_max must be >= dt0");
    }
    if (record_every < 1) {
        throw std::invalid_argument("record_every must be >= 1");
    }
}

Stepper::Stepper(ProblemSpec spec, RadialGrid grid) : spec_(std::move(spec)), grid_(std::move(grid)) {
    spec_.validate();
    const auto n = static_cast<std::size_t>(grid_.size());
    omega_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        omega_[i] = spec_.omega(grid_.r(static_cast<int>(i)));
    }
    if (grid_.boundary() == Boundary::Dirichlet) {
        omega_.back() = 0.0;
    }
    lo_.resize(n);
    di_.resize(n);
    up_.resize(n);
    rhs_.resize(n);
    lap_.resize(n);
}

SolverState Stepper::initial_state(double dt0) const {
    const auto n = static_cast<std::size_t>(grid_.size());
    SolverState s;
    s.dt = dt0;
    s.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.u[i] = spec_.u0(grid_.r(static_cast<int>(i)));
    }
    if (grid_.boundary() == Boundary::Dirichlet) {
        s.u.back() = 0.0;
    }
    s.history = History(n);
    std::vector<double> powered(n);
    for (std::size_t i = 0; i < n; ++i) {
        powered[i] = std::pow(std::abs(s.u[i]), spec_.p);
    }
    s.history.append(powered);
    s.times.push_back(0.0);
    s.memory.assign(n, 0.0);
    evaluate_memory(s);
    return s;
}

void Stepper::evaluate_memory(SolverState& state) const {
    const auto n = state.u.size();
    state.memory.assign(n, 0.0);
    if (!spec_.nonlinear) {
        return;
    }
    if (spec_.gamma == 0.0) {
        const auto last = state.history.row(state.history.rows() - 1);
        std::copy(last.begin(), last.end(), state.memory.begin());
        return;
    }
    std::vector<double> weights;
    product_trapezoid_weights(state.times, spec_.gamma, weights);
    memory_term(weights, state.history, state.memory);
}

bool Stepper::propose(const SolverState& state, double dt, std::vector<double>& u_new) {
    const auto n = state.u.size();
    const auto lo = grid_.lower();
    const auto di = grid_.diag();
    const auto up = grid_.upper();
    const double k = spec_.k;
    const double c = k + dt;

    apply_laplacian(state.u, grid_, lap_);
    for (std::size_t i = 0; i < n; ++i) {
        lo_[i] = -c * lo[i];
        di_[i] = 1.0 - c * di[i];
        up_[i] = -c * up[i];
        rhs_[i] = state.u[i] - k * lap_[i] + dt * (state.memory[i] + omega_[i]);
    }
    if (grid_.boundary() == Boundary::Dirichlet) {
        lo_[n - 1] = 0.0;
        di_[n - 1] = 1.0;
        up_[n - 1] = 0.0;
        rhs_[n - 1] = 0.0;
    }
    if (!solve_tridiagonal(lo_, di_, up_, rhs_, scratch_)) {
        return false;
    }
    for (double v : rhs_) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    u_new.assign(rhs_.begin(), rhs_.end());
    return true;
}

void Stepper::commit(SolverState& state, double dt, std::vector<double> u_new) const {
    state.u = std::move(u_new);
    state.t += dt;
    state.dt = dt;
    ++state.step_count;
    std::vector<double> powered(state.u.size());
    for (std::size_t i = 0; i < state.u.size(); ++i) {
        powered[i] = std::pow(std::abs(state.u[i]), spec_.p);
    }
    state.history.append(powered);
    state.times.push_back(state.t);
    if (spec_.gamma == 0.0) {
        state.history.keep_last_only();
        state.times.erase(state.times.begin(), state.times.end() - 1);
    }
    evaluate_memory(state);
}

SolverState step(SolverState state, const ProblemSpec& spec, const RadialGrid& grid) {
    if (state.diverged) {
        throw std::invalid_argument("step: state has diverged");
    }
    Stepper stepper(spec, grid);
    std::vector<double> u_new;
    if (!stepper.propose(state, state.dt, u_new)) {
        state.diverged = true;
        return state;
    }
    stepper.commit(state, state.dt, std::move(u_new));
    return state;
}

namespace {

double sup_norm(const std::vector<double>& u) {
    double m = 0.0;
    for (double v : u) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

TrajectoryRow make_row(const SolverState& s, const RadialGrid& grid, const std::vector<double>& omega_nodes) {
    const auto n = s.u.size();
    std::vector<double> sq(n);
    std::vector<double> src(n);
    for (std::size_t i = 0; i < n; ++i) {
        sq[i] = s.u[i] * s.u[i];
        src[i] = s.memory[i] + omega_nodes[i];
    }
    TrajectoryRow row;
    row.t = s.t;
    row.dt = s.step_count == 0 ? 0.0 : s.dt;
    row.sup_norm = sup_norm(s.u);
    row.l2_norm = std::sqrt(grid.integrate(sq));
    row.mass = grid.integrate(s.u);
    row.boundary_value = std::abs(s.u.back());
    row.source = grid.integrate(src);
    return row;
}

}  // namespace

RunResult run(const ProblemSpec& spec, const RadialGrid& grid, const RunControl& control) {
    spec.validate();
    control.validate();
    Stepper stepper(spec, grid);
    SolverState state = stepper.initial_state(control.dt0);

    std::vector<double> omega_nodes(state.u.size());
    for (std::size_t i = 0; i < omega_nodes.size(); ++i) {
        omega_nodes[i] = spec.omega(grid.r(static_cast<int>(i)));
    }
    if (grid.boundary() == Boundary::Dirichlet) {
        omega_nodes.back() = 0.0;
    }

    RunResult out;
    auto record = [&](bool force) {
        if (force || state.step_count % static_cast<std::size_t>(control.record_every) == 0) {
            if (out.trajectory.rows.empty() || out.trajectory.rows.back().t != state.t) {
                out.trajectory.rows.push_back(make_row(state, grid, omega_nodes));
            }
        }
        if (control.keep_fields) {
            out.trajectory.field_times.push_back(state.t);
            out.trajectory.fields.push_back(state.u);
        }
    };

    double sup = sup_norm(state.u);
    out.sup_series.push_back({0.0, sup});
    record(true);

    double dt = control.dt0;
    bool diverged = false;
    std::optional<double> hit_time;
    std::vector<double> u_new;
    const double t_end = control.horizon;

    if (sup >= control.threshold) {
        hit_time = 0.0;
    }
    while (!hit_time && state.t < t_end * (1.0 - 1e-14)) {
        const double dt_try = std::min(dt, t_end - state.t);
        const bool ok = stepper.propose(state, dt_try, u_new);
        double new_sup = ok ? sup_norm(u_new) : 0.0;
        if (!ok || (control.adaptive && new_sup / std::max(sup, control.growth_floor) > control.max_growth)) {
            if (!control.adaptive && !ok) {
                diverged = true;
                break;
            }
            dt *= 0.5;
            if (dt < control.dt_min * std::max(1.0, state.t)) {
                diverged = true;
                break;
            }
            continue;
        }
        const double raw_ratio = sup > 0.0 ? new_sup / sup : std::numeric_limits<double>::infinity();
        stepper.commit(state, dt_try, std::move(u_new));
        u_new = {};
        sup = new_sup;
        out.sup_series.push_back({state.t, sup});
        if (sup >= control.threshold) {
            hit_time = state.t;
        }
        record(hit_time.has_value() || state.t >= t_end * (1.0 - 1e-14));
        if (control.grow_factor > 1.0 && raw_ratio < control.grow_below && dt_try == dt) {
            dt = std::min(dt * control.grow_factor, control.dt_max);
        }
    }
    if (out.trajectory.rows.back().t != state.t) {
        out.trajectory.rows.push_back(make_row(state, grid, omega_nodes));
    }

    BlowupReport& rep = out.report;
    rep.diverged = diverged;
    rep.threshold_hit_time = hit_time;
    rep.final_time = state.t;
    rep.final_sup_norm = sup;
    rep.steps = state.step_count;
    rep.outcome = detect(out.sup_series, control.threshold, control.horizon, diverged);
    if (rep.outcome == Outcome::Blowup) {
        try {
            const auto est = estimate_t_star(out.sup_series, spec.p, control.threshold);
            rep.t_star_estimate = std::max(est.t_star, state.t);
            rep.fit_exponent = est.fit_exponent;
            rep.fit_residual = est.fit_residual;
        } catch (const std::exception&) {
            rep.t_star_estimate = state.t;
            rep.fit_residual = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return out;
}

}  // namespace pseudopara
