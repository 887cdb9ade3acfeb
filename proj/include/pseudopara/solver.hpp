#pragma once

// Radially symmetric time stepping for
//
//   u_t - k Lap u_t - Lap u = I^g_{0+}(|u|^p) + omega(r),   u(0) = u0.
//
// Each step solves (I - (k + dt) L) u^{n+1} = (I - k L) u^n + dt (M^n + omega)
// where L is the flux-form radial Laplacian and M^n the product-trapezoid
// value of I^g(|u|^p) at t_n built from the stored history.

#include "pseudopara/blowup.hpp"
#include "pseudopara/grid.hpp"
#include "pseudopara/kernels.hpp"
#include "pseudopara/profile.hpp"

#include <limits>
#include <vector>

namespace pseudopara {

struct ProblemSpec {
    double k = 0.0;
    double p = 2.0;
    double gamma = 0.0;
    RadialProfile omega;
    RadialProfile u0;
    bool nonlinear = true;  // false drops the memory term entirely

    void validate() const;
};

struct RunControl {
    double dt0 = 1e-3;
    double horizon = 1.0;
    double threshold = 1e8;
    bool adaptive = true;
    double max_growth = 1.1;     // halve dt when sup ratio per step exceeds this
    double growth_floor = 1.0;   // sup_old is floored here in the ratio test
    double dt_min = 1e-12;       // relative to max(1, t)
    double grow_factor = 1.0;    // > 1 enables step growth
    double grow_below = 1.01;    // grow when the raw sup ratio stays below this
    double dt_max = std::numeric_limits<double>::infinity();
    int record_every = 1;
    bool keep_fields = false;

    void validate() const;
};

struct SolverState {
    double t = 0.0;
    double dt = 0.0;
    std::size_t step_count = 0;
    std::vector<double> u;
    std::vector<double> memory;  // M at the current time
    std::vector<double> times;   // t_0..t_n, one per history row
    History history;             // |u|^p rows; only the newest is kept when gamma = 0
    bool diverged = false;
};

/// Owns the work arrays for repeated steps of one problem on one grid.
class Stepper {
public:
    Stepper(ProblemSpec spec, RadialGrid grid);

    const ProblemSpec& spec() const noexcept { return spec_; }
    const RadialGrid& grid() const noexcept { return grid_; }

    SolverState initial_state(double dt0) const;

    /// Candidate u at t + dt. Returns false on a linear-solve breakdown or a
    /// non-finite result.
    bool propose(const SolverState& state, double dt, std::vector<double>& u_new);

    /// Accepts u_new as the state at t + dt and refreshes history and memory.
    void commit(SolverState& state, double dt, std::vector<double> u_new) const;

    /// The memory term for the given state's history.
    void evaluate_memory(SolverState& state) const;

private:
    ProblemSpec spec_;
    RadialGrid grid_;
    std::vector<double> omega_;
    std::vector<double> lo_, di_, up_, rhs_, lap_, scratch_;
};

/// One step with state.dt. On breakdown the returned state has diverged = true.
SolverState step(SolverState state, const ProblemSpec& spec, const RadialGrid& grid);

struct TrajectoryRow {
    double t = 0.0;
    double dt = 0.0;
    double sup_norm = 0.0;
    double l2_norm = 0.0;
    double mass = 0.0;
    double boundary_value = 0.0;
    double source = 0.0;  // int (M + omega) dV at t; not written to CSV
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    std::vector<double> field_times;            // filled when keep_fields is set
    std::vector<std::vector<double>> fields;
};

struct RunResult {
    Trajectory trajectory;
    std::vector<NormSample> sup_series;  // every accepted step
    BlowupReport report;
};

RunResult run(const ProblemSpec& spec, const RadialGrid& grid, const RunControl& control);

}  // namespace pseudopara
