#include "oracles.hpp"
#include "pseudopara/blowup.hpp"
#include "pseudopara/solver.hpp"

#include <doctest/doctest.h>

#include <stdexcept>

#include <numbers>

using namespace pseudopara;

namespace {

ProblemSpec uniform_problem(double p, double gamma, double k = 0.0) {
    ProblemSpec s;
    s.k = k;
    s.p = p;
    s.gamma = gamma;
    s.omega = RadialProfile::constant(1.0);
    return s;
}

RunControl fixed(double dt, double horizon) {
    RunControl c;
    c.dt0 = dt;
    c.horizon = horizon;
    c.adaptive = false;
    return c;
}

}  // namespace

TEST_CASE("validation") {
    ProblemSpec s;
    s.p = 1.0;
    CHECK_THROWS_WITH(s.validate(), "p must exceed 1");
    s.p = 2.0;
    s.k = -1.0;
    CHECK_THROWS_WITH(s.validate(), "k must be nonnegative");
    s.k = 0.0;
    s.gamma = 1.0;
    CHECK_THROWS_WITH(s.validate(), "gamma must lie in [0, 1)");
    RunControl c;
    c.dt0 = 0.0;
    CHECK_THROWS(c.validate());
    c.dt0 = 1e-3;
    c.max_growth = 1.0;
    CHECK_THROWS(c.validate());
    c.max_growth = 1.1;
    c.record_every = 0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("zero data stays zero") {
    ProblemSpec s;
    const RadialGrid g(3, 5.0, 51);
    const auto r = run(s, g, fixed(0.1, 2.0));
    CHECK(r.report.outcome == Outcome::Bounded);
    CHECK(r.report.final_sup_norm == 0.0);
    CHECK(r.report.steps == 20);
}

TEST_CASE("uniform state follows tan") {
    const RadialGrid g(3, 1.0, 16);
    const auto r = run(uniform_problem(2.0, 0.0), g, fixed(1e-4, 1.0));
    CHECK(r.report.final_sup_norm == doctest::Approx(std::tan(1.0)).epsilon(1e-3));
    CHECK(r.trajectory.rows.back().boundary_value == doctest::Approx(r.report.final_sup_norm).epsilon(1e-12));
}

TEST_CASE("uniform states ignore k") {
    const RadialGrid g(3, 1.0, 16);
    const auto a = run(uniform_problem(2.0, 0.5, 0.0), g, fixed(1e-2, 0.5));
    const auto b = run(uniform_problem(2.0, 0.5, 3.0), g, fixed(1e-2, 0.5));
    CHECK(a.report.final_sup_norm == doctest::Approx(b.report.final_sup_norm).epsilon(1e-12));
}

TEST_CASE("memory term on a uniform state matches a Volterra oracle") {
    // u' = I^0.5(u^2) + 1, u(0) = 0, on [0, 1]
    const RadialGrid g(3, 1.0, 16);
    const auto r = run(uniform_problem(2.0, 0.5), g, fixed(5e-4, 1.0));
    const auto o = oracle::volterra_blowup(0.5, 2.0, 1.0, 0.0, 1e-4, 1e9, 1.0);
    CHECK(r.report.final_sup_norm == doctest::Approx(o.u.back()).epsilon(2e-3));
}

TEST_CASE("history handling") {
    const RadialGrid g(3, 2.0, 21);
    Stepper local(uniform_problem(2.0, 0.0), g);
    auto s = local.initial_state(0.01);
    std::vector<double> u;
    for (int i = 0; i < 5; ++i) {
        REQUIRE(local.propose(s, 0.01, u));
        local.commit(s, 0.01, u);
    }
    CHECK(s.history.rows() == 1);
    CHECK(s.times.size() == 1);
    CHECK(s.t == doctest::Approx(0.05));

    Stepper nonlocal(uniform_problem(2.0, 0.3), g);
    auto m = nonlocal.initial_state(0.01);
    for (int i = 0; i < 5; ++i) {
        REQUIRE(nonlocal.propose(m, 0.01, u));
        nonlocal.commit(m, 0.01, u);
    }
    CHECK(m.history.rows() == 6);
    CHECK(m.times.size() == 6);
}

TEST_CASE("free step function agrees with the stepper") {
    const RadialGrid g(3, 4.0, 41);
    ProblemSpec s = uniform_problem(3.0, 0.4, 1.0);
    s.u0 = RadialProfile::gaussian(0.5, 1.0);
    Stepper st(s, g);
    auto a = st.initial_state(0.02);
    auto b = a;
    std::vector<double> u;
    for (int i = 0; i < 4; ++i) {
        REQUIRE(st.propose(a, 0.02, u));
        st.commit(a, 0.02, u);
        b = step(std::move(b), s, g);
    }
    CHECK(a.u == b.u);
    b.diverged = true;
    CHECK_THROWS(step(b, s, g));
}

TEST_CASE("Dirichlet pins the outer node") {
    const RadialGrid g(3, 3.0, 31, Boundary::Dirichlet);
    ProblemSpec s;
    s.omega = RadialProfile::constant(1.0);
    s.k = 1.0;
    const auto r = run(s, g, fixed(0.05, 1.0));
    CHECK(r.trajectory.rows.back().boundary_value == 0.0);
    CHECK(r.report.final_sup_norm > 0.0);
}

TEST_CASE("heat equation against the heat kernel") {
    ProblemSpec s;
    s.nonlinear = false;
    s.u0 = RadialProfile::parse("heat_kernel(0.25, 3)");
    const RadialGrid g(3, 8.0, 401);
    RunControl c = fixed(1e-3, 0.5);
    c.keep_fields = true;
    const auto r = run(s, g, c);
    const auto& u = r.trajectory.fields.back();
    double err = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        err = std::max(err, std::abs(u[i] - oracle::heat_kernel(g.r(i), 0.75, 3)));
    }
    CHECK(err < 2e-3 * oracle::heat_kernel(0.0, 0.75, 3));
}

TEST_CASE("trajectory bookkeeping") {
    const RadialGrid g(3, 1.0, 16);
    RunControl c = fixed(0.01, 1.0);
    c.record_every = 10;
    c.keep_fields = true;
    const auto r = run(uniform_problem(2.0, 0.0), g, c);
    CHECK(r.trajectory.rows.size() == 11);
    CHECK(r.trajectory.fields.size() == 101);
    CHECK(r.trajectory.field_times.back() == doctest::Approx(1.0));
    CHECK(r.sup_series.size() == 101);
    CHECK(r.trajectory.rows.front().dt == 0.0);
}

TEST_CASE("blow-up of tan is detected and timed") {
    const RadialGrid g(3, 1.0, 16);
    RunControl c;
    c.dt0 = 1e-3;
    c.horizon = 3.0;
    c.threshold = 1e6;
    const auto r = run(uniform_problem(2.0, 0.0), g, c);
    CHECK(r.report.outcome == Outcome::Blowup);
    REQUIRE(r.report.t_star_estimate.has_value());
    CHECK(*r.report.t_star_estimate == doctest::Approx(std::numbers::pi / 2).epsilon(0.01));
    REQUIRE(r.report.threshold_hit_time.has_value());
    CHECK(*r.report.threshold_hit_time < 3.0);
    REQUIRE(r.report.fit_exponent.has_value());
    CHECK(*r.report.fit_exponent == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("fixed-step overflow counts as divergence") {
    const RadialGrid g(3, 1.0, 16);
    RunControl c = fixed(0.1, 10.0);
    c.threshold = 1e300;
    const auto r = run(uniform_problem(4.0, 0.0), g, c);
    CHECK(r.report.outcome == Outcome::Blowup);
}

TEST_CASE("runs are deterministic") {
    const RadialGrid g(3, 10.0, 101, Boundary::Dirichlet);
    ProblemSpec s;
    s.k = 1.0;
    s.p = 2.0;
    s.gamma = 0.5;
    s.omega = RadialProfile::gaussian(0.1, 1.0);
    RunControl c;
    c.dt0 = 0.01;
    c.horizon = 2.0;
    const auto a = run(s, g, c);
    const auto b = run(s, g, c);
    REQUIRE(a.sup_series.size() == b.sup_series.size());
    for (std::size_t i = 0; i < a.sup_series.size(); ++i) {
        CHECK(a.sup_series[i].sup_norm == b.sup_series[i].sup_norm);
    }
}
