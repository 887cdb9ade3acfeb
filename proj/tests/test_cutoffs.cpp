#include "pseudopara/cutoffs.hpp"

#include <doctest/doctest.h>

#include <stdexcept>

#include <cmath>

using namespace pseudopara;

namespace {

// Central differences of a jet-valued function.
template <class F>
void check_jet(F f, double x, double h, double tol) {
    const double d1 = (f(x + h).value - f(x - h).value) / (2.0 * h);
    const double d2 = (f(x + h).value - 2.0 * f(x).value + f(x - h).value) / (h * h);
    const Jet j = f(x);
    CHECK(j.d1 == doctest::Approx(d1).epsilon(tol).scale(1.0));
    CHECK(j.d2 == doctest::Approx(d2).epsilon(tol).scale(1.0));
}

}  // namespace

TEST_CASE("smoothstep") {
    CHECK(smoothstep(-1.0).value == 0.0);
    CHECK(smoothstep(0.5).value == doctest::Approx(0.5));
    CHECK(smoothstep(2.0).value == 1.0);
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double v = smoothstep(i / 100.0).value;
        CHECK(v >= prev);
        prev = v;
    }
    for (double w : {0.1, 0.37, 0.8}) {
        check_jet(smoothstep, w, 1e-5, 1e-5);
    }
    // C2 at the junctions
    CHECK(smoothstep(1e-9).d2 < 1e-6);
    CHECK(std::abs(smoothstep(1.0 - 1e-9).d2) < 1e-6);
}

TEST_CASE("time cutoff") {
    const TimeCutoff psi(10.0, 3);
    CHECK(psi.eval(0.0).value == 1.0);
    CHECK(psi.eval(10.0).value == 0.0);
    CHECK(psi.eval(5.0).value == doctest::Approx(0.125));
    check_jet([&](double t) { return psi.eval(t); }, 3.3, 1e-4, 1e-6);
    CHECK(TimeCutoff(2.0, 1).eval(1.0).d1 == doctest::Approx(-0.5));
    CHECK_THROWS(psi.eval(10.5));
    CHECK_THROWS(TimeCutoff(0.0, 2));
    CHECK_THROWS(TimeCutoff(1.0, 0));
}

TEST_CASE("space cutoff") {
    const SpaceCutoff xi(3.0, 4.0);
    CHECK(xi.support_radius() == doctest::Approx(3.0 * std::sqrt(2.0)));
    CHECK(xi.eval(0.0, 3).value == 1.0);
    CHECK(xi.eval(2.9, 3).value == 1.0);
    CHECK(xi.eval(4.3, 3).value == 0.0);
    CHECK(xi.eval(2.9, 3).laplacian == 0.0);
    for (int n : {1, 2, 3, 5}) {
        const double r = 3.6;
        const double h = 1e-4;
        const RadialJet j = xi.eval(r, n);
        const double d2 = (xi.eval(r + h, n).value - 2.0 * j.value + xi.eval(r - h, n).value) / (h * h);
        const double d1 = (xi.eval(r + h, n).value - xi.eval(r - h, n).value) / (2.0 * h);
        CHECK(j.laplacian == doctest::Approx(d2 + (n - 1) / r * d1).epsilon(1e-5));
    }
    CHECK(SpaceCutoff::default_power(2.0) == 4.0);
    CHECK(SpaceCutoff::default_power(3.0) == 3.0);
    CHECK(SpaceCutoff::default_power(1.5) == 6.0);
    CHECK_THROWS(SpaceCutoff(-1.0, 4.0));
    CHECK_THROWS(xi.eval(-0.1, 3));
}

TEST_CASE("log cutoff") {
    const LogCutoff phi(1e4, 3.0);
    CHECK(phi.log_scale() == doctest::Approx(0.5 * std::log(1e4)));
    CHECK(phi.eval(50.0, 3).value == 1.0);
    CHECK(phi.eval(1e4, 3).value == 0.0);
    const double mid = phi.eval(1e3, 3).value;
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    CHECK(LogCutoff::default_power(3.0) == 3.0);
    CHECK(LogCutoff::default_power(2.0) == 4.0);
    CHECK(LogCutoff::default_power(5.0) == 3.0);
    CHECK_THROWS(LogCutoff(2.0, 3.0));
    CHECK_THROWS(LogCutoff(100.0, 0.5));

    SUBCASE("laplacian against differences in r") {
        const double r = 700.0;
        const double h = 1e-2;
        const RadialJet j = phi.eval(r, 3);
        const double d2 = (phi.eval(r + h, 3).value - 2.0 * j.value + phi.eval(r - h, 3).value) / (h * h);
        const double d1 = (phi.eval(r + h, 3).value - phi.eval(r - h, 3).value) / (2.0 * h);
        CHECK(j.laplacian == doctest::Approx(d2 + 2.0 / r * d1).epsilon(1e-4));
        const double s = phi.log_variable(r);
        CHECK(phi.scaled_laplacian(s, 3) == doctest::Approx(r * r * j.laplacian).epsilon(1e-10));
    }
    SUBCASE("edge profile mirrors the profile") {
        for (double v : {0.3, 0.05, 1e-3}) {
            const Jet a = phi.edge_profile(v);
            const Jet b = phi.profile(1.0 - v);
            CHECK(a.value == doctest::Approx(b.value).epsilon(1e-8));
            CHECK(a.d1 == doctest::Approx(b.d1).epsilon(1e-8));
        }
        // accurate where 1 - S(s) cancels
        const double v = 1e-5;
        const double expected = std::pow(10.0 * v * v * v, 3.0);
        CHECK(phi.edge_profile(v).value == doctest::Approx(expected).epsilon(1e-3));
    }
    SUBCASE("huge radii through the log") {
        const auto far = LogCutoff::from_log_radius(4000.0, 4.0);
        CHECK(far.log_scale() == 2000.0);
        CHECK(std::isfinite(far.scaled_laplacian(0.5, 3)));
    }
    SUBCASE("custom profile") {
        auto lin = LogCutoff::with_profile(20.0, [](double s) {
            return Jet{s <= 0.0 ? 1.0 : (s >= 1.0 ? 0.0 : 1.0 - s), s > 0.0 && s < 1.0 ? -1.0 : 0.0, 0.0};
        });
        CHECK(lin.profile(0.25).value == doctest::Approx(0.75));
        CHECK(lin.edge_profile(0.25).value == doctest::Approx(0.25));
    }
}

TEST_CASE("bump") {
    CHECK(Bump::nu(0.0).value == 0.0);
    CHECK(Bump::nu(1.0).value == 0.0);
    CHECK(Bump::nu(0.5).value == doctest::Approx(std::exp(-4.0)));
    CHECK(Bump::nu(0.3).value == doctest::Approx(Bump::nu(0.7).value));
    check_jet(Bump::nu, 0.3, 1e-5, 1e-5);
    const Bump eta(8.0);
    CHECK(eta.eval(4.0).value == doctest::Approx(std::exp(-4.0)));
    CHECK(eta.eval(9.0).value == 0.0);
    CHECK_THROWS(Bump(0.0));
}

TEST_CASE("derivative bound witness") {
    const LogCutoff phi(1e6, 4.0);
    std::vector<double> samples;
    for (int i = 1; i < 1000; ++i) {
        samples.push_back(i / 1000.0);
    }
    const auto b = derivative_bound_witness([&](double s) { return phi.profile(s); }, samples);
    CHECK(std::isfinite(b.theta1));
    CHECK(std::isfinite(b.theta2));
    CHECK(b.theta1 > 0.0);
    // theta grows without bound as samples approach s = 1
    samples.push_back(1.0 - 1e-6);
    const auto c = derivative_bound_witness([&](double s) { return phi.profile(s); }, samples);
    CHECK(c.theta1 > b.theta1);
}
