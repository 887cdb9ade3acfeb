#include "oracles.hpp"
#include "pseudopara/fracint.hpp"

#include <doctest/doctest.h>

#include <stdexcept>

#include <random>

using namespace pseudopara;

namespace {

// 2/Gamma(3.5), from oracle::left_rl of t^2 at t = 1 (Simpson, 2e5 panels)
constexpr double kTSquaredHalf = 0.60180222245094;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("fractional order range") {
    CHECK(FractionalSpec(0.0).is_local());
    CHECK_FALSE(FractionalSpec(0.3).is_local());
    CHECK_THROWS_AS(FractionalSpec(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(FractionalSpec(1.0), std::invalid_argument);
    CHECK_THROWS_AS(FractionalSpec(std::nan("")), std::invalid_argument);
}

TEST_CASE("frozen oracle value for t^2") {
    const double o = oracle::left_rl([](double t) { return t * t; }, 1.0, 0.5);
    CHECK(rel(o, kTSquaredHalf) < 1e-10);
    CHECK(rel(2.0 / std::tgamma(3.5), kTSquaredHalf) < 1e-13);
}

TEST_CASE("left integral examples") {
    SUBCASE("constant samples") {
        const std::vector<double> c(101, 3.0);
        CHECK(left_rl_integral(c, FractionalSpec(0.5), 0.01) ==
              doctest::Approx(3.0 * 1.1283791670955126).epsilon(1e-13));
    }
    SUBCASE("t_n = 0 gives 0") {
        const std::vector<double> one{5.0};
        CHECK(left_rl_integral(one, FractionalSpec(0.5), 0.1) == 0.0);
    }
    SUBCASE("t^2 against the oracle") {
        const std::size_t n = 1000;
        std::vector<double> f(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            const double t = static_cast<double>(j) / n;
            f[j] = t * t;
        }
        CHECK(rel(left_rl_integral(f, FractionalSpec(0.5), 1.0 / n), kTSquaredHalf) < 1e-6);
    }
    SUBCASE("gamma = 0 is the identity") {
        const std::vector<double> f{1.0, 2.0, 7.5};
        CHECK(left_rl_integral(f, FractionalSpec(0.0), 0.1) == 7.5);
    }
    SUBCASE("errors") {
        const std::vector<double> empty;
        CHECK_THROWS_AS(left_rl_integral(empty, FractionalSpec(0.5), 0.1), std::invalid_argument);
        const std::vector<double> f{1.0, 2.0};
        CHECK_THROWS_AS(left_rl_integral(f, FractionalSpec(0.5), 0.0), std::invalid_argument);
    }
}

TEST_CASE("right integral examples") {
    const FractionalSpec half(0.5);
    CHECK(right_rl_integral([](double) { return 1.0; }, 0.0, 1.0, half) ==
          doctest::Approx(1.1283791670955126).epsilon(1e-10));
    CHECK(right_rl_integral([](double) { return 0.0; }, 0.2, 1.0, half) == 0.0);
    auto psi = [](double s) { return (1.0 - s) * (1.0 - s); };
    CHECK(rel(right_rl_integral(psi, 0.0, 1.0, half), rl_right_poly_closed_form(2, 0.5, 1.0, 0.0)) < 1e-8);
    CHECK_THROWS(right_rl_integral(psi, 1.0, 1.0, half));
    CHECK_THROWS(right_rl_integral([](double) { return std::nan(""); }, 0.0, 1.0, half));
}

TEST_CASE("right integral against the substitution oracle") {
    auto f = [](double s) { return std::exp(-s) * std::cos(3.0 * s); };
    for (double g : {0.2, 0.5, 0.8}) {
        const double q = right_rl_integral(f, 0.3, 2.0, FractionalSpec(g));
        const double o = oracle::right_rl(f, 0.3, 2.0, g);
        CHECK(rel(q, o) < 1e-8);
    }
}

TEST_CASE("closed form examples") {
    CHECK(rel(rl_right_poly_closed_form(2, 0.5, 1.0, 0.0), kTSquaredHalf) < 1e-13);
    CHECK(rl_right_poly_closed_form(2, 0.5, 1.0, 1.0 - 1e-12) < 1e-25);
    const double base = rl_right_poly_closed_form(3, 0.4, 2.0, 0.5);
    const double scaled = rl_right_poly_closed_form(3, 0.4, 14.0, 3.5);
    CHECK(rel(scaled, base * std::pow(7.0, 0.4)) < 1e-13);
    CHECK_THROWS(rl_right_poly_closed_form(2, 0.5, 1.0, 1.0));
    CHECK_THROWS(rl_right_poly_closed_form(2, 0.5, 1.0, -0.1));
}

TEST_CASE("weights: nonnegative and exact on constants") {
    for (double g : {0.05, 0.3, 0.5, 0.95}) {
        const QuadratureWeights w(0.02, g);
        for (std::size_t n : {1u, 3u, 50u, 700u}) {
            const auto row = w.row(n);
            REQUIRE(row.size() == n + 1);
            double sum = 0.0;
            for (double v : row) {
                CHECK(v >= 0.0);
                sum += v;
            }
            const double t = 0.02 * static_cast<double>(n);
            CHECK(rel(sum, std::pow(t, g) / std::tgamma(g + 1.0)) <= 1e-13);
        }
    }
}

TEST_CASE("nonuniform weights match uniform ones on a uniform mesh") {
    std::vector<double> times(41);
    for (std::size_t j = 0; j < times.size(); ++j) {
        times[j] = 0.025 * static_cast<double>(j);
    }
    std::vector<double> w;
    product_trapezoid_weights(times, 0.35, w);
    const auto u = QuadratureWeights(0.025, 0.35).row(40);
    for (std::size_t j = 0; j < w.size(); ++j) {
        CHECK(w[j] == doctest::Approx(u[j]).epsilon(1e-12));
    }
}

TEST_CASE("nonuniform weights are exact on linear data") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> step(0.001, 0.2);
    std::vector<double> times{0.0};
    for (int i = 0; i < 60; ++i) {
        times.push_back(times.back() + step(rng));
    }
    std::vector<double> w;
    const double g = 0.6;
    product_trapezoid_weights(times, g, w);
    double got = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
        got += w[j] * (2.0 + 3.0 * times[j]);
    }
    const double t = times.back();
    const double exact = 2.0 * std::pow(t, g) / std::tgamma(g + 1.0) + 3.0 * std::pow(t, g + 1.0) / std::tgamma(g + 2.0);
    CHECK(rel(got, exact) < 1e-12);

    std::vector<double> bad{0.0, 0.1, 0.1};
    CHECK_THROWS_AS(product_trapezoid_weights(bad, g, w), std::invalid_argument);
}

TEST_CASE("linearity and positivity") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<double> a(200), b(200), c(200);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = d(rng);
        b[i] = d(rng);
        c[i] = 2.5 * a[i] - 0.75 * b[i];
    }
    const FractionalSpec s(0.45);
    const double la = left_rl_integral(a, s, 0.01);
    const double lb = left_rl_integral(b, s, 0.01);
    CHECK(left_rl_integral(c, s, 0.01) == doctest::Approx(2.5 * la - 0.75 * lb).epsilon(1e-13));
    CHECK(la >= 0.0);
    CHECK(lb >= 0.0);
}

TEST_CASE("semigroup spot check") {
    // I^a (I^b f) with f = t on [0, 1], a = b = 0.25, against I^0.5 f.
    const double a = 0.25;
    const std::size_t n = 4000;
    const double dt = 1.0 / n;
    std::vector<double> f(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        f[j] = static_cast<double>(j) * dt;
    }
    std::vector<double> inner(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        inner[j] = left_rl_integral(std::span(f).first(j + 1), FractionalSpec(a), dt);
    }
    const double twice = left_rl_integral(inner, FractionalSpec(a), dt);
    const double once = 1.0 / std::tgamma(2.5);  // I^0.5 t at t = 1
    CHECK(rel(twice, once) <= 1e-4);
}

TEST_CASE("second-order convergence") {
    auto f = [](double t) { return std::sin(2.0 * t) + t * t; };
    const double g = 0.3;
    const double ref = oracle::left_rl(f, 1.0, g);
    double prev = 0.0;
    double order = 0.0;
    for (int k = 0; k < 4; ++k) {
        const std::size_t n = 20u << k;
        std::vector<double> s(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            s[j] = f(static_cast<double>(j) / n);
        }
        const double err = std::abs(left_rl_integral(s, FractionalSpec(g), 1.0 / n) - ref);
        if (k > 0) {
            order = std::log2(prev / err);
            CHECK(order >= 1.8);
        }
        prev = err;
    }
}

TEST_CASE("closed form over random tuples") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> md(1, 4);
    std::uniform_real_distribution<double> gd(0.02, 0.98), Td(1.0, 100.0), xd(0.0, 0.99);
    for (int i = 0; i < 20; ++i) {
        const int m = md(rng);
        const double g = gd(rng);
        const double T = Td(rng);
        const double t = xd(rng) * T;
        auto psi = [m, T](double s) { return std::pow(1.0 - s / T, m); };
        CHECK(rel(right_rl_integral(psi, t, T, FractionalSpec(g)), rl_right_poly_closed_form(m, g, T, t)) <=
              1e-6);
    }
}
