#pragma once

// Riemann-Liouville fractional integrals of order gamma in [0, 1).
//
//   (I^g_{0+} u)(t) = 1/Gamma(g) * int_0^t (t - s)^(g-1) u(s) ds
//   (I^g_{T-} u)(t) = 1/Gamma(g) * int_t^T (s - t)^(g-1) u(s) ds
//
// gamma = 0 is treated as the identity operator (the local-in-time problem).

#include "pseudopara/quadrature.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pseudopara {

class FractionalSpec {
public:
    explicit FractionalSpec(double gamma);

    double gamma() const noexcept { return gamma_; }
    bool is_local() const noexcept { return gamma_ == 0.0; }

private:
    double gamma_;
};

/// Product-trapezoidal weights on a uniform grid t_j = j*dt. Rows are
/// generated on demand; nothing is cached, so instances are freely shareable.
class QuadratureWeights {
public:
    QuadratureWeights(double dt, double gamma);

    double dt() const noexcept { return dt_; }
    double gamma() const noexcept { return gamma_; }

    /// Weights w[n][0..n] such that (I^g f)(t_n) ~ sum_j w[n][j] f(t_j).
    std::vector<double> row(std::size_t n) const;

private:
    double dt_;
    double gamma_;
};

/// Weights for evaluating I^g_{0+} at times.back() from samples at `times`
/// (strictly increasing, arbitrary spacing). The sampled function is taken
/// piecewise linear and each piece is integrated exactly against the kernel.
/// Output has times.size() entries and includes the 1/Gamma(g) factor.
void product_trapezoid_weights(std::span<const double> times, double gamma,
                               std::vector<double>& out);

/// Uniform-grid left integral at t_n = (samples.size() - 1) * dt.
double left_rl_integral(std::span<const double> samples, const FractionalSpec& spec, double dt);

/// Right integral (I^g_{T-} f)(t) by tanh-sinh quadrature, which absorbs the
/// (s - t)^(g-1) endpoint singularity. Requires 0 <= t < T, gamma in (0, 1).
double right_rl_integral(const ScalarFunction& f, double t, double T, const FractionalSpec& spec);

/// Closed form of I^g_{T-} applied to (1 - t/T)^m:
///   Gamma(m+1)/Gamma(g+m+1) * T^g * (1 - t/T)^(m+g).
double rl_right_poly_closed_form(int m, double gamma, double T, double t);

}  // namespace pseudopara
