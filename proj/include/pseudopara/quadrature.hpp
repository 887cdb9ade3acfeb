#pragma once

#include <functional>
#include <vector>

namespace pseudopara {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

using ScalarFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (15/31) on [a, b]. Suitable for smooth integrands.
QuadratureResult integrate_smooth(const ScalarFunction& f, double a, double b,
                                  double rel_tol = 1e-10);

/// Tanh-sinh on [a, b]; tolerates integrable algebraic singularities at
/// either endpoint. Throws std::domain_error if the sum does not converge.
QuadratureResult integrate_endpoint_singular(const ScalarFunction& f, double a, double b,
                                             double rel_tol = 1e-10);

/// Sum of integrate_smooth over consecutive breakpoints.
QuadratureResult integrate_piecewise(const ScalarFunction& f, const std::vector<double>& breaks,
                                     double rel_tol = 1e-10);

}  // namespace pseudopara
