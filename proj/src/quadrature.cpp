#include "pseudopara/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <stdexcept>

namespace pseudopara {

QuadratureResult integrate_smooth(const ScalarFunction& f, double a, double b, double rel_tol) {
    if (!(b > a)) {
        return {};
    }
    // mapped to [-1, 1]; Boost's GK error test misbehaves on short intervals
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto g = [&](double x) { return half * f(mid + half * x); };
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        g, -1.0, 1.0, 20, rel_tol, &error);
    if (!std::isfinite(value)) {
        throw std::domain_error("integrate_smooth: non-finite integral");
    }
    return {value, error};
}

QuadratureResult integrate_endpoint_singular(const ScalarFunction& f, double a, double b,
                                             double rel_tol) {
    if (!(b > a)) {
        return {};
    }
    // One integrator per thread; construction precomputes the abscissa tables.
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    double error = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    double value = 0.0;
    try {
        value = integrator.integrate(f, a, b, rel_tol, &error, &l1, &levels);
    } catch (const std::exception& e) {
        throw std::domain_error(std::string("integrate_endpoint_singular: ") + e.what());
    }
    if (!std::isfinite(value)) {
        throw std::domain_error("integrate_endpoint_singular: non-finite integral");
    }
    return {value, error};
}

QuadratureResult integrate_piecewise(const ScalarFunction& f, const std::vector<double>& breaks,
                                     double rel_tol) {
    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto piece = integrate_smooth(f, breaks[i], breaks[i + 1], rel_tol);
        total.value += piece.value;
        total.error += piece.error;
    }
    return total;
}

}  // namespace pseudopara
