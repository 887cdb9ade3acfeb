#include "pseudopara/fracint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pseudopara {

namespace {

void require_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("fractional order gamma must lie in [0, 1), got " +
                                    std::to_string(gamma));
    }
}

// Switch to the binomial series once h/gap drops below this; the closed form
// loses about log10(gap/h) digits to cancellation.
constexpr double kSeriesRatio = 0.25;

struct IntervalMoments {
    double far = 0.0;   // weight of the node farther from the evaluation time
    double near = 0.0;  // weight of the node closer to it
};

// Interval [a, b] with b = a + h, evaluation at t = b + gap. With
// tau = (b - s)/h the kernel is (gap + h*tau)^(g-1) and the linear basis
// functions are tau (node a) and 1 - tau (node b).
IntervalMoments interval_moments(double gap, double h, double g) {
    IntervalMoments m;
    if (gap > 0.0 && h <= kSeriesRatio * gap) {
        const double eps = h / gap;
        const double scale = h * std::pow(gap, g - 1.0);
        double binom = 1.0;
        double pw = 1.0;
        double far = 0.0;
        double near = 0.0;
        for (int k = 0; k < 80; ++k) {
            const double term = binom * pw;
            far += term / (k + 2.0);
            near += term / ((k + 1.0) * (k + 2.0));
            if (std::abs(term) < 1e-18) {
                break;
            }
            binom *= (g - 1.0 - k) / (k + 1.0);
            pw *= eps;
        }
        m.far = scale * far;
        m.near = scale * near;
        return m;
    }
    if (gap == 0.0) {
        const double hg = std::pow(h, g);
        m.far = hg / (g + 1.0);
        m.near = hg / g - m.far;
        return m;
    }
    const double y = gap + h;
    const double yg = std::pow(y, g);
    const double bg = std::pow(gap, g);
    const double q0 = (yg - bg) / g;  // h * int (gap + h tau)^(g-1) dtau
    const double q1 = ((yg * y - bg * gap) / (g + 1.0) - gap * (yg - bg) / g) / h;
    m.far = q1;
    m.near = q0 - q1;
    return m;
}

}  // namespace

FractionalSpec::FractionalSpec(double gamma) : gamma_(gamma) { require_gamma(gamma); }

QuadratureWeights::QuadratureWeights(double dt, double gamma) : dt_(dt), gamma_(gamma) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("QuadratureWeights: dt must be positive");
    }
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("QuadratureWeights: gamma must lie in (0, 1)");
    }
}

std::vector<double> QuadratureWeights::row(std::size_t n) const {
    std::vector<double> w(n + 1, 0.0);
    if (n == 0) {
        return w;
    }
    const double inv_gamma = 1.0 / std::tgamma(gamma_);
    for (std::size_t j = 0; j < n; ++j) {
        const double gap = static_cast<double>(n - 1 - j) * dt_;
        const auto m = interval_moments(gap, dt_, gamma_);
        w[j] += m.far * inv_gamma;
        w[j + 1] += m.near * inv_gamma;
    }
    return w;
}

void product_trapezoid_weights(std::span<const double> times, double gamma,
                               std::vector<double>& out) {
    require_gamma(gamma);
    out.assign(times.size(), 0.0);
    if (times.empty()) {
        return;
    }
    if (gamma == 0.0) {
        out.back() = 1.0;
        return;
    }
    const double inv_gamma = 1.0 / std::tgamma(gamma);
    const double t = times.back();
    for (std::size_t j = 0; j + 1 < times.size(); ++j) {
        const double h = times[j + 1] - times[j];
        if (!(h > 0.0)) {
            throw std::invalid_argument("product_trapezoid_weights: times must increase strictly");
        }
        const auto m = interval_moments(t - times[j + 1], h, gamma);
        out[j] += m.far * inv_gamma;
        out[j + 1] += m.near * inv_gamma;
    }
}

double left_rl_integral(std::span<const double> samples, const FractionalSpec& spec, double dt) {
    if (samples.empty()) {
        throw std::invalid_argument("left_rl_integral: empty sample array");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("left_rl_integral: dt must be positive");
    }
    if (spec.is_local()) {
        return samples.back();
    }
    const auto w = QuadratureWeights(dt, spec.gamma()).row(samples.size() - 1);
    double acc = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        acc += w[j] * samples[j];
    }
    return acc;
}

double right_rl_integral(const ScalarFunction& f, double t, double T, const FractionalSpec& spec) {
    if (!(t >= 0.0 && t < T)) {
        throw std::invalid_argument("right_rl_integral: need 0 <= t < T");
    }
    if (spec.is_local()) {
        throw std::invalid_argument("right_rl_integral: gamma must be positive");
    }
    const double g = spec.gamma();
    auto integrand = [&](double v) {
        const double fv = f(t + v);
        if (!std::isfinite(fv)) {
            throw std::domain_error("right_rl_integral: non-finite function value");
        }
        return fv == 0.0 ? 0.0 : std::pow(v, g - 1.0) * fv;
    };
    const auto r = integrate_endpoint_singular(integrand, 0.0, T - t, 1e-13);
    return r.value / std::tgamma(g);
}

double rl_right_poly_closed_form(int m, double gamma, double T, double t) {
    require_gamma(gamma);
    if (m < 1) {
        throw std::invalid_argument("rl_right_poly_closed_form: m must be a positive integer");
    }
    if (!(T > 0.0)) {
        throw std::invalid_argument("rl_right_poly_closed_form: T must be positive");
    }
    if (!(t >= 0.0 && t < T)) {
        throw std::invalid_argument("rl_right_poly_closed_form: need 0 <= t < T");
    }
    // lgamma keeps the ratio finite for large m.
    const double ratio = std::exp(std::lgamma(m + 1.0) - std::lgamma(gamma + m + 1.0));
    return ratio * std::pow(T, gamma) * std::pow(1.0 - t / T, m + gamma);
}

}  // namespace pseudopara
