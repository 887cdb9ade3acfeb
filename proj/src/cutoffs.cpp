#include "pseudopara/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace pseudopara {

Jet smoothstep(double w) {
    if (w <= 0.0) {
        return {0.0, 0.0, 0.0};
    }
    if (w >= 1.0) {
        return {1.0, 0.0, 0.0};
    }
    const double w2 = w * w;
    return {w2 * w * (10.0 - 15.0 * w + 6.0 * w2), 30.0 * w2 * (1.0 - w) * (1.0 - w),
            60.0 * w * (1.0 - w) * (1.0 - 2.0 * w)};
}

namespace {

// g(x)^power with g given as a jet; zero wherever g vanishes.
Jet power_of(const Jet& g, double power) {
    if (g.value <= 0.0) {
        return {0.0, 0.0, 0.0};
    }
    const double gm1 = std::pow(g.value, power - 1.0);
    const double gm2 = gm1 / g.value;
    return {gm1 * g.value, power * gm1 * g.d1,
            power * (power - 1.0) * gm2 * g.d1 * g.d1 + power * gm1 * g.d2};
}

}  // namespace

// ---------------------------------------------------------------------------

TimeCutoff::TimeCutoff(double horizon, int power) : horizon_(horizon), power_(power) {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("TimeCutoff: horizon must be positive");
    }
    if (power < 1) {
        throw std::invalid_argument("TimeCutoff: power must be a positive integer");
    }
}

Jet TimeCutoff::eval(double t) const {
    if (!(t >= 0.0 && t <= horizon_)) {
        throw std::out_of_range("TimeCutoff: t outside [0, T]");
    }
    const double v = 1.0 - t / horizon_;
    const double m = power_;
    const double inv_t = 1.0 / horizon_;
    const double vm2 = power_ >= 2 ? std::pow(v, m - 2.0) : 0.0;
    const double vm1 = power_ >= 2 ? vm2 * v : 1.0;
    return {vm1 * v, -m * inv_t * vm1, m * (m - 1.0) * inv_t * inv_t * vm2};
}

// ---------------------------------------------------------------------------

SpaceCutoff::SpaceCutoff(double radius, double ell) : radius_(radius), ell_(ell) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("SpaceCutoff: radius must be positive");
    }
    if (!(ell >= 1.0)) {
        throw std::invalid_argument("SpaceCutoff: power must be >= 1");
    }
}

double SpaceCutoff::default_power(double p) {
    if (!(p > 1.0)) {
        throw std::invalid_argument("SpaceCutoff: p must exceed 1");
    }
    return std::ceil(2.0 * p / (p - 1.0));
}

double SpaceCutoff::support_radius() const noexcept { return std::sqrt(2.0) * radius_; }

Jet SpaceCutoff::profile(double z) const {
    const Jet s = smoothstep(2.0 - z);
    Jet phi = power_of(s, ell_);
    phi.d1 = -phi.d1;  // d/dz of S(2 - z)
    return phi;
}

RadialJet SpaceCutoff::eval(double r, int ndim) const {
    if (!(r >= 0.0)) {
        throw std::out_of_range("SpaceCutoff: negative radius");
    }
    const double inv_r2 = 1.0 / (radius_ * radius_);
    const Jet phi = profile(r * r * inv_r2);
    RadialJet out;
    out.value = phi.value;
    out.d1 = phi.d1 * 2.0 * r * inv_r2;
    out.d2 = phi.d2 * 4.0 * r * r * inv_r2 * inv_r2 + phi.d1 * 2.0 * inv_r2;
    out.laplacian = phi.d2 * 4.0 * r * r * inv_r2 * inv_r2 + phi.d1 * 2.0 * ndim * inv_r2;
    return out;
}

// ---------------------------------------------------------------------------

LogCutoff::LogCutoff(double log_radius, double kappa, Profile profile, Profile edge)
    : log_radius_(log_radius), kappa_(kappa), profile_(std::move(profile)), edge_(std::move(edge)) {
    if (!(log_radius > 1.0)) {
        throw std::invalid_argument("LogCutoff: R must exceed e");
    }
}

LogCutoff::LogCutoff(double radius, double kappa)
    : LogCutoff(from_log_radius(radius > 0.0 ? std::log(radius) : 0.0, kappa)) {}

LogCutoff LogCutoff::from_log_radius(double log_radius, double kappa) {
    if (!(kappa >= 1.0)) {
        throw std::invalid_argument("LogCutoff: kappa must be >= 1");
    }
    // 1 - S(s) = S(1 - s); the right side keeps full precision as s -> 1.
    Profile edge = [kappa](double v) {
        const Jet st = smoothstep(v);
        return power_of({st.value, -st.d1, st.d2}, kappa);
    };
    Profile f = [edge](double s) { return edge(1.0 - s); };
    return LogCutoff(log_radius, kappa, std::move(f), std::move(edge));
}

LogCutoff LogCutoff::with_profile(double log_radius, Profile profile) {
    Profile edge = [profile](double v) { return profile(1.0 - v); };
    return LogCutoff(log_radius, std::numeric_limits<double>::quiet_NaN(), std::move(profile),
                     std::move(edge));
}

double LogCutoff::default_power(double p) {
    if (!(p > 1.0)) {
        throw std::invalid_argument("LogCutoff: p must exceed 1");
    }
    return std::max(2.0, std::ceil((p + 1.0) / (p - 1.0)) + 1.0);
}

Jet LogCutoff::profile(double s) const { return profile_(s); }

double LogCutoff::log_variable(double r) const {
    if (r == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    const double l = log_scale();
    return (std::log(r) - l) / l;
}

Jet LogCutoff::edge_profile(double v) const { return edge_(v); }

double LogCutoff::scaled_laplacian(double s, int ndim) const {
    return scaled_laplacian(profile_(s), ndim);
}

double LogCutoff::scaled_laplacian(const Jet& f, int ndim) const {
    const double l = log_scale();
    return f.d2 / (l * l) + (ndim - 2.0) * f.d1 / l;
}

RadialJet LogCutoff::eval(double r, int ndim) const {
    if (!(r >= 0.0)) {
        throw std::out_of_range("LogCutoff: negative radius");
    }
    if (r == 0.0) {
        const Jet f = profile_(-std::numeric_limits<double>::infinity());
        return {f.value, 0.0, 0.0, 0.0};
    }
    const double s = log_variable(r);
    const double l = log_scale();
    const Jet f = profile_(s);
    const double inv_r2 = 1.0 / (r * r);
    RadialJet out;
    out.value = f.value;
    out.d1 = f.d1 / (r * l);
    out.d2 = (f.d2 / (l * l) - f.d1 / l) * inv_r2;
    out.laplacian = scaled_laplacian(s, ndim) * inv_r2;
    return out;
}

// ---------------------------------------------------------------------------

Bump::Bump(double horizon) : horizon_(horizon) {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("Bump: horizon must be positive");
    }
}

Jet Bump::nu(double s) {
    if (!(s > 0.0 && s < 1.0)) {
        return {0.0, 0.0, 0.0};
    }
    const double q = s * (1.0 - s);
    const double value = std::exp(-1.0 / q);
    if (value == 0.0) {
        return {0.0, 0.0, 0.0};
    }
    const double a = 1.0 - 2.0 * s;
    const double g1 = a / (q * q);
    const double g2 = -2.0 / (q * q) - 2.0 * a * a / (q * q * q);
    return {value, value * g1, value * (g1 * g1 + g2)};
}

Jet Bump::eval(double t) const {
    if (!(t >= 0.0)) {
        throw std::out_of_range("Bump: negative time");
    }
    const Jet n = nu(t / horizon_);
    const double inv_t = 1.0 / horizon_;
    return {n.value, n.d1 * inv_t, n.d2 * inv_t * inv_t};
}

// ---------------------------------------------------------------------------

DerivativeBound derivative_bound_witness(const Profile& profile, const std::vector<double>& samples) {
    DerivativeBound b;
    for (double s : samples) {
        const Jet f = profile(s);
        if (f.value == 0.0) {
            continue;
        }
        b.theta1 = std::max(b.theta1, std::abs(f.d2) / std::abs(f.value));
        b.theta2 = std::max(b.theta2, std::abs(f.d1) / std::abs(f.value));
    }
    return b;
}

}  // namespace pseudopara
