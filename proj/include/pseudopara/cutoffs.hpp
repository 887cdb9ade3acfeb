#pragma once

// Test-function building blocks: a polynomial time cutoff, a compactly
// supported radial cutoff, a logarithmic radial cutoff and a smooth bump in
// time. Radial cutoffs report the Laplacian in N dimensions.

#include <functional>
#include <vector>

namespace pseudopara {

/// Value and first two derivatives of a scalar function.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Radial function: value, d/dr, d2/dr2 and the N-dimensional Laplacian.
struct RadialJet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double laplacian = 0.0;
};

/// Quintic smoothstep 6w^5 - 15w^4 + 10w^3 clamped to [0, 1]; C2 and monotone.
Jet smoothstep(double w);

/// A one-dimensional profile with analytic derivatives.
using Profile = std::function<Jet(double)>;

/// psi(t) = (1 - t/T)^m on [0, T].
class TimeCutoff {
public:
    TimeCutoff(double horizon, int power);

    double horizon() const noexcept { return horizon_; }
    int power() const noexcept { return power_; }

    Jet eval(double t) const;

private:
    double horizon_;
    int power_;
};

/// xi(x) = Phi(|x|^2 / R^2) with Phi(z) = S(2 - z)^ell. Phi = 1 on [0, 1],
/// Phi = 0 on [2, inf).
class SpaceCutoff {
public:
    SpaceCutoff(double radius, double ell);

    /// ell = ceil(2p/(p-1)), the smallest integer keeping the I-integrals finite.
    static double default_power(double p);

    double radius() const noexcept { return radius_; }
    double power() const noexcept { return ell_; }
    double support_radius() const noexcept;

    Jet profile(double z) const;
    RadialJet eval(double r, int ndim) const;

private:
    double radius_;
    double ell_;
};

/// phi(x) = F(ln(|x|/sqrt(R)) / ln(sqrt(R))), held as log R. Default
/// profile F(s) = (1 - S(s))^kappa.
class LogCutoff {
public:
    LogCutoff(double radius, double kappa);
    static LogCutoff from_log_radius(double log_radius, double kappa);
    static LogCutoff with_profile(double log_radius, Profile profile);

    /// kappa = max(2, ceil((p+1)/(p-1)) + 1).
    static double default_power(double p);

    double log_radius() const noexcept { return log_radius_; }
    /// ln(sqrt(R)).
    double log_scale() const noexcept { return 0.5 * log_radius_; }
    double kappa() const noexcept { return kappa_; }

    Jet profile(double s) const;
    /// F at s = 1 - v, derivatives still taken in s. Accurate for small v.
    Jet edge_profile(double v) const;
    /// Log variable s(r); -inf at r = 0.
    double log_variable(double r) const;
    RadialJet eval(double r, int ndim) const;
    /// Laplacian scaled by r^2, as a function of s (no exp/log round trip).
    double scaled_laplacian(double s, int ndim) const;
    double scaled_laplacian(const Jet& f, int ndim) const;

private:
    LogCutoff(double log_radius, double kappa, Profile profile, Profile edge);

    double log_radius_;
    double kappa_;
    Profile profile_;
    Profile edge_;
};

/// eta(t) = nu(t/T), nu(s) = exp(-1/(s(1-s))) on (0, 1), zero elsewhere.
class Bump {
public:
    explicit Bump(double horizon);

    double horizon() const noexcept { return horizon_; }

    static Jet nu(double s);
    Jet eval(double t) const;

private:
    double horizon_;
};

/// Largest ratios |F''|/|F| and |F'|/|F| over the given samples (points with
/// F = 0 skipped). Finite for any finite sample of (0, 1).
struct DerivativeBound {
    double theta1 = 0.0;
    double theta2 = 0.0;
};
DerivativeBound derivative_bound_witness(const Profile& profile, const std::vector<double>& samples);

}  // namespace pseudopara
