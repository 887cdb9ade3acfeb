#pragma once

#include <string>
#include <vector>

namespace pseudopara {

/// Radial data profiles for u0 and omega. Textual form is `kind(arg, ...)`:
///
///   zero                    0
///   constant(c)             c
///   gaussian(a, s)          a exp(-r^2/s^2)
///   poly_gaussian(a, b)     (a - b r^2) exp(-r^2)
///   radial_mode(L)          sin(pi r/L) / (pi r/L), 1 at r = 0
///   heat_kernel(t0, N)      (4 pi t0)^(-N/2) exp(-r^2/(4 t0))
class RadialProfile {
public:
    enum class Kind { Zero, Constant, Gaussian, PolyGaussian, RadialMode, HeatKernel };

    RadialProfile() = default;
    RadialProfile(Kind kind, std::vector<double> args);

    static RadialProfile zero() { return {}; }
    static RadialProfile constant(double c) { return {Kind::Constant, {c}}; }
    static RadialProfile gaussian(double a, double s) { return {Kind::Gaussian, {a, s}}; }
    static RadialProfile parse(const std::string& text);

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& args() const noexcept { return args_; }
    bool is_zero() const noexcept { return kind_ == Kind::Zero; }

    double operator()(double r) const;

    /// Canonical text, numbers at 17 significant digits.
    std::string to_string() const;

private:
    Kind kind_ = Kind::Zero;
    std::vector<double> args_;
};

/// Round-trip decimal formatting used for every numeric output.
std::string format_double(double v);

}  // namespace pseudopara
