#pragma once

// Test-function machinery for the blow-up argument: critical exponents, the
// scaling integrals I1..I3 (time cutoff psi times radial cutoff xi) and
// J1..J3 (bump eta times log cutoff phi), log-log slope fits, the
// positivity radius for the forcing term, and the weak-form residual.

#include "pseudopara/cutoffs.hpp"
#include "pseudopara/quadrature.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pseudopara {

struct RunResult;
struct ProblemSpec;
class RadialGrid;

/// Thrown when a test-function integral does not settle under refinement:
/// the cutoff power or the time exponent m is too small for the exponent p.
class IntegralDivergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// floor(1/(p-1)) + 1.
int m_from_p(double p);

/// N/(N-2) for N >= 3, +infinity for N = 1, 2.
double p_critical(int ndim);

/// 1 + 2/N.
double p_fujita(int ndim);

/// Surface area of the unit sphere in R^N: 2 pi^(N/2) / Gamma(N/2).
double sphere_area(int ndim);

// --- subcritical machinery --------------------------------------------------

enum class Which { One = 1, Two = 2, Three = 3 };

struct IntegralOptions {
    std::optional<int> m;          // time cutoff power; default m_from_p(p)
    std::optional<double> ell;     // space cutoff power; default SpaceCutoff::default_power(p)
    std::optional<double> kappa;   // log cutoff power; default LogCutoff::default_power(p)
    bool check_divergence = true;
    double rel_tol = 1e-10;
};

/// Factors of the separable integrals. For phi = psi(t) xi(x):
///   I1 = time_derivative * space_volume
///   I2 = time_derivative * space_laplacian
///   I3 = time_value      * space_laplacian
/// time_* integrate (I^g_{T-} psi)^(-1/(p-1)) times |psi'|^q resp. psi^q over [0, T],
/// space_* integrate xi resp. xi^(-1/(p-1)) |Lap xi|^q over R^N, q = p/(p-1).
struct IntegralFactors {
    double time_derivative = 0.0;
    double time_value = 0.0;
    double space_volume = 0.0;
    double space_laplacian = 0.0;
};

IntegralFactors subcritical_factors(double T, double R, double p, double gamma, int ndim,
                                    const IntegralOptions& opt = {});
double compute_I(double T, double R, double p, double gamma, int ndim, Which which,
                 const IntegralOptions& opt = {});

/// Direct (non-factorized) evaluation of I_which as a two-dimensional
/// integral over (t, r). Slow; used to cross-check the factorization.
double compute_I_direct(double T, double R, double p, double gamma, int ndim, Which which,
                        const IntegralOptions& opt = {});

// --- critical machinery -----------------------------------------------------

/// For phi = eta(t) phi_log(x), with p = N/(N-2):
///   J1 = time_derivative * space_volume
///   J2 = time_derivative * space_laplacian
///   J3 = time_value      * space_laplacian
/// time_derivative = int eta^(-1/(p-1)) |eta'|^q, time_value = int eta.
IntegralFactors critical_factors(double T, double log_R, int ndim, const IntegralOptions& opt = {});
IntegralFactors critical_factors(double T, const LogCutoff& cutoff, double p, int ndim,
                                 const IntegralOptions& opt = {});
/// int phi^(-1/(p-1)) |Lap phi|^q dx alone; usable for log R far beyond the
/// range where the support volume R^N is representable.
double critical_space_laplacian(const LogCutoff& cutoff, double p, int ndim,
                                const IntegralOptions& opt = {});
double compute_J(double T, double R, double p, int ndim, Which which, const IntegralOptions& opt = {});

// --- scaling fits -----------------------------------------------------------

struct ScalingSample {
    double x = 0.0;
    double value = 0.0;
};

struct ScalingReport {
    std::string quantity;   // I1..I3, J1..J3 or a factor name
    std::string sweep_var;  // T, R, lnR
    std::vector<ScalingSample> samples;
    double fitted_slope = 0.0;
    double theory_slope = 0.0;
    double prefactor = 0.0;     // exp(intercept)
    double max_residual = 0.0;  // largest |log value - fit| over the samples

    double abs_err() const { return std::abs(fitted_slope - theory_slope); }
};

/// Least-squares slope of log(value) against log(x).
ScalingReport fit_scaling_exponent(const std::vector<ScalingSample>& samples, double theory_slope,
                                   std::string quantity = {}, std::string sweep_var = {});

nlohmann::ordered_json to_json(const ScalingReport& r);
/// CSV header: quantity,sweep_var,x,value,fitted_slope,theory_slope,abs_err
void write_scaling_csv(std::ostream& os, const std::vector<ScalingReport>& reports);

// --- positivity radius --------------------------------------------------------

struct PositivityOptions {
    std::optional<double> r0;  // first radius; default: plateau holding 99% of int |omega|
    double r_max = 1e4;
    double ell = 4.0;
};

/// int_{R^N} omega(|x|) xi_R(x) dx.
double omega_cutoff_integral(const ScalarFunction& omega, int ndim, double R, double ell = 4.0);

/// Smallest R = r0 * 2^j <= r_max with int omega xi_R > 0, or nullopt.
/// Throws IntegralDivergence if int |omega| does not converge.
std::optional<double> omega_positivity_radius(const ScalarFunction& omega, int ndim,
                                              const PositivityOptions& opt = {});

// --- weak residual -------------------------------------------------------------

/// Separable test function theta(t) chi(r) on [0, T].
struct SeparableTestFunction {
    double horizon = 0.0;
    std::function<Jet(double)> time;
    /// (I^g_{T-} theta)(t); equal to theta(t) for gamma = 0.
    std::function<double(double)> time_right_integral;
    std::function<RadialJet(double)> space;
};

/// psi(t) xi(x) with the closed-form right integral of psi.
SeparableTestFunction subcritical_test_function(double T, double R, double p, double gamma,
                                                int ndim, const IntegralOptions& opt = {});
/// eta(t) phi_log(x); right integral by quadrature when gamma > 0.
SeparableTestFunction critical_test_function(double T, double R, double p, double gamma, int ndim,
                                             const IntegralOptions& opt = {});

/// Individual terms of the weak formulation, as assembled on the solver grid.
struct WeakResidual {
    double source_memory = 0.0;  // int int |u|^p I^g_{T-} phi
    double source_forcing = 0.0; // int int omega phi
    double initial = 0.0;        // int u0 (phi(0) - k Lap phi(0))
    double time_term = 0.0;      // -int int u phi_t
    double sobolev_term = 0.0;   // k int int u Lap phi_t
    double diffusion_term = 0.0; // -int int u Lap phi

    double lhs() const { return source_memory + source_forcing + initial; }
    double rhs() const { return time_term + sobolev_term + diffusion_term; }
    double residual() const { return std::abs(lhs() - rhs()); }
};

/// Requires a trajectory with stored fields covering [0, test.horizon].
WeakResidual weak_residual(const RunResult& run, const SeparableTestFunction& test,
                           const ProblemSpec& spec, const RadialGrid& grid);

}  // namespace pseudopara
