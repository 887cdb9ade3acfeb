#include "pseudopara/testfn.hpp"

#include "pseudopara/fracint.hpp"
#include "pseudopara/grid.hpp"
#include "pseudopara/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pseudopara {

int m_from_p(double p) {
    if (!(p > 1.0)) {
        throw std::invalid_argument("m_from_p: p must exceed 1");
    }
    return static_cast<int>(std::floor(1.0 / (p - 1.0))) + 1;
}

double p_critical(int ndim) {
    if (ndim <= 0) {
        throw std::invalid_argument("p_critical: dimension must be positive");
    }
    if (ndim <= 2) {
        return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(ndim) / (ndim - 2.0);
}

double p_fujita(int ndim) {
    if (ndim <= 0) {
        throw std::invalid_argument("p_fujita: dimension must be positive");
    }
    return 1.0 + 2.0 / ndim;
}

double sphere_area(int ndim) {
    if (ndim <= 0) {
        throw std::invalid_argument("sphere_area: dimension must be positive");
    }
    return 2.0 * std::pow(std::numbers::pi, 0.5 * ndim) / std::tgamma(0.5 * ndim);
}

namespace {

void check_common(double T, double p, int ndim) {
    if (!(T > 0.0)) {
        throw std::invalid_argument("T must be positive");
    }
    if (!(p > 1.0)) {
        throw std::invalid_argument("p must exceed 1");
    }
    if (ndim <= 0) {
        throw std::invalid_argument("dimension must be positive");
    }
}

std::vector<double> geometric_breaks(double lo, double hi) {
    std::vector<double> b{lo};
    for (double x = lo * 10.0; x < hi; x *= 10.0) {
        b.push_back(x);
    }
    b.push_back(hi);
    return b;
}

// int_0^X f with a possible singularity at 0. The truncated integrals over
// [delta X, X] for delta = 1e-3, 1e-6, 1e-9 must settle; an increment that
// does not shrink by half marks a non-integrable endpoint.
double singular_at_zero(const ScalarFunction& f, double X, const IntegralOptions& opt,
                        const std::string& what) {
    if (opt.check_divergence) {
        auto truncated = [&](double delta) {
            return integrate_piecewise(f, geometric_breaks(delta * X, X), 1e-9).value;
        };
        double v3 = 0.0;
        double v6 = 0.0;
        double v9 = 0.0;
        try {
            v3 = truncated(1e-3);
            v6 = truncated(1e-6);
            v9 = truncated(1e-9);
        } catch (const std::domain_error&) {
            throw IntegralDivergence(what + ": integrand is not finite near the endpoint");
        }
        const double inc1 = std::abs(v6 - v3);
        const double inc2 = std::abs(v9 - v6);
        if (inc2 > 0.5 * inc1 && inc2 > 1e-12 * std::abs(v9)) {
            throw IntegralDivergence(what + ": integral does not settle under endpoint refinement");
        }
    }
    return integrate_endpoint_singular(f, 0.0, X, opt.rel_tol).value;
}

// A profile with a jump in value or slope at `at` makes the Laplacian a
// measure; the centred second difference then grows like 1/h^2 or 1/h.
void check_regular(const Profile& profile, double at, const IntegralOptions& opt,
                   const std::string& what) {
    if (!opt.check_divergence) {
        return;
    }
    auto d2 = [&](double h) {
        return (profile(at + h).value - 2.0 * profile(at).value + profile(at - h).value) / (h * h);
    };
    const double a = std::abs(d2(1e-3));
    const double b = std::abs(d2(1e-4));
    if (b > 4.0 * a + 1.0) {
        throw IntegralDivergence(what + ": cutoff profile is not C2 at s = " + format_double(at) +
                                 ", the Laplacian term is not integrable");
    }
}

int resolve_m(double p, const IntegralOptions& opt) {
    const int m = opt.m.value_or(m_from_p(p));
    if (m < 1) {
        throw std::invalid_argument("m must be a positive integer");
    }
    return m;
}

struct TimeParts {
    double derivative;
    double value;
};

TimeParts subcritical_time(double T, double p, double gamma, int m, const IntegralOptions& opt) {
    const double q = p / (p - 1.0);
    const double e = -1.0 / (p - 1.0);
    // I^g psi = c v^(m+g) with v = 1 - t/T; psi = v^m, |psi'| = m/T v^(m-1).
    const double c = gamma == 0.0 ? 1.0 : rl_right_poly_closed_form(m, gamma, T, 0.0);
    const double scale = std::pow(c, e) * T;
    const double slope = m / T;
    const double a = (m + gamma) * e;
    auto fd = [=](double v) {
        if (v <= 0.0) {
            return 0.0;
        }
        return scale * std::pow(slope, q) * std::pow(v, a + (m - 1.0) * q);
    };
    auto fv = [=](double v) {
        if (v <= 0.0) {
            return 0.0;
        }
        return scale * std::pow(v, a + m * q);
    };
    return {singular_at_zero(fd, 1.0, opt, "time factor (derivative)"),
            singular_at_zero(fv, 1.0, opt, "time factor (value)")};
}

struct SpaceParts {
    double volume;
    double laplacian;
};

SpaceParts subcritical_space(double R, double p, int ndim, double ell, const IntegralOptions& opt) {
    const SpaceCutoff xi(R, ell);
    const double q = p / (p - 1.0);
    const double area = sphere_area(ndim);
    check_regular([&](double z) { return xi.profile(z); }, 1.0, opt, "space cutoff");
    check_regular([&](double z) { return xi.profile(z); }, 2.0, opt, "space cutoff");

    auto vol = [&](double r) { return xi.eval(r, ndim).value * std::pow(r, ndim - 1.0); };
    const double volume =
        area * integrate_piecewise(vol, {0.0, R, xi.support_radius()}, opt.rel_tol).value;

    // Phi = S^ell with S = S(w), w = 2 - r^2/R^2. Writing Lap xi = S^(ell-2) G
    // gives xi^(-1/(p-1)) |Lap xi|^q = S^(ell - 2q) |G|^q.
    const double expo = ell - 2.0 * q;
    auto lap = [&](double w) {
        if (w <= 0.0 || w >= 1.0) {
            return 0.0;
        }
        const Jet s = smoothstep(w);
        if (s.value <= 0.0) {
            return 0.0;
        }
        const double r2 = R * R * (2.0 - w);
        const double r = std::sqrt(r2);
        const double r4 = R * R * R * R;
        // dPhi/dz = -ell S^(ell-1) S', d2Phi/dz2 = ell (ell-1) S^(ell-2) S'^2 + ell S^(ell-1) S''
        const double g = (ell * (ell - 1.0) * s.d1 * s.d1 + ell * s.value * s.d2) * 4.0 * r2 / r4 -
                         ell * s.value * s.d1 * 2.0 * ndim / (R * R);
        const double dr_dw = R * R / (2.0 * r);
        return std::pow(s.value, expo) * std::pow(std::abs(g), q) * std::pow(r, ndim - 1.0) * dr_dw;
    };
    const double laplacian = area * singular_at_zero(lap, 1.0, opt, "space factor (Laplacian)");
    return {volume, laplacian};
}

double select(const IntegralFactors& f, Which which) {
    switch (which) {
    case Which::One:
        return f.time_derivative * f.space_volume;
    case Which::Two:
        return f.time_derivative * f.space_laplacian;
    case Which::Three:
        return f.time_value * f.space_laplacian;
    }
    throw std::invalid_argument("which must be 1, 2 or 3");
}

}  // namespace

IntegralFactors subcritical_factors(double T, double R, double p, double gamma, int ndim,
                                    const IntegralOptions& opt) {
    check_common(T, p, ndim);
    if (!(R > 0.0)) {
        throw std::invalid_argument("R must be positive");
    }
    FractionalSpec spec(gamma);
    const int m = resolve_m(p, opt);
    const double ell = opt.ell.value_or(SpaceCutoff::default_power(p));
    const TimeParts t = subcritical_time(T, p, spec.gamma(), m, opt);
    const SpaceParts s = subcritical_space(R, p, ndim, ell, opt);
    return {t.derivative, t.value, s.volume, s.laplacian};
}

double compute_I(double T, double R, double p, double gamma, int ndim, Which which,
                 const IntegralOptions& opt) {
    return select(subcritical_factors(T, R, p, gamma, ndim, opt), which);
}

double compute_I_direct(double T, double R, double p, double gamma, int ndim, Which which,
                        const IntegralOptions& opt) {
    check_common(T, p, ndim);
    FractionalSpec spec(gamma);
    const int m = resolve_m(p, opt);
    const double ell = opt.ell.value_or(SpaceCutoff::default_power(p));
    const TimeCutoff psi(T, m);
    const SpaceCutoff xi(R, ell);
    const double q = p / (p - 1.0);
    const double e = -1.0 / (p - 1.0);
    const double area = sphere_area(ndim);
    const std::vector<double> breaks{0.0, R, xi.support_radius()};

    auto outer = [&](double t) {
        if (t >= T) {
            return 0.0;
        }
        const Jet pt = psi.eval(t);
        const double ipsi = gamma == 0.0 ? pt.value : rl_right_poly_closed_form(m, gamma, T, t);
        auto inner = [&](double r) {
            const RadialJet x = xi.eval(r, ndim);
            if (x.value <= 0.0) {
                return 0.0;
            }
            double g = 0.0;
            switch (which) {
            case Which::One:
                g = pt.d1 * x.value;
                break;
            case Which::Two:
                g = pt.d1 * x.laplacian;
                break;
            case Which::Three:
                g = pt.value * x.laplacian;
                break;
            }
            if (g == 0.0) {
                return 0.0;
            }
            return std::exp(e * std::log(ipsi * x.value) + q * std::log(std::abs(g))) *
                   std::pow(r, ndim - 1.0);
        };
        return area * integrate_piecewise(inner, breaks, 1e-9).value;
    };
    return integrate_endpoint_singular(outer, 0.0, T, 1e-8).value;
}

// ---------------------------------------------------------------------------

IntegralFactors critical_factors(double T, double log_R, int ndim, const IntegralOptions& opt) {
    const double p = p_critical(ndim);
    if (!std::isfinite(p)) {
        throw std::invalid_argument("critical factors need dimension >= 3");
    }
    const double kappa = opt.kappa.value_or(LogCutoff::default_power(p));
    return critical_factors(T, LogCutoff::from_log_radius(log_R, kappa), p, ndim, opt);
}

IntegralFactors critical_factors(double T, const LogCutoff& cutoff, double p, int ndim,
                                 const IntegralOptions& opt) {
    check_common(T, p, ndim);
    const double q = p / (p - 1.0);
    const double area = sphere_area(ndim);

    // eta^(-1/(p-1)) |eta'|^q = eta |eta'/eta|^q because q - 1/(p-1) = 1.
    auto td = [&](double s) {
        const Jet n = Bump::nu(s);
        if (n.value <= 0.0) {
            return 0.0;
        }
        return n.value * std::pow(std::abs(n.d1 / n.value), q);
    };
    auto tv = [&](double s) { return Bump::nu(s).value; };
    const std::vector<double> unit{0.0, 0.5, 1.0};
    IntegralFactors out;
    out.time_derivative = std::pow(T, 1.0 - q) * integrate_piecewise(td, unit, opt.rel_tol).value;
    out.time_value = T * integrate_piecewise(tv, unit, opt.rel_tol).value;

    // r = exp(L (1 + s)) on the annulus, r^(N-1) dr = r^N L ds.
    const double L = cutoff.log_scale();
    const double n = ndim;
    auto sv = [&](double s) { return cutoff.profile(s).value * std::exp(n * L * (1.0 + s)) * L; };
    const double inner_ball = std::exp(n * L) / n;
    out.space_volume =
        area * (inner_ball + integrate_piecewise(sv, {0.0, 0.5, 1.0}, opt.rel_tol).value);

    out.space_laplacian = critical_space_laplacian(cutoff, p, ndim, opt);
    return out;
}

double critical_space_laplacian(const LogCutoff& cutoff, double p, int ndim,
                                const IntegralOptions& opt) {
    if (!(p > 1.0) || ndim <= 0) {
        throw std::invalid_argument("critical_space_laplacian: need p > 1 and N >= 1");
    }
    const double q = p / (p - 1.0);
    const Profile f = [&cutoff](double s) { return cutoff.profile(s); };
    check_regular(f, 0.0, opt, "log cutoff");
    check_regular(f, 1.0, opt, "log cutoff");
    const double L = cutoff.log_scale();
    const double n = ndim;
    auto sl = [&](double v) {
        const double s = 1.0 - v;
        const Jet fj = cutoff.edge_profile(v);
        if (fj.value <= 0.0) {
            return 0.0;
        }
        const double lap_r2 = cutoff.scaled_laplacian(fj, ndim);
        if (lap_r2 == 0.0) {
            return 0.0;
        }
        return std::exp(-std::log(fj.value) / (p - 1.0) + q * std::log(std::abs(lap_r2)) +
                        (n - 2.0 * q) * L * (1.0 + s)) *
               L;
    };
    return sphere_area(ndim) * singular_at_zero(sl, 1.0, opt, "log-cutoff Laplacian factor");
}

double compute_J(double T, double R, double p, int ndim, Which which, const IntegralOptions& opt) {
    const double pc = p_critical(ndim);
    if (!std::isfinite(pc)) {
        throw std::invalid_argument("compute_J needs dimension >= 3");
    }
    if (std::abs(p - pc) > 1e-12 * pc) {
        throw std::invalid_argument("compute_J needs p = N/(N-2)");
    }
    if (!(R > std::numbers::e)) {
        throw std::invalid_argument("compute_J needs R > e");
    }
    const double kappa = opt.kappa.value_or(LogCutoff::default_power(p));
    return select(critical_factors(T, LogCutoff::from_log_radius(std::log(R), kappa), p, ndim, opt),
                  which);
}

// ---------------------------------------------------------------------------

ScalingReport fit_scaling_exponent(const std::vector<ScalingSample>& samples, double theory_slope,
                                   std::string quantity, std::string sweep_var) {
    if (samples.size() < 3) {
        throw std::invalid_argument("fit_scaling_exponent: need at least 3 samples");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        if (!(s.value > 0.0) || !(s.x > 0.0)) {
            throw std::invalid_argument("fit_scaling_exponent: samples must be positive");
        }
        const double x = std::log(s.x);
        const double y = std::log(s.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(samples.size());
    const double den = n * sxx - sx * sx;
    if (!(den > 0.0)) {
        throw std::invalid_argument("fit_scaling_exponent: sample abscissae coincide");
    }
    ScalingReport r;
    r.quantity = std::move(quantity);
    r.sweep_var = std::move(sweep_var);
    r.samples = samples;
    r.fitted_slope = (n * sxy - sx * sy) / den;
    const double icpt = (sy - r.fitted_slope * sx) / n;
    r.prefactor = std::exp(icpt);
    r.theory_slope = theory_slope;
    for (const auto& s : samples) {
        const double res = std::log(s.value) - (icpt + r.fitted_slope * std::log(s.x));
        r.max_residual = std::max(r.max_residual, std::abs(res));
    }
    return r;
}

nlohmann::ordered_json to_json(const ScalingReport& r) {
    nlohmann::ordered_json j;
    j["quantity"] = r.quantity;
    j["sweep_var"] = r.sweep_var;
    auto& arr = j["samples"] = nlohmann::ordered_json::array();
    for (const auto& s : r.samples) {
        arr.push_back(nlohmann::ordered_json{{"x", s.x}, {"value", s.value}});
    }
    j["fitted_slope"] = r.fitted_slope;
    j["theory_slope"] = r.theory_slope;
    j["abs_err"] = r.abs_err();
    j["prefactor"] = r.prefactor;
    j["max_residual"] = r.max_residual;
    return j;
}

void write_scaling_csv(std::ostream& os, const std::vector<ScalingReport>& reports) {
    os << "quantity,sweep_var,x,value,fitted_slope,theory_slope,abs_err\n";
    for (const auto& r : reports) {
        for (const auto& s : r.samples) {
            os << r.quantity << ',' << r.sweep_var << ',' << format_double(s.x) << ','
               << format_double(s.value) << ',' << format_double(r.fitted_slope) << ','
               << format_double(r.theory_slope) << ',' << format_double(r.abs_err()) << '\n';
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> radial_breaks(double lo, double hi) {
    std::vector<double> b{lo};
    for (double x = 0.0625; x < hi; x *= 2.0) {
        if (x > lo) {
            b.push_back(x);
        }
    }
    b.push_back(hi);
    return b;
}

}  // namespace

double omega_cutoff_integral(const ScalarFunction& omega, int ndim, double R, double ell) {
    const SpaceCutoff xi(R, ell);
    auto f = [&](double r) { return omega(r) * xi.eval(r, ndim).value * std::pow(r, ndim - 1.0); };
    auto breaks = radial_breaks(0.0, R);
    breaks.push_back(xi.support_radius());
    return sphere_area(ndim) * integrate_piecewise(f, breaks, 1e-10).value;
}

std::optional<double> omega_positivity_radius(const ScalarFunction& omega, int ndim,
                                              const PositivityOptions& opt) {
    if (ndim <= 0) {
        throw std::invalid_argument("dimension must be positive");
    }
    if (!(opt.r_max > 0.0)) {
        throw std::invalid_argument("r_max must be positive");
    }
    auto abs_f = [&](double r) { return std::abs(omega(r)) * std::pow(r, ndim - 1.0); };

    // Cumulative int_0^rho |omega| on rho = 1, 2, 4, ...; it must settle before r_max.
    std::vector<std::pair<double, double>> cumulative;
    double total = 0.0;
    double prev_rho = 0.0;
    bool settled = false;
    for (double rho = 1.0; rho <= 2.0 * opt.r_max; rho *= 2.0) {
        const double piece = integrate_piecewise(abs_f, radial_breaks(prev_rho, rho), 1e-10).value;
        total += piece;
        cumulative.emplace_back(rho, total);
        prev_rho = rho;
        if (piece <= 1e-12 * total && rho >= 4.0) {
            settled = true;
            break;
        }
    }
    if (total == 0.0) {
        return std::nullopt;
    }
    if (!settled) {
        throw IntegralDivergence("omega_positivity_radius: int |omega| does not converge");
    }
    double r0 = 1.0;
    if (opt.r0) {
        r0 = *opt.r0;
    } else {
        for (const auto& [rho, acc] : cumulative) {
            if (acc >= 0.99 * total) {
                r0 = rho;
                break;
            }
        }
    }
    if (!(r0 > 0.0)) {
        throw std::invalid_argument("r0 must be positive");
    }
    for (double R = r0; R <= opt.r_max; R *= 2.0) {
        if (omega_cutoff_integral(omega, ndim, R, opt.ell) > 0.0) {
            return R;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

SeparableTestFunction subcritical_test_function(double T, double R, double p, double gamma,
                                                int ndim, const IntegralOptions& opt) {
    check_common(T, p, ndim);
    FractionalSpec spec(gamma);
    const int m = resolve_m(p, opt);
    const TimeCutoff psi(T, m);
    const SpaceCutoff xi(R, opt.ell.value_or(SpaceCutoff::default_power(p)));
    SeparableTestFunction f;
    f.horizon = T;
    f.time = [psi](double t) { return psi.eval(std::clamp(t, 0.0, psi.horizon())); };
    f.time_right_integral = [psi, m, gamma, T](double t) {
        if (t >= T) {
            return 0.0;
        }
        if (gamma == 0.0) {
            return psi.eval(std::max(t, 0.0)).value;
        }
        return rl_right_poly_closed_form(m, gamma, T, std::max(t, 0.0));
    };
    f.space = [xi, ndim](double r) { return xi.eval(r, ndim); };
    return f;
}

SeparableTestFunction critical_test_function(double T, double R, double p, double gamma, int ndim,
                                             const IntegralOptions& opt) {
    check_common(T, p, ndim);
    FractionalSpec spec(gamma);
    const Bump eta(T);
    const LogCutoff phi(R, opt.kappa.value_or(LogCutoff::default_power(p)));
    SeparableTestFunction f;
    f.horizon = T;
    f.time = [eta](double t) { return eta.eval(t); };
    f.time_right_integral = [eta, spec, T](double t) {
        if (t >= T) {
            return 0.0;
        }
        if (spec.is_local()) {
            return eta.eval(t).value;
        }
        return right_rl_integral([&eta](double s) { return eta.eval(s).value; }, std::max(t, 0.0), T,
                                 spec);
    };
    f.space = [phi, ndim](double r) { return phi.eval(r, ndim); };
    return f;
}

WeakResidual weak_residual(const RunResult& run, const SeparableTestFunction& test,
                           const ProblemSpec& spec, const RadialGrid& grid) {
    const auto& times = run.trajectory.field_times;
    const auto& fields = run.trajectory.fields;
    if (times.empty() || times.size() != fields.size()) {
        throw std::invalid_argument("weak_residual: trajectory has no stored fields");
    }
    const double T = test.horizon;
    if (times.back() < T * (1.0 - 1e-12)) {
        throw std::invalid_argument("weak_residual: trajectory shorter than the test horizon");
    }
    const auto n = static_cast<std::size_t>(grid.size());
    std::vector<double> chi(n), lap_chi(n), omega(n), work(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.r(static_cast<int>(i));
        const RadialJet s = test.space(r);
        chi[i] = s.value;
        lap_chi[i] = s.laplacian;
        omega[i] = spec.omega(r);
    }
    if (grid.boundary() == Boundary::Dirichlet) {
        omega.back() = 0.0;
    }
    auto space_integral = [&](const std::vector<double>& a, const std::vector<double>& b,
                              auto&& map) {
        for (std::size_t i = 0; i < n; ++i) {
            work[i] = map(a[i]) * b[i];
        }
        return grid.integrate(work);
    };
    auto id = [](double v) { return v; };

    // Time samples on [0, T]; the field at T is interpolated if T is not a node.
    struct Sample {
        double t;
        double u_chi, u_lap, up_chi;
    };
    std::vector<Sample> samples;
    auto make = [&](double t, const std::vector<double>& u) {
        const double pp = spec.p;
        return Sample{t, space_integral(u, chi, id), space_integral(u, lap_chi, id),
                      spec.nonlinear ? space_integral(u, chi, [pp](double v) {
                          return std::pow(std::abs(v), pp);
                      })
                                     : 0.0};
    };
    for (std::size_t j = 0; j < times.size(); ++j) {
        if (times[j] <= T * (1.0 + 1e-12)) {
            samples.push_back(make(std::min(times[j], T), fields[j]));
            continue;
        }
        if (samples.back().t < T) {
            const double w = (T - times[j - 1]) / (times[j] - times[j - 1]);
            std::vector<double> u(n);
            for (std::size_t i = 0; i < n; ++i) {
                u[i] = (1.0 - w) * fields[j - 1][i] + w * fields[j][i];
            }
            samples.push_back(make(T, u));
        }
        break;
    }

    WeakResidual out;
    const double omega_chi = grid.integrate([&] {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = omega[i] * chi[i];
        }
        return v;
    }());
    const Jet th0 = test.time(0.0);
    out.initial = th0.value * samples.front().u_chi - spec.k * th0.value * samples.front().u_lap;

    for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
        const auto& a = samples[j];
        const auto& b = samples[j + 1];
        const double h = 0.5 * (b.t - a.t);
        const Jet ta = test.time(a.t);
        const Jet tb = test.time(b.t);
        out.source_memory +=
            h * (a.up_chi * test.time_right_integral(a.t) + b.up_chi * test.time_right_integral(b.t));
        out.source_forcing += h * omega_chi * (ta.value + tb.value);
        out.time_term -= h * (a.u_chi * ta.d1 + b.u_chi * tb.d1);
        out.sobolev_term += spec.k * h * (a.u_lap * ta.d1 + b.u_lap * tb.d1);
        out.diffusion_term -= h * (a.u_lap * ta.value + b.u_lap * tb.value);
    }
    return out;
}

}  // namespace pseudopara
