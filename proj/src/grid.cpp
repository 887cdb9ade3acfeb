#include "pseudopara/grid.hpp"

#include "pseudopara/testfn.hpp"

#include <cmath>
#include <stdexcept>

namespace pseudopara {

std::string to_string(Boundary bc) { return bc == Boundary::Neumann ? "neumann" : "dirichlet"; }

Boundary boundary_from_string(const std::string& name) {
    if (name == "neumann") {
        return Boundary::Neumann;
    }
    if (name == "dirichlet") {
        return Boundary::Dirichlet;
    }
    throw std::invalid_argument("unknown boundary condition '" + name +
                                "' (expected neumann or dirichlet)");
}

RadialGrid::RadialGrid(int ndim, double r_max, int n_r, Boundary bc)
    : ndim_(ndim), r_max_(r_max), n_r_(n_r), bc_(bc) {
    if (ndim < 1) {
        throw std::invalid_argument("RadialGrid: ndim must be >= 1");
    }
    if (!(r_max > 0.0)) {
        throw std::invalid_argument("RadialGrid: r_max must be positive");
    }
    if (n_r < 16) {
        throw std::invalid_argument("RadialGrid: n_r must be >= 16");
    }
    dr_ = r_max / (n_r - 1);
    area_ = sphere_area(ndim);

    const auto n = static_cast<std::size_t>(n_r);
    vol_.resize(n);
    lo_.assign(n, 0.0);
    di_.assign(n, 0.0);
    up_.assign(n, 0.0);

    const double dim = ndim;
    auto face = [&](std::size_t i) {  // r_{i+1/2}^(N-1)
        return std::pow((static_cast<double>(i) + 0.5) * dr_, dim - 1.0);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i == 0 ? 0.0 : (static_cast<double>(i) - 0.5) * dr_;
        const double right = i + 1 == n ? r_max : (static_cast<double>(i) + 0.5) * dr_;
        vol_[i] = (std::pow(right, dim) - std::pow(left, dim)) / dim;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double scale = 1.0 / (dr_ * vol_[i]);
        if (i > 0) {
            lo_[i] = face(i - 1) * scale;
        }
        if (i + 1 < n) {
            up_[i] = face(i) * scale;
        }
        di_[i] = -(lo_[i] + up_[i]);
    }
    if (bc_ == Boundary::Dirichlet) {
        lo_[n - 1] = 0.0;
        di_[n - 1] = 0.0;
    }
}

double RadialGrid::integrate(std::span<const double> f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < vol_.size(); ++i) {
        acc += vol_[i] * f[i];
    }
    return area_ * acc;
}

void apply_laplacian(std::span<const double> u, const RadialGrid& grid, std::span<double> out) {
    const auto lo = grid.lower();
    const auto di = grid.diag();
    const auto up = grid.upper();
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        double v = di[i] * u[i];
        if (i > 0) {
            v += lo[i] * u[i - 1];
        }
        if (i + 1 < n) {
            v += up[i] * u[i + 1];
        }
        out[i] = v;
    }
}

std::vector<double> laplacian_radial(std::span<const double> u, const RadialGrid& grid) {
    if (u.size() != static_cast<std::size_t>(grid.size())) {
        throw std::invalid_argument("laplacian_radial: size mismatch");
    }
    std::vector<double> out(u.size());
    apply_laplacian(u, grid, out);
    return out;
}

bool solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs,
                       std::vector<double>& scratch) {
    const std::size_t n = diag.size();
    scratch.resize(n);
    double pivot = diag[0];
    if (!(std::isfinite(pivot) && pivot != 0.0)) {
        return false;
    }
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        scratch[i] = upper[i - 1] / pivot;
        pivot = diag[i] - lower[i] * scratch[i];
        if (!(std::isfinite(pivot) && pivot != 0.0)) {
            return false;
        }
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= scratch[i + 1] * rhs[i + 1];
    }
    return true;
}

}  // namespace pseudopara
