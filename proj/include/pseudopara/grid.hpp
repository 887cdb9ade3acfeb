#pragma once

#include <span>
#include <string>
#include <vector>

namespace pseudopara {

enum class Boundary { Neumann, Dirichlet };

std::string to_string(Boundary bc);
Boundary boundary_from_string(const std::string& name);

/// Uniform vertex-centred radial grid on [0, r_max]; node 0 sits at r = 0.
///
/// The Laplacian is assembled in flux form over control volumes
/// [r_{i-1/2}, r_{i+1/2}] so that sum_i vol_i (L u)_i telescopes to the
/// boundary flux. At r = 0 this reproduces 2N (u_1 - u_0)/dr^2.
class RadialGrid {
public:
    RadialGrid(int ndim, double r_max, int n_r, Boundary bc = Boundary::Neumann);

    int ndim() const noexcept { return ndim_; }
    double r_max() const noexcept { return r_max_; }
    int size() const noexcept { return n_r_; }
    double dr() const noexcept { return dr_; }
    Boundary boundary() const noexcept { return bc_; }
    double r(int i) const noexcept { return i * dr_; }

    /// Control-volume measure int r^(N-1) dr (no sphere-area factor).
    std::span<const double> volumes() const noexcept { return vol_; }

    /// Tridiagonal coefficients of L: (L u)_i = lo_i u_{i-1} + di_i u_i + up_i u_{i+1}.
    /// For Dirichlet the last row is zero (the node is pinned).
    std::span<const double> lower() const noexcept { return lo_; }
    std::span<const double> diag() const noexcept { return di_; }
    std::span<const double> upper() const noexcept { return up_; }

    /// sphere_area(N) * sum_i vol_i f_i.
    double integrate(std::span<const double> f) const;

private:
    int ndim_;
    double r_max_;
    int n_r_;
    double dr_;
    Boundary bc_;
    double area_;
    std::vector<double> vol_;
    std::vector<double> lo_;
    std::vector<double> di_;
    std::vector<double> up_;
};

/// Discrete radial Laplacian u'' + (N-1)/r u'.
std::vector<double> laplacian_radial(std::span<const double> u, const RadialGrid& grid);
void apply_laplacian(std::span<const double> u, const RadialGrid& grid, std::span<double> out);

/// Solves the tridiagonal system in place (Thomas). Returns false if a pivot
/// is zero or non-finite; `rhs` then holds garbage.
bool solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs,
                       std::vector<double>& scratch);

}  // namespace pseudopara
