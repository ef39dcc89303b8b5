#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fvspike/mesh.hpp"

namespace fvspike {

/// Coefficients of -d Δu + u = u^q.
struct SolverParams {
    double d = 1.0;  ///< diffusion coefficient, > 0
    double q = 2.0;  ///< nonlinearity exponent, > 0

    void validate() const;

    friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

/// Diagonal bases of the uniform-mesh system: corner a = h^2 + 2d, edge b = h^2 + 3d,
/// interior c = h^2 + 4d; every existing neighbour couples with -d_off = -d.
struct StencilCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d_off = 0.0;
};

[[nodiscard]] StencilCoefficients uniform_coefficients(double h, double d);

/// Five-band sparse matrix on an n_x x n_y grid in single-index order.
///
/// Band vectors all have length n. Entry (s, s+1) is east[s], (s, s-1) is west[s],
/// (s, s+n_x) is north[s], (s, s-n_x) is south[s]. Entries that would couple across a
/// grid-row boundary or leave the grid are stored as zero and reported absent by has_entry().
class StencilMatrix {
public:
    StencilMatrix(int n_x, int n_y);

    [[nodiscard]] int n_x() const noexcept { return n_x_; }
    [[nodiscard]] int n_y() const noexcept { return n_y_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return diag.size(); }

    /// Structural presence of entry (row, col), 0-based.
    [[nodiscard]] bool has_entry(std::size_t row, std::size_t col) const noexcept;

    /// Entry (row, col), 0-based; zero when structurally absent.
    [[nodiscard]] double entry(std::size_t row, std::size_t col) const noexcept;

    /// y = A x.
    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;

    /// Max absolute row sum.
    [[nodiscard]] double norm_inf() const noexcept;

    /// Row-major dense copy, for diagnostics and tests on small grids.
    [[nodiscard]] std::vector<double> to_dense() const;

    std::vector<double> diag;
    std::vector<double> east;
    std::vector<double> west;
    std::vector<double> north;
    std::vector<double> south;

private:
    int n_x_;
    int n_y_;
};

/// Sign-preserving real power sign(u) |u|^q.
[[nodiscard]] double pow_q(double u, double q);

/// Derivative of pow_q: q |u|^(q-1). At u = 0 this is 0 for q > 1 and 1 for q = 1;
/// throws MathDomainError for q < 1.
[[nodiscard]] double dpow_q(double u, double q);

/// Finite-volume residual F(X) with homogeneous Neumann boundaries:
///
///   F_s = -d * sum_{existing neighbours} w (X_nb - X_s) + h_x h_y (X_s - pow_q(X_s)),
///
/// with w = h_y/h_x across vertical edges and w = h_x/h_y across horizontal edges.
/// Boundary edges carry no flux.
[[nodiscard]] GridField residual(const Mesh& mesh, const SolverParams& params, const GridField& x);

/// Same values as residual() computed from the uniform-mesh coefficients (a, b, c).
/// Requires mesh.is_uniform() and n_x == n_y.
[[nodiscard]] GridField residual_uniform(const Mesh& mesh, const SolverParams& params, const GridField& x);

/// Analytic Jacobian dF/dX.
[[nodiscard]] StencilMatrix jacobian(const Mesh& mesh, const SolverParams& params, const GridField& x);

}  // namespace fvspike
