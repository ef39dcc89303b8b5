#include "fvspike/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvspike/error.hpp"

namespace fvspike {

void SolverParams::validate() const {
    if (!std::isfinite(d) || d <= 0.0) {
        throw InvalidArgument("diffusion d must be finite and > 0, got " + std::to_string(d));
    }
    if (!std::isfinite(q) || q <= 0.0) {
        throw InvalidArgument("exponent q must be finite and > 0, got " + std::to_string(q));
    }
}

StencilCoefficients uniform_coefficients(double h, double d) {
    const double h2 = h * h;
    return {h2 + 2.0 * d, h2 + 3.0 * d, h2 + 4.0 * d, d};
}

StencilMatrix::StencilMatrix(int n_x, int n_y) : n_x_(n_x), n_y_(n_y) {
    if (n_x < 1 || n_y < 1) {
        throw InvalidArgument("stencil matrix needs a non-empty grid");
    }
    const auto n = static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_y);
    diag.assign(n, 0.0);
    east.assign(n, 0.0);
    west.assign(n, 0.0);
    north.assign(n, 0.0);
    south.assign(n, 0.0);
}

bool StencilMatrix::has_entry(std::size_t row, std::size_t col) const noexcept {
    const std::size_t n = dimension();
    if (row >= n || col >= n) {
        return false;
    }
    const auto nx = static_cast<std::size_t>(n_x_);
    const std::size_t i = row % nx;
    return col == row || (col == row + 1 && i + 1 < nx) || (col + 1 == row && i > 0) || col == row + nx ||
           col + nx == row;
}

double StencilMatrix::entry(std::size_t row, std::size_t col) const noexcept {
    if (!has_entry(row, col)) {
        return 0.0;
    }
    const auto nx = static_cast<std::size_t>(n_x_);
    const std::size_t i = row % nx;
    if (col == row) {
        return diag[row];
    }
    if (col == row + 1 && i + 1 < nx) {
        return east[row];
    }
    if (col + 1 == row && i > 0) {
        return west[row];
    }
    if (col == row + nx) {
        return north[row];
    }
    return south[row];
}

std::vector<double> StencilMatrix::multiply(std::span<const double> x) const {
    const std::size_t n = dimension();
    if (x.size() != n) {
        throw DimensionMismatch("matrix dimension " + std::to_string(n) + " vs vector length " +
                                std::to_string(x.size()));
    }
    const auto nx = static_cast<std::size_t>(n_x_);
    std::vector<double> y(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t i = s % nx;
        double acc = diag[s] * x[s];
        if (s >= nx) {
            acc += south[s] * x[s - nx];
        }
        if (i > 0) {
            acc += west[s] * x[s - 1];
        }
        if (i + 1 < nx) {
            acc += east[s] * x[s + 1];
        }
        if (s + nx < n) {
            acc += north[s] * x[s + nx];
        }
        y[s] = acc;
    }
    return y;
}

double StencilMatrix::norm_inf() const noexcept {
    double best = 0.0;
    for (std::size_t s = 0; s < dimension(); ++s) {
        const double row = std::abs(diag[s]) + std::abs(east[s]) + std::abs(west[s]) + std::abs(north[s]) +
                           std::abs(south[s]);
        best = std::max(best, row);
    }
    return best;
}

std::vector<double> StencilMatrix::to_dense() const {
    const std::size_t n = dimension();
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            dense[r * n + c] = entry(r, c);
        }
    }
    return dense;
}

double pow_q(double u, double q) {
    if (u == 0.0) {
        return 0.0;
    }
    return std::copysign(std::pow(std::abs(u), q), u);
}

double dpow_q(double u, double q) {
    if (u == 0.0) {
        if (q > 1.0) {
            return 0.0;
        }
        if (q == 1.0) {
            return 1.0;
        }
        throw MathDomainError("derivative of |u|^q is singular at u = 0 for q < 1 (q = " + std::to_string(q) + ")");
    }
    return q * std::pow(std::abs(u), q - 1.0);
}

namespace {

void check_inputs(const Mesh& mesh, const SolverParams& params, const GridField& x) {
    params.validate();
    require_same_mesh(mesh, x);
}

}  // namespace

GridField residual(const Mesh& mesh, const SolverParams& params, const GridField& x) {
    check_inputs(mesh, params, x);
    const int nx = mesh.n_x();
    const int ny = mesh.n_y();
    const double hx = mesh.h_x();
    const double hy = mesh.h_y();
    const double w_ew = hy / hx;  // across vertical edges
    const double w_ns = hx / hy;  // across horizontal edges
    const double area = hx * hy;
    const double d = params.d;
    const double q = params.q;

    const auto u = x.values();
    GridField out(mesh);
    auto f = out.values();
    const auto stride = static_cast<std::size_t>(nx);
    for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
            const auto s = static_cast<std::size_t>((j - 1) * nx + (i - 1));
            const double uc = u[s];
            double flux = 0.0;
            if (j > 1) {
                flux += w_ns * (u[s - stride] - uc);
            }
            if (i > 1) {
                flux += w_ew * (u[s - 1] - uc);
            }
            if (i < nx) {
                flux += w_ew * (u[s + 1] - uc);
            }
            if (j < ny) {
                flux += w_ns * (u[s + stride] - uc);
            }
            f[s] = -d * flux + area * (uc - pow_q(uc, q));
        }
    }
    return out;
}

GridField residual_uniform(const Mesh& mesh, const SolverParams& params, const GridField& x) {
    check_inputs(mesh, params, x);
    if (!mesh.is_uniform()) {
        throw InvalidArgument("residual_uniform requires h_x == h_y");
    }
    if (!mesh.is_square()) {
        throw InvalidArgument("residual_uniform requires n_x == n_y");
    }
    const int n = mesh.n_x();
    const double h = mesh.h_x();
    const double h2 = h * mesh.h_y();
    const StencilCoefficients k = uniform_coefficients(h, params.d);
    const double d = k.d_off;
    const double q = params.q;

    const auto u = x.values();
    GridField out(mesh);
    auto f = out.values();
    const auto stride = static_cast<std::size_t>(n);
    for (int j = 1; j <= n; ++j) {
        const bool j_edge = (j == 1 || j == n);
        for (int i = 1; i <= n; ++i) {
            const bool i_edge = (i == 1 || i == n);
            const auto s = static_cast<std::size_t>((j - 1) * n + (i - 1));
            double base = k.c;
            if (n == 1) {
                base = h2;
            } else if (i_edge && j_edge) {
                base = k.a;
            } else if (i_edge || j_edge) {
                base = k.b;
            }
            double neighbours = 0.0;
            if (j > 1) {
                neighbours += u[s - stride];
            }
            if (i > 1) {
                neighbours += u[s - 1];
            }
            if (i < n) {
                neighbours += u[s + 1];
            }
            if (j < n) {
                neighbours += u[s + stride];
            }
            f[s] = base * u[s] - h2 * pow_q(u[s], q) - d * neighbours;
        }
    }
    return out;
}

StencilMatrix jacobian(const Mesh& mesh, const SolverParams& params, const GridField& x) {
    check_inputs(mesh, params, x);
    const int nx = mesh.n_x();
    const int ny = mesh.n_y();
    const double hx = mesh.h_x();
    const double hy = mesh.h_y();
    const double w_ew = hy / hx;
    const double w_ns = hx / hy;
    const double area = hx * hy;
    const double d = params.d;
    const double q = params.q;

    StencilMatrix jac(nx, ny);
    const auto u = x.values();
    for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
            const auto s = static_cast<std::size_t>((j - 1) * nx + (i - 1));
            double weights = 0.0;
            if (j > 1) {
                jac.south[s] = -d * w_ns;
                weights += w_ns;
            }
            if (i > 1) {
                jac.west[s] = -d * w_ew;
                weights += w_ew;
            }
            if (i < nx) {
                jac.east[s] = -d * w_ew;
                weights += w_ew;
            }
            if (j < ny) {
                jac.north[s] = -d * w_ns;
                weights += w_ns;
            }
            jac.diag[s] = area + d * weights - area * dpow_q(u[s], q);
        }
    }
    return jac;
}

}  // namespace fvspike
