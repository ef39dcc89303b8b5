#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_elljac.h>
#include <gsl/gsl_sf_expint.h>

namespace oracle {

std::vector<double> fv_residual_by_case(int n, double hx, double hy, double d, double q, const std::vector<double>& u) {
    if (n != 2 && n != 3) throw std::invalid_argument("case oracle covers n = 2 and n = 3");
    auto U = [&](int i, int j) { return u[static_cast<std::size_t>((j - 1) * n + (i - 1))]; };
    const double ry = hy / hx;  // vertical edges
    const double rx = hx / hy;  // horizontal edges
    const double A = hx * hy;
    std::vector<double> F(u.size());
    for (int j = 1; j <= n; ++j) {
        for (int i = 1; i <= n; ++i) {
            const double c = U(i, j);
            const double react = A * (c - std::pow(c, q));
            double f = 0.0;
            if (i == 1 && j == 1) {
                f = -d * (ry * (U(2, 1) - c) + rx * (U(1, 2) - c)) + react;
            } else if (i == n && j == 1) {
                f = -d * (ry * (U(n - 1, 1) - c) + rx * (U(n, 2) - c)) + react;
            } else if (i == 1 && j == n) {
                f = -d * (rx * (U(1, n - 1) - c) + ry * (U(2, n) - c)) + react;
            } else if (i == n && j == n) {
                f = -d * (rx * (U(n, n - 1) - c) + ry * (U(n - 1, n) - c)) + react;
            } else if (j == 1) {
                f = -d * (ry * (U(i - 1, 1) - c) + ry * (U(i + 1, 1) - c) + rx * (U(i, 2) - c)) + react;
            } else if (j == n) {
                f = -d * (rx * (U(i, n - 1) - c) + ry * (U(i - 1, n) - c) + ry * (U(i + 1, n) - c)) + react;
            } else if (i == 1) {
                f = -d * (rx * (U(1, j - 1) - c) + ry * (U(2, j) - c) + rx * (U(1, j + 1) - c)) + react;
            } else if (i == n) {
                f = -d * (rx * (U(n, j - 1) - c) + ry * (U(n - 1, j) - c) + rx * (U(n, j + 1) - c)) + react;
            } else {
                f = -d * (rx * (U(i, j - 1) - c) + ry * (U(i - 1, j) - c) + ry * (U(i + 1, j) - c) +
                          rx * (U(i, j + 1) - c)) +
                    react;
            }
            F[static_cast<std::size_t>((j - 1) * n + (i - 1))] = f;
        }
    }
    return F;
}

std::vector<double> uniform_matrix_residual(int n, double h, double d, double q, const std::vector<double>& u) {
    const double h2 = h * h;
    const double a = h2 + 2 * d;
    const double b = h2 + 3 * d;
    const double c = h2 + 4 * d;
    const int m = n * n;
    std::vector<double> M(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    auto at = [&](int r, int col) -> double& {
        return M[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(col)];
    };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int s = j * n + i;
            const int boundary_sides = (i == 0) + (i == n - 1) + (j == 0) + (j == n - 1);
            if (n == 1) {
                at(s, s) = h2;
            } else {
                at(s, s) = boundary_sides >= 2 ? a : (boundary_sides == 1 ? b : c);
            }
            if (i > 0) at(s, s - 1) = -d;
            if (i < n - 1) at(s, s + 1) = -d;
            if (j > 0) at(s, s - n) = -d;
            if (j < n - 1) at(s, s + n) = -d;
        }
    }
    std::vector<double> F = dense_multiply(M, u);
    for (int s = 0; s < m; ++s) {
        F[static_cast<std::size_t>(s)] -= h2 * std::pow(u[static_cast<std::size_t>(s)], q);
    }
    return F;
}

std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a[r * n + k]) > std::abs(a[p * n + k])) p = r;
        }
        if (a[p * n + k] == 0.0) throw std::runtime_error("dense oracle: singular matrix");
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[p * n + c]);
            std::swap(b[k], b[p]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double l = a[r * n + k] / a[k * n + k];
            for (std::size_t c = k; c < n; ++c) a[r * n + c] -= l * a[k * n + c];
            b[r] -= l * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= a[k * n + c] * x[c];
        x[k] = s / a[k * n + k];
    }
    return x;
}

std::vector<double> dense_multiply(const std::vector<double>& a, const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += a[r * n + c] * x[c];
        y[r] = s;
    }
    return y;
}

double d0_high_precision(double q, double area) {
    using big = boost::multiprecision::cpp_bin_float_50;
    const big Q(q);
    const big pi = boost::math::constants::pi<big>();
    const big first = (2 * pi) / ((Q + 2) * (Q + 3));
    const big inner = first * first * pow(big(6) / (7 * pi), Q + 1);
    return static_cast<double>(big(area) * pow(inner, 1 / (Q - 1)));
}

double sine_integral(double x) { return gsl_sf_Si(x); }

Jacobi jacobi(double u, double m) {
    if (m >= 0.0 && m <= 1.0) {
        gsl_set_error_handler_off();
        Jacobi j{};
        if (gsl_sf_elljac_e(u, m, &j.sn, &j.cn, &j.dn) != GSL_SUCCESS) {
            throw std::runtime_error("gsl_sf_elljac_e failed");
        }
        return j;
    }
    if (m > 1.0) {
        Jacobi j{};
        j.sn = boost::math::jacobi_elliptic(std::sqrt(m), u, &j.cn, &j.dn);
        return j;
    }
    throw std::invalid_argument("jacobi oracle: m < 0 not covered; use tabulated values");
}

}  // namespace oracle
