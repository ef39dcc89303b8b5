#pragma once

// Independent reference implementations used only by the test suites.

#include <cstddef>
#include <vector>

namespace oracle {

/// Residual of the finite-volume system on an n x n grid (n = 2 or 3), spelled out cell by
/// cell: four corners, four edges, one interior case. u is in single-index order.
std::vector<double> fv_residual_by_case(int n, double hx, double hy, double d, double q, const std::vector<double>& u);

/// Same system in the uniform matrix form with bases a = h^2 + 2d, b = h^2 + 3d, c = h^2 + 4d,
/// assembled row by row from a dense coefficient matrix.
std::vector<double> uniform_matrix_residual(int n, double h, double d, double q, const std::vector<double>& u);

/// Row-major dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b);

/// Dense y = A x, row-major.
std::vector<double> dense_multiply(const std::vector<double>& a, const std::vector<double>& x);

/// d0 evaluated with 50 decimal digits.
double d0_high_precision(double q, double area);

/// Si(x) from GSL.
double sine_integral(double x);

struct Jacobi {
    double sn;
    double cn;
    double dn;
};

/// sn, cn, dn at parameter m: GSL for 0 <= m <= 1, Boost (modulus sqrt(m)) for m > 1.
Jacobi jacobi(double u, double m);

}  // namespace oracle
