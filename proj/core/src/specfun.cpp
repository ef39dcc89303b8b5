#include "fvspike/specfun.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "fvspike/error.hpp"

namespace fvspike {

namespace {

constexpr double kSeriesLimit = 4.0;

double sine_integral_series(double x) {
    // Si(x) = sum_k (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
    const double x2 = x * x;
    double term = x;  // (-1)^k x^(2k+1) / (2k+1)!
    double sum = x;
    for (int k = 1; k < 60; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double add = term / (2.0 * k + 1.0);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

// Modified Lentz evaluation of E1(ix) for x > 0:
//   E1(z) = e^{-z} / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...)))
// Returns f(x) + i g(x)-style value h with E1(ix) = h.
std::complex<double> expint_e1_imaginary(double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    std::complex<double> b(1.0, x);
    std::complex<double> c(1.0 / tiny, 0.0);
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int n = 2; n < 100000; ++n) {
        const double a = -static_cast<double>((n - 1) * (n - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> delta = c * d;
        h *= delta;
        if (std::abs(delta.real() - 1.0) + std::abs(delta.imag()) < eps) {
            break;
        }
    }
    return h * std::complex<double>(std::cos(x), -std::sin(x));
}

double sine_integral_auxiliary(double x) {
    const std::complex<double> e1 = expint_e1_imaginary(x);
    // E1(ix) = -Ci(x) + i (Si(x) - π/2)
    return std::numbers::pi / 2.0 + e1.imag();
}

// Bulirsch's sncndn for complementary parameter mc = 1 - m > 0, i.e. 0 <= m < 1.
JacobiTriple sncndn_bulirsch(double u, double mc) {
    constexpr int max_levels = 16;
    constexpr double tol = 1e-15;
    std::array<double, max_levels> am{};
    std::array<double, max_levels> bm{};
    int levels = 0;
    double a = 1.0;
    double c = 1.0;
    for (; levels < max_levels; ++levels) {
        am[static_cast<std::size_t>(levels)] = a;
        mc = std::sqrt(mc);
        bm[static_cast<std::size_t>(levels)] = mc;
        c = 0.5 * (a + mc);
        if (!(std::abs(a - mc) > tol * a)) {
            ++levels;
            break;
        }
        mc *= a;
        a = c;
    }
    u *= c;
    JacobiTriple out{std::sin(u), std::cos(u), 1.0};
    if (out.sn != 0.0) {
        double ratio = out.cn / out.sn;
        c *= ratio;
        double dn = 1.0;
        while (levels-- > 0) {
            const double b = am[static_cast<std::size_t>(levels)];
            ratio *= c;
            c *= dn;
            dn = (bm[static_cast<std::size_t>(levels)] + ratio) / (b + ratio);
            ratio = c / b;
        }
        const double mag = 1.0 / std::sqrt(c * c + 1.0);
        out.sn = out.sn < 0.0 ? -mag : mag;
        out.cn = c * out.sn;
        out.dn = dn;
    }
    return out;
}

JacobiTriple jacobi_unit_interval(double u, double m) {
    if (m == 0.0) {
        return {std::sin(u), std::cos(u), 1.0};
    }
    if (m == 1.0) {
        const double sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }
    return sncndn_bulirsch(u, 1.0 - m);
}

}  // namespace

double sine_integral(double x) {
    if (!std::isfinite(x)) {
        throw MathDomainError("sine_integral: non-finite argument");
    }
    const double ax = std::abs(x);
    const double value = ax <= kSeriesLimit ? sine_integral_series(ax) : sine_integral_auxiliary(ax);
    return x < 0.0 ? -value : value;
}

JacobiTriple jacobi_elliptic(double u, double m) {
    if (!std::isfinite(u) || !std::isfinite(m)) {
        throw MathDomainError("jacobi_elliptic: non-finite argument");
    }
    if (m > 1.0) {
        // sn(u|m) = sn(k u | 1/m) / k, cn(u|m) = dn(k u | 1/m), dn(u|m) = cn(k u | 1/m), k = sqrt(m)
        const double k = std::sqrt(m);
        const JacobiTriple r = jacobi_unit_interval(k * u, 1.0 / m);
        return {r.sn / k, r.dn, r.cn};
    }
    if (m < 0.0) {
        // With mu = -m/(1-m), v = u sqrt(1-m):
        // sn(u|m) = sd(v|mu)/sqrt(1-m), cn(u|m) = cd(v|mu), dn(u|m) = nd(v|mu)
        const double scale = std::sqrt(1.0 - m);
        const JacobiTriple r = jacobi_unit_interval(u * scale, -m / (1.0 - m));
        return {r.sn / (r.dn * scale), r.cn / r.dn, 1.0 / r.dn};
    }
    return jacobi_unit_interval(u, m);
}

double jacobi_cd(double u, double m) {
    const JacobiTriple t = jacobi_elliptic(u, m);
    if (std::abs(t.dn) <= 64.0 * std::numeric_limits<double>::epsilon()) {
        throw MathDomainError("jacobi_cd: dn(" + std::to_string(u) + ", " + std::to_string(m) + ") vanishes");
    }
    return t.cn / t.dn;
}

}  // namespace fvspike
