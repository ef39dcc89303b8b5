#pragma once

namespace fvspike {

/// Jacobi elliptic functions at a given argument and parameter m.
struct JacobiTriple {
    double sn = 0.0;
    double cn = 1.0;
    double dn = 1.0;
};

/// Sine integral Si(x) = ∫_0^x sin(t)/t dt.
///
/// Power series for |x| <= 4, auxiliary functions f, g (Si = π/2 - f cos x - g sin x) beyond,
/// with f + i g obtained from the continued fraction of E1(ix). Absolute error below 1e-13 on
/// |x| <= 1e4. Throws MathDomainError for non-finite x.
[[nodiscard]] double sine_integral(double x);

/// sn, cn, dn of argument u and parameter m (m = k^2), for any real m.
///
/// 0 <= m < 1 uses the descending Landen / AGM scale; m = 0 and m = 1 return the
/// trigonometric and hyperbolic limits exactly; m > 1 is reduced through the reciprocal
/// parameter 1/m and m < 0 through the imaginary-modulus transformation to -m/(1-m).
[[nodiscard]] JacobiTriple jacobi_elliptic(double u, double m);

/// cd(u, m) = cn(u, m) / dn(u, m). Throws MathDomainError if |dn| is within 64 ulp of zero.
[[nodiscard]] double jacobi_cd(double u, double m);

}  // namespace fvspike
