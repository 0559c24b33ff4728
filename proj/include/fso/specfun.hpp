#ifndef FSO_SPECFUN_HPP
#define FSO_SPECFUN_HPP

#include <complex>

namespace fso {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Principal-branch log-gamma for real x > 0. Throws std::domain_error at poles.
double ln_gamma(double x);

// Principal-branch complex log-gamma. Lanczos on Re z > 0, reflection otherwise.
// Relative accuracy ~1e-14 for |z| <= 100.
std::complex<double> ln_gamma(std::complex<double> z);

// psi(x) for x > 0, absolute error <~ 1e-13 on [1e-3, 1e3].
double digamma(double x);

struct BesselKResult {
    double value = 0.0;
    bool underflowed = false;  // true result nonzero but below double range; value set to 0
};

// Modified Bessel function of the second kind, real order. Requires x > 0.
// Symmetric in nu. Relative error <~ 1e-12 for x in [1e-6, 700].
BesselKResult bessel_k_checked(double nu, double x);
double bessel_k(double nu, double x);

// exp(x) * K_nu(x); safe for large x where K itself underflows.
double bessel_k_scaled(double nu, double x);

// log K_nu(x); usable far past the underflow point of K itself.
double log_bessel_k(double nu, double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a), a > 0, x >= 0.
double gamma_p(double a, double x);

} // namespace fso

#endif
