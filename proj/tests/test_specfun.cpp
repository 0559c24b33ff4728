#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fso/quadrature.hpp"
#include "fso/specfun.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace fso;

namespace {

// ascending-series oracle for integer-order K, independent of the Temme/CF2
// path: K0, K1 from the A&S series, higher orders by forward recurrence
double bessel_i_series(int n, double x) {
    double term = std::pow(0.5 * x, n) / std::tgamma(n + 1.0);
    double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= 0.25 * x * x / (k * (n + k));
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return sum;
}

double bessel_k0_series(double x) {
    // K0 = -(ln(x/2) + gamma) I0 + sum_{k>=1} (x^2/4)^k / (k!)^2 * H_k
    const double lx = std::log(0.5 * x) + kEulerGamma;
    double term = 1.0, hk = 0.0, sum = 0.0;
    for (int k = 1; k < 400; ++k) {
        term *= 0.25 * x * x / (k * k);
        hk += 1.0 / k;
        sum += term * hk;
        if (term * hk < std::abs(sum) * 1e-18 && k > 3) break;
    }
    return -lx * bessel_i_series(0, x) + sum;
}

double bessel_k1_series(double x) {
    // from the Wronskian K1 = (1/x - I1 K0) / I0
    return (1.0 / x - bessel_i_series(1, x) * bessel_k0_series(x)) / bessel_i_series(0, x);
}

double bessel_k_int_oracle(int n, double x) {
    double km = bessel_k0_series(x), k1 = bessel_k1_series(x);
    if (n == 0) return km;
    for (int j = 1; j < n; ++j) {
        const double kn = km + 2.0 * j / x * k1;
        km = k1;
        k1 = kn;
    }
    return k1;
}

} // namespace

TEST_CASE("real log-gamma basics") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_gamma(0.5) == doctest::Approx(0.5723649429247000870717136).epsilon(1e-13));
    CHECK(ln_gamma(10.0) == doctest::Approx(std::lgamma(10.0)).epsilon(1e-14));
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-2.0), std::domain_error);
}

TEST_CASE("complex log-gamma at reference points") {
    CHECK(ln_gamma(std::complex<double>(1.0, 0.0)).real() == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(std::abs(ln_gamma(std::complex<double>(1.0, 0.0)).imag()) < 1e-14);
    // 50-digit reference: lgamma(3+4i) = -1.7566267846037841105... + 4.7426644380346579282...i
    const auto z = ln_gamma(std::complex<double>(3.0, 4.0));
    CHECK(z.real() == doctest::Approx(-1.7566267846037841105).epsilon(1e-12));
    CHECK(z.imag() == doctest::Approx(4.7426644380346579282).epsilon(1e-12));
    CHECK_THROWS_AS(ln_gamma(std::complex<double>(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("complex log-gamma recurrence property") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ure(1e-6, 20.0), uim(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const std::complex<double> z(ure(rng), uim(rng));
        const std::complex<double> lhs = std::exp(ln_gamma(z + 1.0));
        const std::complex<double> rhs = z * std::exp(ln_gamma(z));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
}

TEST_CASE("complex log-gamma reflection region") {
    // exp of the result must match Gamma(z) computed from the recurrence
    const std::complex<double> z(-2.3, 1.7);
    const std::complex<double> g = std::exp(ln_gamma(z));
    // Gamma(z) = Gamma(z+4) / (z (z+1) (z+2) (z+3))
    const std::complex<double> ref =
        std::exp(ln_gamma(z + 4.0)) / (z * (z + 1.0) * (z + 2.0) * (z + 3.0));
    CHECK(std::abs(g - ref) <= 1e-11 * std::abs(ref));
}

TEST_CASE("digamma values") {
    CHECK(digamma(1.0) == doctest::Approx(-0.57721566490153286061).epsilon(1e-13));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - 0.57721566490153286061).epsilon(1e-13));
    // high-precision asymptotic-series reference
    CHECK(digamma(7.37) == doctest::Approx(1.9280436949349920334).epsilon(1e-13));
    CHECK_THROWS_AS(digamma(0.0), std::domain_error);
    CHECK_THROWS_AS(digamma(-1.5), std::domain_error);
}

TEST_CASE("digamma absolute accuracy across the range") {
    // psi(2x) = (psi(x) + psi(x+1/2))/2 + ln 2 [duplication]; checks consistency
    for (double x : {1e-3, 0.02, 0.3, 1.7, 12.0, 310.0, 1e3}) {
        const double lhs = digamma(2.0 * x);
        const double rhs = 0.5 * (digamma(x) + digamma(x + 0.5)) + std::log(2.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(5e-13));
    }
}

TEST_CASE("bessel K half-integer closed form and symmetry") {
    CHECK(bessel_k(0.5, 2.0) ==
          doctest::Approx(std::sqrt(3.14159265358979324 / 4.0) * std::exp(-2.0)).epsilon(1e-12));
    CHECK(bessel_k(2.3, 5.0) == doctest::Approx(bessel_k(-2.3, 5.0)).epsilon(1e-14));
    CHECK(bessel_k(2.3, 5.0) == doctest::Approx(0.0059613503174411024171).epsilon(1e-11));
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(1.0, -3.0), std::domain_error);
}

TEST_CASE("bessel K integer orders against the series oracle") {
    for (int n : {0, 1, 2, 3, 5, 8}) {
        for (double x : {0.3, 1.0, 1.9, 2.5, 4.0}) {
            const double oracle = bessel_k_int_oracle(n, x);
            CHECK(bessel_k(n, x) == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
    CHECK(bessel_k(3.0, 1.0) == doctest::Approx(7.101262824737944506).epsilon(1e-11));
}

TEST_CASE("bessel K defining integral property") {
    // K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unu(0.0, 5.0), ux(0.1, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double nu = unu(rng), x = ux(rng);
        double tmax = 2.0;
        while (x * std::cosh(tmax) - nu * tmax < 750.0 && tmax < 60.0) tmax += 1.0;
        const QuadResult q = integrate(
            [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); }, 0.0, tmax,
            1e-14, 1e-12, 4000);
        const double val = bessel_k(nu, x);
        CHECK(val == doctest::Approx(q.value).epsilon(1e-8));
    }
}

TEST_CASE("bessel K scaled / log variants and underflow") {
    CHECK(bessel_k_scaled(1.3, 700.0) ==
          doctest::Approx(std::exp(log_bessel_k(1.3, 700.0) + 700.0)).epsilon(1e-12));
    // log variant stays finite far past the underflow point
    CHECK(std::isfinite(log_bessel_k(0.7, 2000.0)));
    const BesselKResult r = bessel_k_checked(0.5, 800.0);
    CHECK(r.underflowed);
    CHECK(r.value == 0.0);
    const BesselKResult ok = bessel_k_checked(0.5, 10.0);
    CHECK(!ok.underflowed);
    // relative accuracy near the top of the range, via the half-integer closed form
    const double k_exact = std::sqrt(3.14159265358979324 / (2.0 * 700.0)) * std::exp(-700.0);
    CHECK(bessel_k(0.5, 700.0) == doctest::Approx(k_exact).epsilon(1e-10));
    CHECK(bessel_k(0.5, 1e-6) ==
          doctest::Approx(std::sqrt(3.14159265358979324 / (2.0 * 1e-6)) * std::exp(-1e-6))
              .epsilon(1e-10));
}

TEST_CASE("regularized incomplete gamma") {
    CHECK(gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
    CHECK(gamma_p(2.5, 0.0) == 0.0);
    CHECK(gamma_p(2.5, 1e3) == doctest::Approx(1.0).epsilon(1e-13));
    // against quadrature of the density
    for (double a : {0.7, 2.0, 9.3}) {
        for (double x : {0.2, 1.0, 3.7, 12.0}) {
            const QuadResult q = integrate(
                [&](double t) {
                    return std::exp((a - 1.0) * std::log(t) - t - ln_gamma(a));
                },
                0.0, x, 1e-14, 1e-13, 4000);
            CHECK(gamma_p(a, x) == doctest::Approx(q.value).epsilon(1e-10));
        }
    }
}
