#include "fso/channel.hpp"
#include "fso/errors.hpp"
#include "fso/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fso {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;
}

void AtmosphericLink::validate() const {
    if (!(cn2 > 0.0)) throw std::domain_error("AtmosphericLink: cn2 must be > 0");
    if (!(wavelength > 0.0)) throw std::domain_error("AtmosphericLink: wavelength must be > 0");
    if (!(distance > 0.0)) throw std::domain_error("AtmosphericLink: distance must be > 0");
    if (!(aperture > 0.0)) throw std::domain_error("AtmosphericLink: aperture must be > 0");
}

std::vector<std::string> AtmosphericLink::warnings() const {
    std::vector<std::string> w;
    if (cn2 < 1e-17 || cn2 > 1e-13)
        w.push_back("cn2 = " + std::to_string(cn2) +
                    " outside the weak-to-strong span [1e-17, 1e-13] m^(-2/3)");
    return w;
}

double AtmosphericLink::wavenumber() const { return kTwoPi / wavelength; }

void GammaGammaParams::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(omega > 0.0))
        throw std::domain_error("GammaGammaParams: a, b, omega must all be > 0");
}

double rytov_variance(const AtmosphericLink& link) {
    link.validate();
    const double k = link.wavenumber();
    return 0.492 * link.cn2 * std::pow(k, 7.0 / 6.0) * std::pow(link.distance, 11.0 / 6.0);
}

std::pair<double, double> gg_shape_params(const AtmosphericLink& link) {
    link.validate();
    const double s2 = rytov_variance(link);
    const double d2 = link.wavenumber() * link.aperture * link.aperture / (4.0 * link.distance);
    const double s125 = std::pow(s2, 6.0 / 5.0);  // sigma_2^(12/5)

    const double xa = 0.49 * s2 / std::pow(1.0 + 0.18 * d2 + 0.56 * s125, 7.0 / 6.0);
    const double xb = 0.51 * s2 * std::pow(1.0 + 0.69 * s125, -5.0 / 6.0) /
                      std::pow(1.0 + 0.9 * d2 + 0.62 * d2 * s125, 5.0 / 6.0);
    if (!(xa < 700.0))
        throw computation_error("gg_shape_params: small-scale exponent overflow, x = " +
                                std::to_string(xa));
    if (!(xb < 700.0))
        throw computation_error("gg_shape_params: large-scale exponent overflow, x = " +
                                std::to_string(xb));
    // expm1 keeps the sigma^2 -> 0 limit finite: a, b ~ 1/x without overflow
    const double a = 1.0 / std::expm1(xa);
    const double b = 1.0 / std::expm1(xb);
    return {a, b};
}

double scintillation_index(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("scintillation_index: a, b must be > 0");
    return 1.0 / a + 1.0 / b + 1.0 / (a * b);
}

double log_gg_pdf(double x, const GammaGammaParams& p) {
    p.validate();
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    const double half = 0.5 * (p.a + p.b);
    const double lx = std::log(x / p.omega);
    return std::log(2.0) + half * std::log(p.a * p.b) - ln_gamma(p.a) - ln_gamma(p.b) -
           std::log(p.omega) + (half - 1.0) * lx +
           log_bessel_k(p.a - p.b, 2.0 * std::sqrt(p.a * p.b * x / p.omega));
}

double gg_pdf(double x, const GammaGammaParams& p) {
    if (!(x > 0.0)) {
        p.validate();
        return 0.0;  // support boundary, by convention
    }
    return std::exp(log_gg_pdf(x, p));
}

double gg_moment(double q, const GammaGammaParams& p) {
    p.validate();
    if (!(p.a + q > 0.0) || !(p.b + q > 0.0))
        throw std::domain_error("gg_moment: gamma argument pole, q = " + std::to_string(q));
    return std::exp(ln_gamma(p.a + q) + ln_gamma(p.b + q) - ln_gamma(p.a) - ln_gamma(p.b) -
                    q * std::log(p.a * p.b / p.omega));
}

} // namespace fso
