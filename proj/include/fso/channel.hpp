#ifndef FSO_CHANNEL_HPP
#define FSO_CHANNEL_HPP

#include <string>
#include <utility>
#include <vector>

namespace fso {

// Physical description of one optical path, spherical-wave propagation.
struct AtmosphericLink {
    double cn2 = 0.0;         // refractive-index structure constant, m^(-2/3)
    double wavelength = 0.0;  // m
    double distance = 0.0;    // m
    double aperture = 0.0;    // receiver aperture diameter, m

    void validate() const;                       // throws std::domain_error
    std::vector<std::string> warnings() const;   // soft range warnings (cn2 span)
    double wavenumber() const;                   // 2*pi / wavelength
};

// One gamma-gamma fading law: small-scale shape a, large-scale shape b,
// mean irradiance omega.
struct GammaGammaParams {
    double a = 0.0;
    double b = 0.0;
    double omega = 1.0;

    void validate() const;
};

// sigma_2^2 = 0.492 Cn^2 k^(7/6) L^(11/6)
double rytov_variance(const AtmosphericLink& link);

// (a, b) shape parameters from the spherical-wave scintillation model.
std::pair<double, double> gg_shape_params(const AtmosphericLink& link);

// 1/a + 1/b + 1/(a b)
double scintillation_index(double a, double b);

// Gamma-gamma density; 0 for x <= 0.
double gg_pdf(double x, const GammaGammaParams& p);
double log_gg_pdf(double x, const GammaGammaParams& p);

// q-th moment; requires q > -min(a, b).
double gg_moment(double q, const GammaGammaParams& p);

} // namespace fso

#endif
