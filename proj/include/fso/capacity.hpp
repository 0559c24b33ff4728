#ifndef FSO_CAPACITY_HPP
#define FSO_CAPACITY_HPP

#include "fso/alpha_mu.hpp"
#include "fso/gg_mixture.hpp"
#include "fso/mellin_barnes.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace fso {

// Transmit-side SNR bookkeeping: gamma0 = eta^2 rho / (M N)^2.
struct SnrContext {
    int tx = 1;        // M
    int rx = 1;        // N
    double eta = 1.0;  // optical-to-electrical conversion coefficient
    double rho = 1.0;  // transmit SNR, linear

    double gamma0() const { return eta * eta * rho / (double(tx) * rx * double(tx) * rx); }
    int links() const { return tx * rx; }
};

double gamma0(int tx, int rx, double eta, double rho);

enum class Method { quadrature, closed_form, high_snr, monte_carlo, awgn };
const char* method_name(Method m);

struct CapacityPoint {
    double rho_db = std::nan("");   // sweep coordinate, filled by the caller
    double capacity_bits = 0.0;     // bits/s/Hz
    Method method = Method::quadrature;
    double err_estimate = 0.0;
};

// Int_0^inf log2(1+g) f(g) dg in log space with the mandated split at g = 1,
// piecewise-adaptive over breakpoints; scale_hint (approximate mean SNR) nests
// extra panels so narrow densities are not missed. Audits that f integrates
// to 1 within 1e-3 first.
CapacityPoint capacity_quadrature(const std::function<double(double)>& snr_pdf,
                                  double tolerance = 1e-9,
                                  double scale_hint = std::nan(""));

// Closed form for the alpha-mu SNR law via the Mellin-Barnes contour; the
// 1/Gamma(mu) prefactor is folded into the kernel.
CapacityPoint capacity_iid_closed(const AlphaMuFit& fit, double gamma0,
                                  const ContourConfig& cfg = {});

// Closed form for the nested gamma-gamma mixture; one contour term per (i, j)
// with the constants and z^{2u} prefactor folded into the kernel.
CapacityPoint capacity_inid_closed(const WeightTable& wt, double gamma0,
                                   const ContourConfig& cfg = {});

// High-SNR asymptotics.
CapacityPoint capacity_iid_highsnr(const AlphaMuFit& fit, double gamma0);
CapacityPoint capacity_inid_highsnr(const WeightTable& wt, double gamma0);

// log2(1 + snr)
double awgn_capacity(double snr);

} // namespace fso

#endif
