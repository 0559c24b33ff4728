#ifndef FSO_ALPHA_MU_HPP
#define FSO_ALPHA_MU_HPP

#include "fso/channel.hpp"

namespace fso {

struct SumMoments {
    double e1 = 0.0;  // E[S]
    double e2 = 0.0;  // E[S^2]
    double e4 = 0.0;  // E[S^4]
};

// Exact moments of S = sum of L i.i.d. gamma-gamma irradiances, by the
// binomial convolution of the per-link integer moments.
SumMoments sum_moments_iid(int links, const GammaGammaParams& p);

struct AlphaMuFit {
    double alpha = 0.0;
    double mu = 0.0;
    double r_hat = 0.0;     // alpha-root mean of the fitted law
    double residual = 0.0;  // max relative residual of the two moment-ratio equations
    SumMoments target;
};

// Fit (alpha, mu, r_hat) to the target moments by damped Newton on the two
// scale-free moment-ratio equations in (log alpha, log mu), with a grid of
// alpha restarts; r_hat follows in closed form. Throws fit_error on failure,
// std::domain_error on infeasible moments.
AlphaMuFit fit_alpha_mu(double e1, double e2, double e4);

// alpha-mu density and CDF of the fitted sum variable.
double alpha_mu_pdf(double r, double alpha, double mu, double r_hat);
double alpha_mu_cdf(double r, double alpha, double mu, double r_hat);

// Density of the electrical SNR gamma = gamma0 * S^2 under the fitted law.
double snr_pdf_iid(double gamma, const AlphaMuFit& fit, double gamma0);
double log_snr_pdf_iid(double gamma, const AlphaMuFit& fit, double gamma0);

} // namespace fso

#endif
