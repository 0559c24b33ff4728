#include "fso/alpha_mu.hpp"
#include "fso/errors.hpp"
#include "fso/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fso {

SumMoments sum_moments_iid(int links, const GammaGammaParams& p) {
    if (links < 1) throw std::domain_error("sum_moments_iid: need links >= 1");
    p.validate();
    std::array<double, 5> m{};  // per-link integer moments 0..4
    for (int q = 0; q <= 4; ++q) m[q] = gg_moment(static_cast<double>(q), p);
    static const int choose[5][5] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    std::array<double, 5> cur{1.0, 0.0, 0.0, 0.0, 0.0};  // moments of the running partial sum
    for (int l = 0; l < links; ++l) {
        std::array<double, 5> nxt{};
        for (int q = 0; q <= 4; ++q) {
            double acc = 0.0;
            for (int j = 0; j <= q; ++j) acc += choose[q][j] * cur[q - j] * m[j];
            nxt[q] = acc;
        }
        cur = nxt;
    }
    return {cur[1], cur[2], cur[4]};
}

namespace {

// g1 = Gamma^2(mu+1/a) / (Gamma(mu) Gamma(mu+2/a) - Gamma^2(mu+1/a)), and the
// analogous g2 with doubled orders; both evaluated as g/(1-g) with
// g = exp(2 lnG(mu+q/a) - lnG(mu) - lnG(mu+2q/a)) and expm1 for the
// denominator, which stays exact as g -> 1 (near-deterministic channels).
double moment_ratio(double alpha, double mu, int q) {
    const double lg = 2.0 * ln_gamma(mu + q / alpha) - ln_gamma(mu) -
                      ln_gamma(mu + 2.0 * q / alpha);
    // lg <= 0 by log-convexity; expm1 keeps 1-g exact as g -> 1
    return std::exp(lg) / (-std::expm1(lg));
}

struct Residual {
    double f1, f2;
    double norm() const { return std::max(std::abs(f1), std::abs(f2)); }
};

Residual eval_residual(double la, double lm, double lt1, double lt2) {
    const double alpha = std::exp(la), mu = std::exp(lm);
    return {std::log(moment_ratio(alpha, mu, 1)) - lt1,
            std::log(moment_ratio(alpha, mu, 2)) - lt2};
}

} // namespace

AlphaMuFit fit_alpha_mu(double e1, double e2, double e4) {
    if (!(e1 > 0.0) || !(e2 > 0.0) || !(e4 > 0.0))
        throw std::domain_error("fit_alpha_mu: moments must be positive");
    const double v2 = e2 - e1 * e1;
    const double v4 = e4 - e2 * e2;
    if (!(v2 > 1e-14 * e1 * e1) || !(v4 > 0.0))
        throw std::domain_error("fit_alpha_mu: infeasible moments (degenerate distribution)");
    const double t1 = e1 * e1 / v2;
    const double t2 = e2 * e2 / v4;
    const double lt1 = std::log(t1), lt2 = std::log(t2);

    const double mu_start = std::log(std::max(t1, 1e-3));
    constexpr double kTol = 1e-12;
    double best_la = 0.0, best_lm = mu_start, best_norm = std::numeric_limits<double>::infinity();

    for (double alpha0 : {1.0, 0.5, 1.5, 2.0, 3.0, 4.0}) {
        double la = std::log(alpha0), lm = mu_start;
        Residual r;
        try {
            r = eval_residual(la, lm, lt1, lt2);
        } catch (const std::exception&) {
            continue;
        }
        bool ok = true;
        for (int it = 0; it < 80 && ok; ++it) {
            if (r.norm() <= kTol) break;
            // numerically differentiated Jacobian in the log variables
            const double h = 1e-7;
            Residual ra, rm;
            try {
                ra = eval_residual(la + h, lm, lt1, lt2);
                rm = eval_residual(la, lm + h, lt1, lt2);
            } catch (const std::exception&) {
                ok = false;
                break;
            }
            const double j11 = (ra.f1 - r.f1) / h, j12 = (rm.f1 - r.f1) / h;
            const double j21 = (ra.f2 - r.f2) / h, j22 = (rm.f2 - r.f2) / h;
            const double det = j11 * j22 - j12 * j21;
            if (!(std::abs(det) > 1e-300)) {
                ok = false;
                break;
            }
            double da = -(j22 * r.f1 - j12 * r.f2) / det;
            double dm = -(-j21 * r.f1 + j11 * r.f2) / det;
            const double cap = 2.0;  // trust step in log space
            const double len = std::max(std::abs(da), std::abs(dm));
            if (len > cap) {
                da *= cap / len;
                dm *= cap / len;
            }
            double step = 1.0;
            bool improved = false;
            for (int back = 0; back < 40; ++back) {
                try {
                    const Residual rt = eval_residual(la + step * da, lm + step * dm, lt1, lt2);
                    if (rt.norm() < r.norm()) {
                        la += step * da;
                        lm += step * dm;
                        r = rt;
                        improved = true;
                        break;
                    }
                } catch (const std::exception&) {
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        if (ok && r.norm() < best_norm) {
            best_norm = r.norm();
            best_la = la;
            best_lm = lm;
            if (best_norm <= kTol) break;
        }
    }

    if (!(best_norm <= 1e-10))
        throw fit_error("fit_alpha_mu: solver did not reach residual 1e-10",
                        std::exp(best_la), std::exp(best_lm), best_norm);

    AlphaMuFit fit;
    fit.alpha = std::exp(best_la);
    fit.mu = std::exp(best_lm);
    fit.r_hat = std::pow(fit.mu, 1.0 / fit.alpha) *
                std::exp(ln_gamma(fit.mu) - ln_gamma(fit.mu + 1.0 / fit.alpha)) * e1;
    fit.residual = best_norm;
    fit.target = {e1, e2, e4};
    return fit;
}

double alpha_mu_pdf(double r, double alpha, double mu, double r_hat) {
    if (!(r > 0.0)) return 0.0;
    const double t = std::pow(r / r_hat, alpha);
    return std::exp(std::log(alpha) + mu * std::log(mu) + (alpha * mu - 1.0) * std::log(r) -
                    alpha * mu * std::log(r_hat) - ln_gamma(mu) - mu * t);
}

double alpha_mu_cdf(double r, double alpha, double mu, double r_hat) {
    if (!(r > 0.0)) return 0.0;
    return gamma_p(mu, mu * std::pow(r / r_hat, alpha));
}

double log_snr_pdf_iid(double gamma, const AlphaMuFit& fit, double gamma0) {
    if (!(gamma0 > 0.0)) throw std::domain_error("snr_pdf_iid: gamma0 must be > 0");
    if (!(gamma > 0.0)) return -std::numeric_limits<double>::infinity();
    const double am = fit.alpha * fit.mu;
    return std::log(fit.alpha) + fit.mu * std::log(fit.mu) + (0.5 * am - 1.0) * std::log(gamma) -
           std::log(2.0) - 0.5 * am * std::log(gamma0) - am * std::log(fit.r_hat) -
           ln_gamma(fit.mu) -
           fit.mu * std::pow(gamma / gamma0, 0.5 * fit.alpha) / std::pow(fit.r_hat, fit.alpha);
}

double snr_pdf_iid(double gamma, const AlphaMuFit& fit, double gamma0) {
    if (!(gamma > 0.0)) return 0.0;
    return std::exp(log_snr_pdf_iid(gamma, fit, gamma0));
}

} // namespace fso
