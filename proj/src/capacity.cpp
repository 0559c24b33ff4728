#include "fso/capacity.hpp"
#include "fso/errors.hpp"
#include "fso/quadrature.hpp"
#include "fso/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fso {

namespace {
constexpr double kLn2 = 0.69314718055994530941723212145817657;
constexpr double kFourPi = 12.5663706143591729538505735331180115;
}

double gamma0(int tx, int rx, double eta, double rho) {
    if (tx < 1 || rx < 1) throw std::domain_error("gamma0: M, N must be >= 1");
    if (!(eta > 0.0) || !(rho > 0.0)) throw std::domain_error("gamma0: eta, rho must be > 0");
    const double mn = double(tx) * rx;
    return eta * eta * rho / (mn * mn);
}

const char* method_name(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::closed_form: return "closed_form";
        case Method::high_snr: return "high_snr";
        case Method::monte_carlo: return "monte_carlo";
        case Method::awgn: return "awgn";
    }
    return "?";
}

namespace {

// breakpoints in t = ln(gamma): coarse cover of (e^-60, e^700), the mandated
// split at gamma = 1 (t = 0), and panels nested around a peak hint so the
// Kronrod center node lands on narrow densities
std::vector<double> log_breakpoints(double scale_hint) {
    std::vector<double> pts;
    for (double t = -60.0; t <= 700.0 + 1e-9; t += 2.0) pts.push_back(t);
    if (std::isfinite(scale_hint) && scale_hint > 0.0) {
        const double t0 = std::log(scale_hint);
        for (double w : {0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
            pts.push_back(t0 - w);
            pts.push_back(t0 + w);
        }
    }
    pts.push_back(0.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              pts.end());
    return pts;
}

// piecewise adaptive integral of h(e^t) e^t dt over the breakpoint cells,
// skipping cells with no visible mass
QuadResult piecewise_log_integral(const std::function<double(double)>& h,
                                  const std::vector<double>& pts, double abs_tol) {
    const size_t n = pts.size();
    std::vector<double> probe(n);
    auto g = [&](double t) {
        const double x = std::exp(t);
        return h(x) * x;
    };
    double peak = 0.0;
    for (size_t i = 0; i < n; ++i) {
        probe[i] = std::abs(g(pts[i]));
        peak = std::max(peak, probe[i]);
    }
    QuadResult out;
    out.converged = true;
    const double floor_level = peak * 1e-17;
    for (size_t i = 0; i + 1 < n; ++i) {
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        const double pm = std::abs(g(mid));
        peak = std::max(peak, pm);
        if (probe[i] <= floor_level && probe[i + 1] <= floor_level && pm <= floor_level) continue;
        const QuadResult cell = integrate(g, pts[i], pts[i + 1], abs_tol / 8.0, 1e-12);
        out.value += cell.value;
        out.error += cell.error;
        out.evaluations += cell.evaluations;
        out.converged = out.converged && cell.converged;
    }
    return out;
}

} // namespace

CapacityPoint capacity_quadrature(const std::function<double(double)>& snr_pdf, double tolerance,
                                  double scale_hint) {
    const std::vector<double> pts = log_breakpoints(scale_hint);
    // normalization audit
    const QuadResult mass = piecewise_log_integral(snr_pdf, pts, 1e-8);
    if (std::abs(mass.value - 1.0) > 1e-3)
        throw computation_error("capacity_quadrature: density integrates to " +
                                std::to_string(mass.value) + ", not 1 (audit failed)");

    auto weighted = [&](double gamma) { return std::log1p(gamma) * snr_pdf(gamma); };
    const QuadResult cap = piecewise_log_integral(weighted, pts, tolerance * kLn2);
    if (!cap.converged)
        throw convergence_error("capacity_quadrature: integral did not converge",
                                cap.value / kLn2, (cap.value - cap.error) / kLn2);
    CapacityPoint out;
    out.capacity_bits = cap.value / kLn2;
    out.method = Method::quadrature;
    out.err_estimate = cap.error / kLn2 + std::abs(mass.value - 1.0) * std::abs(out.capacity_bits);
    return out;
}

CapacityPoint capacity_iid_closed(const AlphaMuFit& fit, double gamma0, const ContourConfig& cfg) {
    if (!(gamma0 > 0.0)) throw std::domain_error("capacity_iid_closed: gamma0 must be > 0");
    // kernel G(1-s) G(s)^2 G(mu + (2/alpha) s) / (G(1+s) G(mu)) * z^s,
    // z = r_hat^2 gamma0 / mu^(2/alpha)
    MellinBarnesSpec spec;
    spec.sign_terms = {{1.0, 1.0}};
    spec.numerator_terms = {{0.0, 1.0}, {0.0, 1.0}, {fit.mu, 2.0 / fit.alpha}};
    spec.denominator_terms = {{1.0, 1.0}, {fit.mu, 0.0}};
    spec.argument_exponent = +1;
    const double z = fit.r_hat * fit.r_hat * gamma0 / std::pow(fit.mu, 2.0 / fit.alpha);
    CapacityPoint out;
    out.capacity_bits = mellin_barnes_eval(spec, z, cfg) / kLn2;
    out.method = Method::closed_form;
    out.err_estimate = cfg.tolerance;
    return out;
}

CapacityPoint capacity_inid_closed(const WeightTable& wt, double gamma0,
                                   const ContourConfig& cfg) {
    if (!(gamma0 > 0.0)) throw std::domain_error("capacity_inid_closed: gamma0 must be > 0");
    const InidChannelSet& ch = wt.context;
    const int L = ch.links();
    const double Lk = static_cast<double>(L) * ch.k;
    double acc = 0.0;
    for (int i = 0; i < L; ++i) {
        const double z = Lk * ch.m[i] / (ch.omega[i] * std::sqrt(gamma0));
        const double y = z * z / 16.0;
        for (int j = 1; j <= ch.m[i]; ++j) {
            const double wij = wt.at(i + 1, j);
            if (wij == 0.0) continue;
            const double u = 0.25 * (Lk + j);
            const double v = Lk - j;
            // G^{6,1}_{2,6}( y | -u, 1-u ; v/4, (v+2)/4, -v/4, -(v-2)/4, -u, -u )
            // with 1/(Gamma(Lk) Gamma(j)) and z^{2u} folded into the kernel
            MellinBarnesSpec spec;
            spec.numerator_terms = {{1.0 + u, 1.0}};
            spec.sign_terms = {{0.25 * v, 1.0},  {0.25 * (v + 2.0), 1.0}, {-0.25 * v, 1.0},
                               {-0.25 * (v - 2.0), 1.0}, {-u, 1.0},       {-u, 1.0}};
            spec.denominator_terms = {{1.0 - u, -1.0}, {Lk, 0.0}, {static_cast<double>(j), 0.0}};
            spec.argument_exponent = +1;
            spec.log_prefactor = 2.0 * u * std::log(z);
            double term;
            try {
                term = mellin_barnes_eval(spec, y, cfg);
            } catch (const convergence_error&) {
                throw;
            } catch (const std::exception& e) {
                throw computation_error("capacity_inid_closed: term (i=" + std::to_string(i + 1) +
                                        ", j=" + std::to_string(j) + ") failed: " + e.what());
            }
            if (!std::isfinite(term))
                throw computation_error("capacity_inid_closed: term overflow at (i=" +
                                        std::to_string(i + 1) + ", j=" + std::to_string(j) + ")");
            acc += wij * term / kFourPi;
        }
    }
    CapacityPoint out;
    out.capacity_bits = acc / kLn2;
    out.method = Method::closed_form;
    out.err_estimate = cfg.tolerance * std::max(1.0, wt.max_abs_weight * 1e-3);
    return out;
}

CapacityPoint capacity_iid_highsnr(const AlphaMuFit& fit, double gamma0) {
    if (!(gamma0 > 0.0)) throw std::domain_error("capacity_iid_highsnr: gamma0 must be > 0");
    CapacityPoint out;
    out.capacity_bits = 2.0 / (fit.alpha * kLn2) *
                        (digamma(fit.mu) - std::log(fit.mu) + fit.alpha * std::log(fit.r_hat) +
                         0.5 * fit.alpha * std::log(gamma0));
    out.method = Method::high_snr;
    return out;
}

CapacityPoint capacity_inid_highsnr(const WeightTable& wt, double gamma0) {
    if (!(gamma0 > 0.0)) throw std::domain_error("capacity_inid_highsnr: gamma0 must be > 0");
    const InidChannelSet& ch = wt.context;
    const double Lk = static_cast<double>(ch.links()) * ch.k;
    const double psi_lk = digamma(Lk);
    double acc = 0.0;
    for (int i = 0; i < ch.links(); ++i)
        for (int j = 1; j <= ch.m[i]; ++j)
            acc += wt.at(i + 1, j) * (psi_lk + digamma(j) - std::log(Lk * ch.m[i]) +
                                      std::log(ch.omega[i] * std::sqrt(gamma0)));
    CapacityPoint out;
    out.capacity_bits = 2.0 / kLn2 * acc;
    out.method = Method::high_snr;
    return out;
}

double awgn_capacity(double snr) {
    if (snr < 0.0) throw std::domain_error("awgn_capacity: snr must be >= 0");
    return std::log1p(snr) / kLn2;
}

} // namespace fso
