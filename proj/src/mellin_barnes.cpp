#include "fso/mellin_barnes.hpp"
#include "fso/errors.hpp"
#include "fso/quadrature.hpp"
#include "fso/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace fso {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

void validate_terms(const MellinBarnesSpec& spec) {
    auto finite_nonzero = [](const GammaTerm& t) {
        return std::isfinite(t.offset) && std::isfinite(t.scale) && t.scale != 0.0;
    };
    for (const auto& t : spec.numerator_terms)
        if (!finite_nonzero(t) || t.scale < 0.0)
            throw config_error("mellin_barnes: numerator term needs finite offset and scale > 0");
    for (const auto& t : spec.sign_terms)
        if (!finite_nonzero(t) || t.scale < 0.0)
            throw config_error("mellin_barnes: sign term needs finite offset and scale > 0");
    for (const auto& t : spec.denominator_terms)
        if (!std::isfinite(t.offset) || !std::isfinite(t.scale))
            throw config_error("mellin_barnes: denominator term not finite");
    if (spec.argument_exponent != 1 && spec.argument_exponent != -1)
        throw config_error("mellin_barnes: argument_exponent must be +1 or -1");
}

} // namespace

PoleGap pole_gap(const MellinBarnesSpec& spec) {
    validate_terms(spec);
    PoleGap gap;
    for (const auto& t : spec.numerator_terms) {
        const double rightmost = -t.offset / t.scale;
        if (std::isnan(gap.left) || rightmost > gap.left) gap.left = rightmost;
    }
    for (const auto& t : spec.sign_terms) {
        const double leftmost = t.offset / t.scale;
        if (std::isnan(gap.right) || leftmost < gap.right) gap.right = leftmost;
    }
    if (!std::isnan(gap.left) && !std::isnan(gap.right) && !(gap.left < gap.right))
        throw config_error("mellin_barnes: pole families overlap, no separating contour (left " +
                           std::to_string(gap.left) + " >= right " + std::to_string(gap.right) + ")");
    return gap;
}

double auto_abscissa(const MellinBarnesSpec& spec) {
    const PoleGap gap = pole_gap(spec);
    if (!std::isnan(gap.left) && !std::isnan(gap.right)) return 0.5 * (gap.left + gap.right);
    if (!std::isnan(gap.left)) return gap.left + 1.0;
    if (!std::isnan(gap.right)) return gap.right - 1.0;
    throw config_error("mellin_barnes: kernel has no poles on either side");
}

namespace {

std::complex<double> contour_sum(const MellinBarnesSpec& spec, double omega, double lx,
                                 double half_height, int panels) {
    // s = omega + i t; (1/2*pi*i) Int f ds = (1/2*pi) Int f(omega + i t) dt
    std::complex<double> acc(0.0, 0.0);
    const double width = 2.0 * half_height / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = -half_height + p * width;
        const double mid = lo + 0.5 * width;
        std::complex<double> panel(0.0, 0.0);
        for (int q = 0; q < 32; ++q) {
            const double t = mid + 0.5 * width * GaussLegendre32::nodes[q];
            const std::complex<double> s(omega, t);
            std::complex<double> lk(spec.log_prefactor, 0.0);
            for (const auto& g : spec.numerator_terms) lk += ln_gamma(g.offset + g.scale * s);
            for (const auto& g : spec.sign_terms) lk += ln_gamma(g.offset - g.scale * s);
            for (const auto& g : spec.denominator_terms) {
                if (g.scale == 0.0)
                    lk -= ln_gamma(std::complex<double>(g.offset, 0.0));
                else
                    lk -= ln_gamma(g.offset + g.scale * s);
            }
            lk += static_cast<double>(spec.argument_exponent) * s * lx;
            panel += GaussLegendre32::weights[q] * std::exp(lk);
        }
        acc += 0.5 * width * panel;
    }
    return acc / kTwoPi;
}

// nodes-per-unit density needed to resolve the oscillation exp(i t (ln x + sum scale ln|..|))
double oscillation_density(const MellinBarnesSpec& spec, double lx) {
    double freq = std::abs(lx);
    for (const auto& g : spec.numerator_terms) freq += g.scale * std::max(0.0, std::log1p(std::abs(g.offset)));
    for (const auto& g : spec.sign_terms) freq += g.scale * std::max(0.0, std::log1p(std::abs(g.offset)));
    return std::max(16.0, 2.5 * freq);
}

} // namespace

MbResult mellin_barnes_eval_full(const MellinBarnesSpec& spec, double x, const ContourConfig& cfg) {
    if (!(x > 0.0))
        throw std::domain_error("mellin_barnes: requires x > 0");
    if (!(cfg.half_height > 0.0) || cfg.nodes < 64 || !(cfg.tolerance > 0.0))
        throw config_error("mellin_barnes: need half_height > 0, nodes >= 64, tolerance > 0");

    double omega = cfg.omega;
    if (std::isnan(omega)) {
        omega = auto_abscissa(spec);
    } else {
        const PoleGap gap = pole_gap(spec);
        if ((!std::isnan(gap.left) && omega <= gap.left) ||
            (!std::isnan(gap.right) && omega >= gap.right))
            throw config_error("mellin_barnes: abscissa does not separate the pole families");
    }

    const double lx = std::log(x);
    double T = cfg.half_height;
    int nodes = std::max(cfg.nodes,
                         static_cast<int>(std::ceil(oscillation_density(spec, lx) * 2.0 * T / 32.0)) * 32);
    std::complex<double> prev(std::nan(""), 0.0);
    std::complex<double> est;
    MbResult out;
    for (int it = 0; it <= cfg.max_refinements; ++it) {
        est = contour_sum(spec, omega, lx, T, std::max(1, nodes / 32));
        if (!std::isnan(prev.real()) &&
            std::abs(est - prev) <= cfg.tolerance * std::max(1.0, std::abs(est))) {
            out.value = est.real();
            out.imag_residual = std::abs(est.imag());
            out.refinements = it;
            out.half_height = T;
            out.nodes = nodes;
            if (out.imag_residual > cfg.tolerance * std::max(1.0, std::abs(est)) * 100.0)
                throw computation_error("mellin_barnes: imaginary residual " +
                                        std::to_string(out.imag_residual) +
                                        " exceeds sanity bound; kernel likely misconfigured");
            return out;
        }
        prev = est;
        T *= 2.0;
        nodes *= 2;
    }
    throw convergence_error("mellin_barnes: no convergence after max refinements",
                            est.real(), prev.real());
}

double mellin_barnes_eval(const MellinBarnesSpec& spec, double x, const ContourConfig& cfg) {
    return mellin_barnes_eval_full(spec, x, cfg).value;
}

} // namespace fso
