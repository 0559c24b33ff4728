#include "fso/gg_mixture.hpp"
#include "fso/errors.hpp"
#include "fso/quadrature.hpp"
#include "fso/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fso {

namespace {

// pole condition: omega_i m_q != omega_q m_i for all i != q
bool pole_condition_holds(const std::vector<int>& m, const std::vector<double>& om) {
    const int L = static_cast<int>(m.size());
    for (int i = 0; i < L; ++i)
        for (int q = i + 1; q < L; ++q) {
            const double r = (om[q] * m[i]) / (om[i] * m[q]);
            if (std::abs(r - 1.0) < 1e-12) return false;
        }
    return true;
}

} // namespace

void InidChannelSet::validate() const {
    if (k < 1) throw std::domain_error("InidChannelSet: k must be a positive integer");
    if (m.empty() || m.size() != omega.size())
        throw std::domain_error("InidChannelSet: m and omega must be nonempty, equal length");
    for (int mi : m)
        if (mi < 1) throw std::domain_error("InidChannelSet: every m must be a positive integer");
    for (double o : omega)
        if (!(o > 0.0)) throw std::domain_error("InidChannelSet: every omega must be > 0");
    if (!pole_condition_holds(m, omega))
        throw config_error(
            "InidChannelSet: pole condition violated (omega_i m_q == omega_q m_i for some pair); "
            "apply jitter to the omegas");
}

InidAdaptation adapt_links(double a, double b, const std::vector<double>& omegas,
                           double jitter_eps) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("adapt_links: a, b must be > 0");
    InidAdaptation out;
    out.a_real = a;
    out.b_real = b;
    out.channels.k = std::max(1, static_cast<int>(std::lround(a)));
    const int mi = std::max(1, static_cast<int>(std::lround(b)));
    out.channels.m.assign(omegas.size(), mi);
    out.channels.omega = omegas;
    if (out.channels.k != a || mi != b)
        out.notes.push_back("rounded shapes (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                            ") to integers (k=" + std::to_string(out.channels.k) +
                            ", m=" + std::to_string(mi) + ")");
    if (!pole_condition_holds(out.channels.m, out.channels.omega)) {
        for (size_t l = 0; l < out.channels.omega.size(); ++l)
            out.channels.omega[l] *= 1.0 + static_cast<double>(l + 1) * jitter_eps;
        out.jitter_applied = true;
        out.jitter_eps = jitter_eps;
        out.notes.push_back("applied multiplicative jitter eps=" + std::to_string(jitter_eps) +
                            " to the omegas (weight-recursion pole condition)");
        if (!pole_condition_holds(out.channels.m, out.channels.omega))
            throw config_error("adapt_links: pole condition still violated after jitter");
    }
    return out;
}

namespace {

// signed log-domain product for the base weights
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

SignedLog base_weight(int i, const std::vector<int>& m, const std::vector<double>& om) {
    SignedLog acc{0.0, 1};
    const int L = static_cast<int>(m.size());
    for (int j = 0; j < L; ++j) {
        if (j == i) continue;
        const double f = 1.0 - om[j] * m[i] / (om[i] * m[j]);
        if (f == 0.0) throw config_error("compute_weights: pole condition violated");
        acc.log_abs += -m[j] * std::log(std::abs(f));
        if (f < 0.0 && (m[j] % 2 != 0)) acc.sign = -acc.sign;
    }
    return acc;
}

} // namespace

WeightTable compute_weights(const InidChannelSet& ch, bool audit) {
    ch.validate();
    const int L = ch.links();
    WeightTable wt;
    wt.context = ch;
    wt.w.assign(L, {});
    for (int i = 0; i < L; ++i) wt.w[i].assign(ch.m[i], 0.0);

    for (int i = 0; i < L; ++i) {
        const SignedLog base = base_weight(i, ch.m, ch.omega);
        wt.w[i][ch.m[i] - 1] = base.value();
        if (!std::isfinite(wt.w[i][ch.m[i] - 1]))
            throw computation_error("compute_weights: base weight overflow at link " +
                                    std::to_string(i + 1));
        // t-recursion downward from m_i
        for (int t = 1; t <= ch.m[i] - 1; ++t) {
            double acc = 0.0;
            for (int q = 0; q < L; ++q) {
                if (q == i) continue;
                const double f = 1.0 - ch.omega[i] * ch.m[q] / (ch.omega[q] * ch.m[i]);
                double fpow = 1.0;
                for (int j = 1; j <= t; ++j) {
                    fpow /= f;  // (1 - r)^(-j)
                    acc += ch.m[q] * fpow * wt.w[i][ch.m[i] - t + j - 1];
                }
            }
            wt.w[i][ch.m[i] - t - 1] = acc / t;
            if (!std::isfinite(wt.w[i][ch.m[i] - t - 1]))
                throw computation_error("compute_weights: weight overflow at (i=" +
                                        std::to_string(i + 1) +
                                        ", j=" + std::to_string(ch.m[i] - t) + ")");
        }
    }

    wt.weight_sum = 0.0;
    wt.max_abs_weight = 0.0;
    for (const auto& row : wt.w)
        for (double v : row) {
            wt.weight_sum += v;
            wt.max_abs_weight = std::max(wt.max_abs_weight, std::abs(v));
        }

    if (audit) {
        // each component is a gamma-gamma density, so the mixture integral equals
        // the weight sum in exact arithmetic; integrate numerically as the audit
        double scale = 0.0;
        for (int i = 0; i < L; ++i) scale += ch.omega[i];
        auto pdf = [&](double s) { return sum_pdf_inid(s, wt); };
        const QuadResult head = integrate(pdf, 0.0, 4.0 * scale, 1e-9, 1e-9);
        const QuadResult tail = integrate_upper(pdf, 4.0 * scale, 1e-9, 1e-9);
        wt.normalization = head.value + tail.value;
        wt.status = std::abs(wt.normalization - 1.0) <= 1e-4 ? WeightStatus::ok
                                                             : WeightStatus::unreliable;
    } else {
        wt.normalization = wt.weight_sum;
        wt.status = WeightStatus::ok;
    }
    return wt;
}

double sum_pdf_inid(double s, const WeightTable& wt) {
    if (!(s > 0.0)) return 0.0;
    const InidChannelSet& ch = wt.context;
    const int L = ch.links();
    const double Lk = static_cast<double>(L) * ch.k;
    const double lgLk = ln_gamma(Lk);
    double acc = 0.0;
    for (int i = 0; i < L; ++i) {
        const double ratio = Lk * ch.m[i] / ch.omega[i];
        const double lratio = std::log(ratio);
        const double karg = 2.0 * std::sqrt(ratio * s);
        for (int j = 1; j <= ch.m[i]; ++j) {
            const double wij = wt.at(i + 1, j);
            if (wij == 0.0) continue;
            const double half = 0.5 * (Lk + j);
            const double lterm = std::log(2.0) + half * lratio + (half - 1.0) * std::log(s) -
                                 lgLk - ln_gamma(j) + log_bessel_k(Lk - j, karg);
            acc += wij * std::exp(lterm);
        }
    }
    return acc;
}

double snr_pdf_inid(double gamma, const WeightTable& wt, double gamma0) {
    if (!(gamma0 > 0.0)) throw std::domain_error("snr_pdf_inid: gamma0 must be > 0");
    if (!(gamma > 0.0)) return 0.0;
    const double s = std::sqrt(gamma / gamma0);
    return sum_pdf_inid(s, wt) / (2.0 * std::sqrt(gamma * gamma0));
}

double mixture_mean(const WeightTable& wt) {
    const InidChannelSet& ch = wt.context;
    double acc = 0.0;
    for (int i = 0; i < ch.links(); ++i)
        for (int j = 1; j <= ch.m[i]; ++j)
            acc += wt.at(i + 1, j) * j * ch.omega[i] / ch.m[i];
    return acc;
}

} // namespace fso
