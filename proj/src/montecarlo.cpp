#include "fso/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

namespace fso {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

inline std::uint64_t mix64(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t sample_index,
                           std::uint64_t link_index) {
    std::uint64_t s = mix64(seed ^ 0x5851f42d4c957f2dULL);
    s = mix64(s ^ sample_index);
    state_ = mix64(s ^ (link_index * 0x2545f4914f6cdd1dULL));
}

std::uint64_t SampleStream::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SampleStream::next_uniform() {
    // top 53 bits, shifted into (0, 1); never returns exactly 0
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double SampleStream::next_normal() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double SampleStream::next_gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::domain_error("next_gamma: shape, scale must be > 0");
    // Marsaglia-Tsang squeeze for shape >= 1; power boost for shape < 1
    double boost = 1.0;
    double a = shape;
    if (a < 1.0) {
        boost = std::pow(next_uniform(), 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v * scale;
    }
}

double sample_gamma_gamma(const GammaGammaParams& p, SampleStream& stream) {
    const double x = stream.next_gamma(p.a, 1.0 / p.a);
    const double y = stream.next_gamma(p.b, p.omega / p.b);
    return x * y;
}

namespace {

// deterministic block-structured accumulator: Kahan within fixed-size blocks,
// blocks folded in index order; independent of cfg.batch by construction
class BlockAccumulator {
public:
    void add(double x) {
        kahan_add(block_sum_, block_comp_, x);
        kahan_add(block_sq_, block_sq_comp_, x * x);
        if (++in_block_ == kBlock) flush();
    }
    void finish() {
        if (in_block_ > 0) flush();
    }
    double sum() const { return total_sum_; }
    double sum_sq() const { return total_sq_; }

private:
    static constexpr int kBlock = 65536;
    static void kahan_add(double& s, double& c, double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    void flush() {
        kahan_add(total_sum_, total_comp_, block_sum_);
        kahan_add(total_sq_, total_sq_c_, block_sq_);
        block_sum_ = block_comp_ = block_sq_ = block_sq_comp_ = 0.0;
        in_block_ = 0;
    }
    double block_sum_ = 0.0, block_comp_ = 0.0, block_sq_ = 0.0, block_sq_comp_ = 0.0;
    double total_sum_ = 0.0, total_comp_ = 0.0, total_sq_ = 0.0, total_sq_c_ = 0.0;
    int in_block_ = 0;
};

void validate_mc(const std::vector<GammaGammaParams>& channels, const McConfig& cfg) {
    if (channels.empty()) throw std::domain_error("mc_capacity: empty channel list");
    for (const auto& c : channels) c.validate();
    if (cfg.samples < 1) throw std::domain_error("mc_capacity: samples must be >= 1");
}

} // namespace

std::vector<CapacityPoint> mc_capacity_sweep(const std::vector<GammaGammaParams>& channels,
                                             const std::vector<double>& gamma0s,
                                             const McConfig& cfg) {
    validate_mc(channels, cfg);
    for (double g0 : gamma0s)
        if (!(g0 > 0.0)) throw std::domain_error("mc_capacity: gamma0 must be > 0");
    const std::size_t links = channels.size();
    const std::size_t npts = gamma0s.size();
    std::vector<BlockAccumulator> acc(npts);
    const double inv_ln2 = 1.0 / 0.69314718055994530941723212145817657;
    for (std::int64_t i = 0; i < cfg.samples; ++i) {
        double s = 0.0;
        for (std::size_t l = 0; l < links; ++l) {
            SampleStream stream(cfg.seed, static_cast<std::uint64_t>(i),
                                static_cast<std::uint64_t>(l));
            s += sample_gamma_gamma(channels[l], stream);
        }
        const double s2 = s * s;
        for (std::size_t r = 0; r < npts; ++r)
            acc[r].add(std::log1p(gamma0s[r] * s2) * inv_ln2);
    }
    std::vector<CapacityPoint> out(npts);
    const double n = static_cast<double>(cfg.samples);
    for (std::size_t r = 0; r < npts; ++r) {
        acc[r].finish();
        const double mean = acc[r].sum() / n;
        const double var = std::max(0.0, acc[r].sum_sq() / n - mean * mean);
        out[r].capacity_bits = mean;
        out[r].method = Method::monte_carlo;
        out[r].err_estimate = std::sqrt(var / n);
    }
    return out;
}

CapacityPoint mc_capacity(const std::vector<GammaGammaParams>& channels, const SnrContext& ctx,
                          const McConfig& cfg) {
    if (static_cast<int>(channels.size()) != ctx.links())
        throw std::domain_error("mc_capacity: channel list length must equal M*N");
    return mc_capacity_sweep(channels, {ctx.gamma0()}, cfg)[0];
}

std::vector<double> mc_sum_samples(const std::vector<GammaGammaParams>& channels,
                                   const McConfig& cfg) {
    validate_mc(channels, cfg);
    std::vector<double> out(static_cast<std::size_t>(cfg.samples));
    const std::size_t links = channels.size();
    for (std::int64_t i = 0; i < cfg.samples; ++i) {
        double s = 0.0;
        for (std::size_t l = 0; l < links; ++l) {
            SampleStream stream(cfg.seed, static_cast<std::uint64_t>(i),
                                static_cast<std::uint64_t>(l));
            s += sample_gamma_gamma(channels[l], stream);
        }
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

} // namespace fso
