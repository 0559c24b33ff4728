#ifndef FSO_MONTECARLO_HPP
#define FSO_MONTECARLO_HPP

#include "fso/capacity.hpp"
#include "fso/channel.hpp"

#include <cstdint>
#include <vector>

namespace fso {

struct McConfig {
    std::int64_t samples = 10'000'000;
    std::uint64_t seed = 1;
    std::int64_t batch = 65536;  // streaming granularity only; never affects the estimate
};

// Counter-based random stream keyed by (seed, sample index, link index):
// every (sample, link) pair owns an independent deterministic substream, so
// results do not depend on batching or worker count.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t sample_index, std::uint64_t link_index);
    std::uint64_t next_u64();
    double next_uniform();      // (0, 1)
    double next_normal();       // standard normal, Box-Muller
    double next_gamma(double shape, double scale);

private:
    std::uint64_t state_;
};

// One gamma-gamma draw: x * y with x ~ Gamma(a, 1/a), y ~ Gamma(b, omega/b).
double sample_gamma_gamma(const GammaGammaParams& p, SampleStream& stream);

// Ergodic capacity estimate mean log2(1 + gamma0 (sum_l I_l)^2) with standard
// error; bit-identical for fixed (seed, samples) regardless of cfg.batch.
CapacityPoint mc_capacity(const std::vector<GammaGammaParams>& channels, const SnrContext& ctx,
                          const McConfig& cfg);

// Same draws evaluated at several gamma0 values in one pass over the samples;
// row r is bit-identical to mc_capacity at gamma0s[r] with the same config.
std::vector<CapacityPoint> mc_capacity_sweep(const std::vector<GammaGammaParams>& channels,
                                             const std::vector<double>& gamma0s,
                                             const McConfig& cfg);

// Raw draws of the sum S = sum_l I_l (for distribution-fit checks).
std::vector<double> mc_sum_samples(const std::vector<GammaGammaParams>& channels,
                                   const McConfig& cfg);

} // namespace fso

#endif
