#ifndef FSO_GG_MIXTURE_HPP
#define FSO_GG_MIXTURE_HPP

#include "fso/channel.hpp"

#include <string>
#include <vector>

namespace fso {

// Independent, non-identically distributed gamma-gamma links sharing the
// small-scale shape k; per-link integer large-scale shapes m and mean powers omega.
struct InidChannelSet {
    int k = 1;
    std::vector<int> m;
    std::vector<double> omega;

    int links() const { return static_cast<int>(m.size()); }
    void validate() const;  // positivity, lengths, pole condition
};

// Record of how real-valued shapes were adapted to the integer requirements.
struct InidAdaptation {
    InidChannelSet channels;
    double a_real = 0.0;
    double b_real = 0.0;
    bool jitter_applied = false;
    double jitter_eps = 0.0;
    std::vector<std::string> notes;
};

// Round (a, b) to the nearest positive integers (k, m) and jitter the omegas
// multiplicatively when the weight-recursion pole condition fails.
InidAdaptation adapt_links(double a, double b, const std::vector<double>& omegas,
                           double jitter_eps = 1e-6);

enum class WeightStatus { ok, unreliable };

// Nested mixture weights w(i, j), i in 1..L, j in 1..m_i, with the channel
// context. Weights are signed and can be many orders of magnitude above 1;
// the construction audit integrates the mixture density and downgrades the
// status when it fails to normalize within 1e-4.
struct WeightTable {
    InidChannelSet context;
    std::vector<std::vector<double>> w;  // w[i][j-1]
    WeightStatus status = WeightStatus::ok;
    double normalization = 0.0;  // audited integral of the mixture density
    double weight_sum = 0.0;     // sum of all weights (1 in exact arithmetic)
    double max_abs_weight = 0.0;

    double at(int i, int j) const { return w[i - 1][j - 1]; }
};

WeightTable compute_weights(const InidChannelSet& ch, bool audit = true);

// Mixture density of the sum S of the L links; 0 for s <= 0.
double sum_pdf_inid(double s, const WeightTable& wt);

// Mixture density of the electrical SNR gamma = gamma0 S^2; 0 for gamma <= 0.
double snr_pdf_inid(double gamma, const WeightTable& wt, double gamma0);

// Mean of the mixture in closed form: sum_ij w(i,j) * j * omega_i / m_i.
double mixture_mean(const WeightTable& wt);

} // namespace fso

#endif
