#ifndef FSO_MELLIN_BARNES_HPP
#define FSO_MELLIN_BARNES_HPP

#include <cmath>
#include <vector>

namespace fso {

// One Gamma factor of a Mellin-Barnes kernel.
struct GammaTerm {
    double offset = 0.0;
    double scale = 1.0;
};

// Kernel of a Mellin-Barnes integral
//
//   (1/2*pi*i) Int K(s) * x^(eps*s) ds,
//   K(s) = exp(log_prefactor)
//          * prod Gamma(offset + scale*s)   [numerator_terms,  scale > 0]
//          * prod Gamma(offset - scale*s)   [sign_terms,       scale > 0]
//          / prod Gamma(offset + scale*s)   [denominator_terms]
//
// along a vertical contour separating the two pole families: numerator_terms
// put poles at s = -(offset+k)/scale (left family), sign_terms at
// s = (offset+k)/scale (right family). Denominator terms are pole-free and may
// have any nonzero scale, or scale 0 to fold an s-independent 1/Gamma(offset)
// constant into the kernel (keeps the integrand at the magnitude of the result).
// Meijer-G and Fox-H instances are expressed by listing their Gamma factors here.
struct MellinBarnesSpec {
    std::vector<GammaTerm> numerator_terms;
    std::vector<GammaTerm> denominator_terms;
    std::vector<GammaTerm> sign_terms;
    int argument_exponent = +1;  // +1: kernel multiplies x^s, -1: x^(-s)
    double log_prefactor = 0.0;
};

struct ContourConfig {
    double omega = std::nan("");  // vertical abscissa; NaN = automatic midpoint rule
    double half_height = 10.0;    // initial truncation T, s in [omega - iT, omega + iT]
    int nodes = 256;              // minimum total quadrature nodes across the contour
    double tolerance = 1e-11;     // convergence target between successive refinements
    int max_refinements = 6;
};

// Rightmost pole of the left family / leftmost pole of the right family.
// Throws config_error if a side is empty (quiet NaN in that slot) or overlapping.
struct PoleGap {
    double left = std::nan("");
    double right = std::nan("");
};
PoleGap pole_gap(const MellinBarnesSpec& spec);

// The automatic abscissa: midpoint of the pole gap (or 1 beyond a lone family).
double auto_abscissa(const MellinBarnesSpec& spec);

struct MbResult {
    double value = 0.0;
    double imag_residual = 0.0;  // |imag| of the numeric estimate; sanity signal
    int refinements = 0;
    double half_height = 0.0;    // final truncation used
    int nodes = 0;               // final node count
};

// Evaluate the truncated contour integral with composite Gauss-Legendre panels,
// doubling T and the node count until two successive estimates agree.
MbResult mellin_barnes_eval_full(const MellinBarnesSpec& spec, double x,
                                 const ContourConfig& cfg = {});
double mellin_barnes_eval(const MellinBarnesSpec& spec, double x,
                          const ContourConfig& cfg = {});

} // namespace fso

#endif
