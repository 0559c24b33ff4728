#ifndef FSO_QUADRATURE_HPP
#define FSO_QUADRATURE_HPP

#include <functional>

namespace fso {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;      // estimated absolute error
    int evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-10, int max_splits = 2000);

// [a, inf) via the rational substitution x = a + t/(1-t), t in [0,1).
QuadResult integrate_upper(const std::function<double(double)>& f, double a,
                           double abs_tol = 1e-10, double rel_tol = 1e-10, int max_splits = 2000);

// 32-point Gauss-Legendre rule on [-1, 1]; nodes[i] in (-1,1), ascending.
struct GaussLegendre32 {
    static const double nodes[32];
    static const double weights[32];
};

} // namespace fso

#endif
