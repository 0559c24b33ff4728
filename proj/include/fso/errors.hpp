#ifndef FSO_ERRORS_HPP
#define FSO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fso {

// Invalid or inconsistent configuration (bad contour spec, bad scenario file, ...).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric evaluation failed (overflow, term blow-up) — carries the offending term.
class computation_error : public std::runtime_error {
public:
    explicit computation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative scheme did not converge; keeps the last two estimates.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double last, double previous)
        : std::runtime_error(msg), last_estimate(last), previous_estimate(previous) {}
    double last_estimate;
    double previous_estimate;
};

// The moment-match solver failed; carries the best iterate found.
class fit_error : public std::runtime_error {
public:
    fit_error(const std::string& msg, double alpha, double mu, double residual)
        : std::runtime_error(msg), best_alpha(alpha), best_mu(mu), best_residual(residual) {}
    double best_alpha;
    double best_mu;
    double best_residual;
};

} // namespace fso

#endif
