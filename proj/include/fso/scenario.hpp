#ifndef FSO_SCENARIO_HPP
#define FSO_SCENARIO_HPP

#include "fso/capacity.hpp"
#include "fso/channel.hpp"
#include "fso/montecarlo.hpp"

#include <cmath>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fso {

enum class SweepAxis { rho_db, gamma_bar_db, cn2, D, L, beta };
enum class ChannelMode { iid, inid };

const char* sweep_axis_name(SweepAxis a);

// One batch run description, parsed from a flat key = value config with
// dotted sections (see README for the grammar).
struct Scenario {
    AtmosphericLink link;
    int tx = 0, rx = 0;
    double eta = 1.0;
    ChannelMode mode = ChannelMode::iid;
    double inid_beta = std::nan("");        // adjacent-omega ratio, >= 1
    std::vector<double> inid_omega;         // explicit per-link means (overrides beta)
    SweepAxis axis = SweepAxis::rho_db;
    double sweep_start = 0.0, sweep_stop = 0.0;
    int sweep_steps = 0;
    std::vector<Method> methods;
    McConfig mc;
    double tolerance = 1e-9;
    double fixed_rho_db = std::nan("");      // SNR for channel-axis sweeps
    double fixed_gamma_bar_db = std::nan("");

    void validate() const;  // throws config_error
};

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

struct ResultRow {
    std::string sweep_axis;
    double sweep_value = 0.0;
    std::string method;
    double capacity_bits = std::nan("");
    double err_estimate = 0.0;
    std::string status = "ok";
};

struct RunResult {
    std::vector<ResultRow> rows;
    std::vector<std::pair<std::string, std::string>> metadata;  // ordered key/value
    bool numeric_failure = false;
    bool audit_failure = false;
};

RunResult run_scenario(const Scenario& sc, const std::string& raw_config_text = "");

void write_csv(const RunResult& result, std::ostream& os);
void write_json(const RunResult& result, std::ostream& os);

// Error-comparison table: |closed form - Monte Carlo| for the strong-turbulence
// reference setting, next to the published reference errors of the alpha-mu
// method and of the single gamma-gamma method it improves upon.
struct Table1Cell {
    double gamma_bar_db = 0.0;
    int tx = 0, rx = 0;
    double c_closed = 0.0;
    double c_mc = 0.0;
    double mc_se = 0.0;
    double abs_gap = 0.0;
    double published_ours = 0.0;
    double published_prior = 0.0;
};

struct Table1Report {
    std::vector<Table1Cell> cells;
    std::vector<std::pair<std::string, std::string>> metadata;
};

Table1Report table1_report(std::int64_t samples, std::uint64_t seed, double tolerance = 1e-9);

void write_table1_csv(const Table1Report& report, std::ostream& os);
void write_table1_json(const Table1Report& report, std::ostream& os);

// Formatting used by every writer: >= 10 significant digits, locale-free.
std::string format_number(double v);

// FNV-1a 64-bit digest (config provenance in output headers).
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace fso

#endif
