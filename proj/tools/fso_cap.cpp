#include "fso/errors.hpp"
#include "fso/scenario.hpp"
#include "fso/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int write_output(const std::string& out_path, const std::string& body) {
    if (out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open output file " << out_path << "\n";
        return 2;
    }
    os << body;
    return 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fso::config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonOpts {
    std::string out;
    std::string format = "csv";
    double tolerance = -1.0;
    std::int64_t samples = -1;
    long long seed = -1;
};

void apply_overrides(fso::Scenario& sc, const CommonOpts& o) {
    if (o.tolerance > 0.0) sc.tolerance = o.tolerance;
    if (o.samples > 0) sc.mc.samples = o.samples;
    if (o.seed >= 0) sc.mc.seed = static_cast<std::uint64_t>(o.seed);
}

int exit_code_for(const fso::RunResult& r) {
    if (r.audit_failure) return 4;
    if (r.numeric_failure) return 3;
    return 0;
}

int run_cmd(const std::string& config_path, const CommonOpts& o, bool mc_only) {
    const std::string raw = slurp(config_path);
    fso::Scenario sc = fso::parse_scenario_text(raw);
    apply_overrides(sc, o);
    if (mc_only) sc.methods = {fso::Method::monte_carlo};
    const fso::RunResult res = fso::run_scenario(sc, raw);
    std::ostringstream body;
    if (o.format == "json")
        fso::write_json(res, body);
    else
        fso::write_csv(res, body);
    const int werr = write_output(o.out, body.str());
    return werr != 0 ? werr : exit_code_for(res);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ergodic-capacity engine for MIMO free-space optical links "
                 "over gamma-gamma turbulence"};
    app.set_version_flag("--version", fso::kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--out", opts.out, "Output file (default: stdout)");
    app.add_option("--format", opts.format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tolerance", opts.tolerance, "Numeric tolerance override");
    app.add_option("--samples", opts.samples, "Monte-Carlo sample count override");
    app.add_option("--seed", opts.seed, "Monte-Carlo seed override");

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a sweep scenario from a config file");
    run->add_option("config", config_path, "Scenario config file")->required();

    auto* table1 = app.add_subcommand(
        "table1", "Analytical-vs-simulated error table at the strong-turbulence reference setting");

    std::string fit_config;
    auto* fit = app.add_subcommand("fit", "Print the fitted model for a scenario channel");
    fit->add_option("--config", fit_config, "Scenario config file")->required();

    std::string mc_config;
    auto* mc = app.add_subcommand("mc", "Monte-Carlo-only run of a scenario");
    mc->add_option("config", mc_config, "Scenario config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run)) return run_cmd(config_path, opts, false);
        if (app.got_subcommand(mc)) return run_cmd(mc_config, opts, true);

        if (app.got_subcommand(table1)) {
            const std::int64_t n = opts.samples > 0 ? opts.samples : 10'000'000;
            const std::uint64_t seed = opts.seed >= 0 ? static_cast<std::uint64_t>(opts.seed) : 1;
            const double tol = opts.tolerance > 0.0 ? opts.tolerance : 1e-9;
            const fso::Table1Report rep = fso::table1_report(n, seed, tol);
            std::ostringstream body;
            if (opts.format == "json")
                fso::write_table1_json(rep, body);
            else
                fso::write_table1_csv(rep, body);
            return write_output(opts.out, body.str());
        }

        if (app.got_subcommand(fit)) {
            const std::string raw = slurp(fit_config);
            fso::Scenario sc = fso::parse_scenario_text(raw);
            apply_overrides(sc, opts);
            const auto [a, b] = fso::gg_shape_params(sc.link);
            const int links = sc.tx * sc.rx;
            nlohmann::ordered_json j;
            j["channel"]["a"] = a;
            j["channel"]["b"] = b;
            j["channel"]["scintillation_index"] = fso::scintillation_index(a, b);
            if (sc.mode == fso::ChannelMode::iid) {
                const fso::SumMoments sm = fso::sum_moments_iid(links, {a, b, 1.0});
                const fso::AlphaMuFit f = fso::fit_alpha_mu(sm.e1, sm.e2, sm.e4);
                j["fit"]["alpha"] = f.alpha;
                j["fit"]["mu"] = f.mu;
                j["fit"]["r_hat"] = f.r_hat;
                j["fit"]["residual"] = f.residual;
                j["fit"]["moments"] = {sm.e1, sm.e2, sm.e4};
            } else {
                std::vector<double> om(links, 1.0);
                if (!sc.inid_omega.empty()) {
                    om = sc.inid_omega;
                } else if (!std::isnan(sc.inid_beta)) {
                    double sum = 0.0;
                    for (int l = 0; l < links; ++l) {
                        om[l] = std::pow(sc.inid_beta, l);
                        sum += om[l];
                    }
                    for (double& o : om) o *= links / sum;
                }
                const fso::InidAdaptation ad = fso::adapt_links(a, b, om);
                const fso::WeightTable wt = fso::compute_weights(ad.channels);
                j["adaptation"]["k"] = ad.channels.k;
                j["adaptation"]["m"] = ad.channels.m;
                j["adaptation"]["omega"] = ad.channels.omega;
                j["adaptation"]["notes"] = ad.notes;
                j["weights"]["status"] =
                    wt.status == fso::WeightStatus::ok ? "ok" : "unreliable";
                j["weights"]["normalization"] = wt.normalization;
                j["weights"]["table"] = wt.w;
            }
            return write_output(opts.out, j.dump(2) + "\n");
        }
    } catch (const fso::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
