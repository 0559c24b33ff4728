#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fso/errors.hpp"
#include "fso/scenario.hpp"

#include <cmath>
#include <sstream>
#include <string>

using namespace fso;

namespace {

const std::string kBaseConfig =
    "# strong-turbulence reference link\n"
    "link.cn2 = 3e-14\n"
    "link.wavelength = 850e-9\n"
    "link.distance = 4000\n"
    "link.aperture = 0.01\n"
    "mimo.m = 1\n"
    "mimo.n = 2\n"
    "mimo.eta = 1\n"
    "mode = iid\n"
    "sweep.axis = rho_db\n"
    "sweep.start = 0\n"
    "sweep.stop = 20\n"
    "sweep.steps = 5\n"
    "methods = closed_form,quadrature,high_snr,awgn\n"
    "tolerance = 1e-9\n";

std::string csv_of(const RunResult& r) {
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

} // namespace

TEST_CASE("config parsing and validation") {
    const Scenario sc = parse_scenario_text(kBaseConfig);
    CHECK(sc.tx == 1);
    CHECK(sc.rx == 2);
    CHECK(sc.axis == SweepAxis::rho_db);
    CHECK(sc.methods.size() == 4);

    CHECK_THROWS_WITH_AS(parse_scenario_text(kBaseConfig + "bogus line\n"),
                         doctest::Contains("line 16"), config_error);
    CHECK_THROWS_WITH_AS(parse_scenario_text(kBaseConfig + "link.cn2 = 1e-14\n"),
                         doctest::Contains("duplicate"), config_error);
    CHECK_THROWS_WITH_AS(parse_scenario_text(kBaseConfig + "sweep.extra = x\n"),
                         doctest::Contains("unknown key"), config_error);
    CHECK_THROWS_WITH_AS(parse_scenario_text(kBaseConfig + "snr.rho_db = abc\n"),
                         doctest::Contains("not a number"), config_error);

    std::string bad_steps = kBaseConfig;
    bad_steps.replace(bad_steps.find("sweep.steps = 5"), 15, "sweep.steps = 1");
    CHECK_THROWS_AS(parse_scenario_text(bad_steps), config_error);

    // beta sweep requires inid mode
    std::string beta_iid = kBaseConfig;
    beta_iid.replace(beta_iid.find("sweep.axis = rho_db"), 19, "sweep.axis = beta  ");
    CHECK_THROWS_AS(parse_scenario_text(beta_iid), config_error);

    // channel sweep needs a fixed SNR
    std::string no_snr = kBaseConfig;
    no_snr.replace(no_snr.find("sweep.axis = rho_db"), 19, "sweep.axis = L     ");
    CHECK_THROWS_AS(parse_scenario_text(no_snr), config_error);
    CHECK_NOTHROW(parse_scenario_text(no_snr + "snr.gamma_bar_db = -5\n"));
}

TEST_CASE("degenerate sweep emits identical row pairs") {
    std::string cfg = kBaseConfig;
    cfg.replace(cfg.find("sweep.start = 0"), 15, "sweep.start = 10");
    cfg.replace(cfg.find("sweep.stop = 20"), 15, "sweep.stop = 10 ");
    cfg.replace(cfg.find("sweep.steps = 5"), 15, "sweep.steps = 2");
    const RunResult r = run_scenario(parse_scenario_text(cfg), cfg);
    REQUIRE(r.rows.size() == 8);  // 2 sweep values x 4 methods
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(r.rows[i].method == r.rows[i + 4].method);
        CHECK(r.rows[i].capacity_bits == r.rows[i + 4].capacity_bits);
    }
}

TEST_CASE("iid sweep: row order, agreement, benchmark ordering") {
    const Scenario sc = parse_scenario_text(kBaseConfig);
    const RunResult r = run_scenario(sc, kBaseConfig);
    REQUIRE(r.rows.size() == 20);
    CHECK(!r.numeric_failure);
    CHECK(!r.audit_failure);
    // canonical method order within a sweep value
    CHECK(r.rows[0].method == "quadrature");
    CHECK(r.rows[1].method == "closed_form");
    CHECK(r.rows[2].method == "high_snr");
    CHECK(r.rows[3].method == "awgn");
    for (std::size_t v = 0; v < 5; ++v) {
        const double quad = r.rows[4 * v + 0].capacity_bits;
        const double closed = r.rows[4 * v + 1].capacity_bits;
        const double awgn = r.rows[4 * v + 3].capacity_bits;
        CHECK(std::abs(closed - quad) <= 1e-5);
        CHECK(closed <= awgn + 1e-6);
        CHECK(r.rows[4 * v].status == "ok");
    }
    // metadata carries the fit and audit results
    bool has_fit = false, has_audit = false;
    for (const auto& [k, v] : r.metadata) {
        if (k == "fit_alpha") has_fit = true;
        if (k == "self_audit") has_audit = true;
    }
    CHECK(has_fit);
    CHECK(has_audit);
}

TEST_CASE("gamma_bar axis coincides with rho axis at eta = 1, unit means") {
    std::string cfg = kBaseConfig;
    cfg.replace(cfg.find("sweep.axis = rho_db"), 19, "sweep.axis = gamma_bar_db");
    const RunResult a = run_scenario(parse_scenario_text(kBaseConfig), kBaseConfig);
    const RunResult b = run_scenario(parse_scenario_text(cfg), cfg);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK(a.rows[i].capacity_bits == doctest::Approx(b.rows[i].capacity_bits).epsilon(1e-12));
}

TEST_CASE("csv output is schema-stable and byte-identical across reruns") {
    std::string cfg = kBaseConfig;
    cfg.replace(cfg.find("sweep.steps = 5"), 15, "sweep.steps = 3");
    cfg += "mc.samples = 20000\nmc.seed = 77\n";
    std::string with_mc = cfg;
    with_mc.replace(with_mc.find("methods = closed_form,quadrature,high_snr,awgn"),
                    std::string("methods = closed_form,quadrature,high_snr,awgn").size(),
                    "methods = closed_form,monte_carlo,awgn              ");
    const Scenario sc = parse_scenario_text(with_mc);
    const std::string csv1 = csv_of(run_scenario(sc, with_mc));
    const std::string csv2 = csv_of(run_scenario(sc, with_mc));
    CHECK(csv1 == csv2);
    CHECK(csv1.find("sweep_axis,sweep_value,method,capacity_bits,err_estimate,status\n") !=
          std::string::npos);
    // metadata lines are comments
    CHECK(csv1.rfind("# library_version", 0) == 0);
}

TEST_CASE("distance sweep emits scintillation rows") {
    std::string cfg = kBaseConfig;
    cfg.replace(cfg.find("sweep.axis = rho_db"), 19, "sweep.axis = L     ");
    cfg.replace(cfg.find("sweep.start = 0"), 15, "sweep.start = 1000");
    cfg.replace(cfg.find("sweep.stop = 20"), 15, "sweep.stop = 8000");
    cfg += "snr.gamma_bar_db = -5\n";
    const RunResult r = run_scenario(parse_scenario_text(cfg), cfg);
    int scint_rows = 0;
    for (const auto& row : r.rows)
        if (row.method == "scint_index") {
            ++scint_rows;
            CHECK(row.capacity_bits > 0.0);
        }
    CHECK(scint_rows == 5);
}

TEST_CASE("inid beta sweep routes beta = 1 through the iid path") {
    std::string cfg = kBaseConfig;
    cfg.replace(cfg.find("mimo.m = 1"), 10, "mimo.m = 2");
    cfg.replace(cfg.find("mode = iid"), 10, "mode = inid");
    cfg.replace(cfg.find("sweep.axis = rho_db"), 19, "sweep.axis = beta  ");
    cfg.replace(cfg.find("sweep.start = 0"), 15, "sweep.start = 1");
    cfg.replace(cfg.find("sweep.stop = 20"), 15, "sweep.stop = 2 ");
    cfg.replace(cfg.find("sweep.steps = 5"), 15, "sweep.steps = 3");
    cfg.replace(cfg.find("methods = closed_form,quadrature,high_snr,awgn"),
                std::string("methods = closed_form,quadrature,high_snr,awgn").size(),
                "methods = closed_form                          ");
    cfg += "snr.rho_db = 10\n";
    const RunResult r = run_scenario(parse_scenario_text(cfg), cfg);
    REQUIRE(r.rows.size() == 3);
    CHECK(!r.numeric_failure);

    // the beta = 1 row equals the iid-mode closed form at the same SNR
    std::string iid_cfg = kBaseConfig;
    iid_cfg.replace(iid_cfg.find("mimo.m = 1"), 10, "mimo.m = 2");
    iid_cfg.replace(iid_cfg.find("sweep.start = 0"), 15, "sweep.start = 10");
    iid_cfg.replace(iid_cfg.find("sweep.stop = 20"), 15, "sweep.stop = 10 ");
    iid_cfg.replace(iid_cfg.find("sweep.steps = 5"), 15, "sweep.steps = 2");
    iid_cfg.replace(iid_cfg.find("methods = closed_form,quadrature,high_snr,awgn"),
                    std::string("methods = closed_form,quadrature,high_snr,awgn").size(),
                    "methods = closed_form                          ");
    const RunResult ri = run_scenario(parse_scenario_text(iid_cfg), iid_cfg);
    CHECK(r.rows[0].capacity_bits ==
          doctest::Approx(ri.rows[0].capacity_bits).epsilon(1e-12));
}

TEST_CASE("table1 report mechanics with a small sample budget") {
    const Table1Report rep = table1_report(20'000, 123, 1e-9);
    REQUIRE(rep.cells.size() == 18);
    for (const auto& c : rep.cells) {
        CHECK(std::isfinite(c.abs_gap));
        CHECK(c.abs_gap >= 0.0);
        CHECK(c.published_ours > 0.0);
        CHECK(c.published_prior > 0.0);
        CHECK(c.mc_se > 0.0);
    }
    // embedded published reference values, spot-checked
    CHECK(rep.cells[0].gamma_bar_db == doctest::Approx(-5.0));
    CHECK(rep.cells[0].published_ours == doctest::Approx(1.00e-3));
    CHECK(rep.cells[0].published_prior == doctest::Approx(4.70e-3));
    const Table1Cell& last = rep.cells.back();
    CHECK(last.tx == 2);
    CHECK(last.rx == 4);
    CHECK(last.gamma_bar_db == doctest::Approx(10.0));
    CHECK(last.published_prior == doctest::Approx(3.15e-2));
    // the table is defined as the analytical-vs-simulated gap
    CHECK_THROWS_AS(table1_report(100, 1, 1e-9), config_error);
    std::ostringstream os;
    write_table1_csv(rep, os);
    CHECK(os.str().find("gamma_bar_db,M,N,c_closed,c_mc,mc_se,abs_gap,"
                        "published_ours,published_prior\n") != std::string::npos);
}

TEST_CASE("number formatting keeps at least 10 significant digits") {
    CHECK(format_number(1.2345678901234567) == "1.23456789012");
    CHECK(format_number(0.5) == "0.5");
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") != fnv1a64("b"));
}
