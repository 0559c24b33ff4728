#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fso/capacity.hpp"
#include "fso/errors.hpp"

#include <cmath>

using namespace fso;

namespace {

const GammaGammaParams kFig1Channel{2.1923709322013110262, 1.5661358866920818365, 1.0};

AlphaMuFit fig1_fit(int links) {
    const SumMoments m = sum_moments_iid(links, kFig1Channel);
    return fit_alpha_mu(m.e1, m.e2, m.e4);
}

WeightTable two_link_table() {
    InidChannelSet ch;
    ch.k = 2;
    ch.m = {2, 2};
    ch.omega = {1.0, 2.0};
    return compute_weights(ch, false);
}

} // namespace

TEST_CASE("gamma0 arithmetic") {
    CHECK(gamma0(1, 1, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(gamma0(2, 2, 1.0, 16.0) == doctest::Approx(1.0));
    CHECK(gamma0(2, 4, 1.0, 10.0) == doctest::Approx(10.0 / 64.0));
    CHECK_THROWS_AS(gamma0(0, 1, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gamma0(1, 1, 1.0, 0.0), std::domain_error);
    const SnrContext ctx{2, 4, 1.0, 10.0};
    CHECK(ctx.gamma0() == doctest::Approx(10.0 / 64.0));
    CHECK(ctx.links() == 8);
}

TEST_CASE("awgn benchmark") {
    CHECK(awgn_capacity(0.0) == doctest::Approx(0.0));
    CHECK(awgn_capacity(1.0) == doctest::Approx(1.0));
    CHECK(awgn_capacity(15.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(awgn_capacity(-0.1), std::domain_error);
}

TEST_CASE("quadrature on a near-degenerate density hits the Jensen limit") {
    const SumMoments m = sum_moments_iid(1, {1e6, 1e6, 1.0});
    const AlphaMuFit f = fit_alpha_mu(m.e1, m.e2, m.e4);
    const double g0 = 4.0;
    const double gbar = g0 * m.e2;
    const CapacityPoint c = capacity_quadrature(
        [&](double g) { return snr_pdf_iid(g, f, g0); }, 1e-9, gbar);
    CHECK(c.capacity_bits == doctest::Approx(awgn_capacity(gbar)).epsilon(1e-3));
}

TEST_CASE("iid closed form agrees with quadrature across the sweep") {
    const AlphaMuFit f = fig1_fit(4);  // M = N = 2
    for (double rho_db : {-5.0, 10.0, 25.0}) {
        const double g0 = std::pow(10.0, rho_db / 10.0) / 16.0;
        const CapacityPoint closed = capacity_iid_closed(f, g0);
        const CapacityPoint quad = capacity_quadrature(
            [&](double g) { return snr_pdf_iid(g, f, g0); }, 1e-9, g0 * f.target.e2);
        CHECK(std::abs(closed.capacity_bits - quad.capacity_bits) <= 1e-5);
    }
}

TEST_CASE("iid closed form is monotone in gamma0 over 60 dB") {
    const AlphaMuFit f = fig1_fit(2);
    double prev = -1.0;
    for (int k = 0; k <= 6; ++k) {
        const double g0 = std::pow(10.0, (-20.0 + 10.0 * k) / 10.0) / 4.0;
        const double c = capacity_iid_closed(f, g0).capacity_bits;
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("iid high-SNR asymptote") {
    const AlphaMuFit f = fig1_fit(4);
    // slope: exactly log2(10) bits per 10 dB of gamma0
    const double c1 = capacity_iid_highsnr(f, 1.0).capacity_bits;
    const double c2 = capacity_iid_highsnr(f, 10.0).capacity_bits;
    CHECK(c2 - c1 == doctest::Approx(std::log2(10.0)).epsilon(1e-9));
    // alpha = 2, mu = 1, r_hat = 1 reduces to (psi(1) + ln g0)/ln 2
    const AlphaMuFit ray{2.0, 1.0, 1.0, 0.0, {}};
    for (double g0 : {10.0, 100.0}) {
        const double expect = (-0.57721566490153286061 + std::log(g0)) / std::log(2.0);
        CHECK(capacity_iid_highsnr(ray, g0).capacity_bits ==
              doctest::Approx(expect).epsilon(1e-12));
    }
    // converges to the closed form at high SNR
    const double g40 = std::pow(10.0, 4.0) / 16.0;
    const double g20 = std::pow(10.0, 2.0) / 16.0;
    const double gap40 = std::abs(capacity_iid_closed(f, g40).capacity_bits -
                                  capacity_iid_highsnr(f, g40).capacity_bits);
    const double gap20 = std::abs(capacity_iid_closed(f, g20).capacity_bits -
                                  capacity_iid_highsnr(f, g20).capacity_bits);
    CHECK(gap40 <= 0.05);
    CHECK(gap40 < gap20);
}

TEST_CASE("inid closed form: frozen reference and quadrature agreement") {
    const WeightTable wt = two_link_table();
    // frozen from an independent 30-digit contour/quadrature evaluation
    CHECK(capacity_inid_closed(wt, 1.0).capacity_bits ==
          doctest::Approx(2.88352461884).epsilon(1e-9));
    for (double g0 : {0.1, 1.0, 31.62}) {
        const CapacityPoint closed = capacity_inid_closed(wt, g0);
        const CapacityPoint quad = capacity_quadrature(
            [&](double g) { return snr_pdf_inid(g, wt, g0); }, 1e-9, g0 * 9.0);
        CHECK(std::abs(closed.capacity_bits - quad.capacity_bits) <= 1e-5);
    }
}

TEST_CASE("inid single-link collapse agrees with quadrature") {
    InidChannelSet ch;
    ch.k = 2;
    ch.m = {2};
    ch.omega = {1.0};
    const WeightTable wt = compute_weights(ch, false);
    for (double g0 : {0.5, 5.0}) {
        const CapacityPoint closed = capacity_inid_closed(wt, g0);
        const CapacityPoint quad = capacity_quadrature(
            [&](double g) { return snr_pdf_inid(g, wt, g0); }, 1e-9, g0);
        CHECK(std::abs(closed.capacity_bits - quad.capacity_bits) <= 1e-5);
    }
}

TEST_CASE("inid high-SNR asymptote") {
    const WeightTable wt = two_link_table();
    // slope log2(10) per 10 dB of gamma0
    const double c1 = capacity_inid_highsnr(wt, 1.0).capacity_bits;
    const double c2 = capacity_inid_highsnr(wt, 10.0).capacity_bits;
    CHECK(c2 - c1 == doctest::Approx(std::log2(10.0)).epsilon(1e-9));
    // single-link: high-SNR formula vs quadrature at rho = 50 dB
    InidChannelSet ch;
    ch.k = 2;
    ch.m = {2};
    ch.omega = {1.0};
    const WeightTable one = compute_weights(ch, false);
    const double g0 = 1e5;
    const CapacityPoint quad = capacity_quadrature(
        [&](double g) { return snr_pdf_inid(g, one, g0); }, 1e-9, g0);
    CHECK(std::abs(capacity_inid_highsnr(one, g0).capacity_bits - quad.capacity_bits) <= 0.05);
    // converges toward the closed form at moderate SNR for the balanced
    // four-link configuration
    std::vector<double> om{1.04, 0.95, 1.07, 0.94};
    double s = 0.0;
    for (double o : om) s += o;
    for (double& o : om) o *= 4.0 / s;
    const InidAdaptation ad =
        adapt_links(2.1923709322013110262, 1.5661358866920818365, om);
    const WeightTable fig2 = compute_weights(ad.channels, false);
    const double g20 = 1e2 / 16.0;
    CHECK(std::abs(capacity_inid_highsnr(fig2, g20).capacity_bits -
                   capacity_inid_closed(fig2, g20).capacity_bits) <= 0.1);
}

TEST_CASE("turbulent capacity never beats the AWGN benchmark") {
    const AlphaMuFit f = fig1_fit(4);
    for (double rho_db : {0.0, 10.0, 20.0, 30.0}) {
        const double g0 = std::pow(10.0, rho_db / 10.0) / 16.0;
        const double gbar = g0 * 16.0;  // Ibar = MN = 4
        CHECK(capacity_iid_closed(f, g0).capacity_bits <= awgn_capacity(gbar) + 1e-6);
    }
}

TEST_CASE("quadrature rejects an unnormalized density") {
    CHECK_THROWS_AS(
        capacity_quadrature([](double g) { return g < 1.0 ? 0.7 : 0.0; }, 1e-9, 0.5),
        computation_error);
}
