#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include <qdcascade/commands.hpp>
#include <qdcascade/config.hpp>
#include <qdcascade/network.hpp>
#include <qdcascade/spectrum.hpp>

using namespace qd;
using doctest::Approx;

namespace {

CascadeRates default_table_rates() {
    return rates_from_lifetimes(50.0, 3000.0, 400.0, 1000.0, 1200.0, 5000.0);
}

PumpSpec default_pump(double g) {
    PumpSpec s;
    s.generation = g;
    s.eta = 0.345;
    s.tt_radiative_escape = true;
    s.tau_xxx = 400.0;
    s.tau_xx = 400.0;
    s.tau_x = 400.0;
    s.tau_tt = 400.0;
    return s;
}

int count_kind(const RateNetwork& net, TKind k) {
    int n = 0;
    for (const Transition& t : net.transitions) {
        if (t.kind == k) ++n;
    }
    return n;
}

// rate of the unique transition from -> to, 0 when absent
double rate_between(const RateNetwork& net, int from, int to) {
    double r = 0.0;
    for (const Transition& t : net.transitions) {
        if (t.from == from && t.to == to) r += t.rate;
    }
    return r;
}

bool has_edge(const RateNetwork& net, int from, int to) {
    for (const Transition& t : net.transitions) {
        if (t.from == from && t.to == to) return true;
    }
    return false;
}

// the calibrated attempt rate for the default table-mode parameters
constexpr double g_cal = 0.4685582468582391;

}  // namespace

TEST_CASE("lifetime table inverts into the six channel rates") {
    CascadeRates k = default_table_rates();
    CHECK(k.k_h_pm3 == Approx(1.0 / 50.0).epsilon(1e-15));
    CHECK(k.k_v_pm3 == Approx(1.0 / 3000.0).epsilon(1e-15));
    CHECK(k.k_2_ss0 == Approx(1.0 / 400.0).epsilon(1e-15));
    CHECK(k.k_2_st0 == Approx(1.0 / 1000.0).epsilon(1e-15));
    CHECK(k.k_0tt_ss0 == Approx(1.0 / 1200.0).epsilon(1e-15));
    CHECK(k.k_hv_ss0 == Approx(1.0 / 5000.0).epsilon(1e-15));
}

TEST_CASE("spectrum-derived rates: four channels direct, one shared leak") {
    LabeledSpectrum ls = label_states(
        eigendecompose(build_hamiltonian(default_energies(), default_exchange(),
                                         -3.5)),
        -3.5);
    RateTable rt = relaxation_rates(phonon_projection(ls), 7.0);
    CascadeRates k = rates_from_spectrum(rt);

    CHECK(k.k_h_pm3 == channel_rate(rt, NrChannel::h_pm3));
    CHECK(k.k_v_pm3 == channel_rate(rt, NrChannel::v_pm3));
    CHECK(k.k_2_ss0 == channel_rate(rt, NrChannel::two_ss0));
    CHECK(k.k_2_st0 == channel_rate(rt, NrChannel::two_st0));
    CHECK(k.k_0tt_ss0 == channel_rate(rt, NrChannel::ztt_ss0));
    CHECK(k.k_hv_ss0 == Approx(0.5 * (channel_rate(rt, NrChannel::h_ss0) +
                                      channel_rate(rt, NrChannel::v_ss0)))
                            .epsilon(1e-15));

    // at the operating detuning the V leak is clamped away, so the shared
    // leak is half the H leak
    CHECK(k.k_h_pm3 == Approx(6.41346747054699e-08).epsilon(1e-6));
    CHECK(k.k_hv_ss0 ==
          Approx(0.5 * 6.677324156503263e-10).epsilon(1e-6));
}

TEST_CASE("cascade wiring: transition counts by kind") {
    RateNetwork net = build_cascade_network(default_table_rates(),
                                            default_pump(g_cal));
    CHECK(count_kind(net, TKind::radiative) == 22);
    CHECK(count_kind(net, TKind::nonradiative) == 13);
    CHECK(count_kind(net, TKind::generation) == 28);
    CHECK(net.transitions.size() == 63);
    CHECK(net.rate_matrix.n == n_cascade);

    for (const Transition& t : net.transitions) {
        CHECK(t.rate > 0.0);
        CHECK(t.from >= 0);
        CHECK(t.from < n_cascade);
        CHECK(t.to >= 0);
        CHECK(t.to < n_cascade);
        if (t.kind == TKind::radiative) {
            CHECK(t.line != Line::none);
        } else {
            // pumping and phonon-assisted relaxation emit no photon
            CHECK(t.line == Line::none);
            CHECK(t.pol == Pol::unpol);
        }
    }
}

TEST_CASE("turning off the slow escape removes seven radiative paths") {
    PumpSpec pump = default_pump(g_cal);
    pump.tt_radiative_escape = false;
    RateNetwork net = build_cascade_network(default_table_rates(), pump);
    CHECK(count_kind(net, TKind::radiative) == 15);
    CHECK(net.transitions.size() == 56);
    for (const Transition& t : net.transitions) {
        CHECK(t.line != Line::untracked);
    }
}

TEST_CASE("generator columns sum to zero") {
    RateNetwork net = build_cascade_network(default_table_rates(),
                                            default_pump(g_cal));
    for (int j = 0; j < n_cascade; ++j) {
        double s = 0.0;
        for (int i = 0; i < n_cascade; ++i) s += net.rate_matrix(i, j);
        CHECK(std::abs(s) <= 1e-12);
    }
}

TEST_CASE("no mixing between spin branches or into the wrong reservoir") {
    RateNetwork net = build_cascade_network(default_table_rates(),
                                            default_pump(g_cal));
    // the +/- branches never cross
    CHECK_FALSE(has_edge(net, c_dh_p, c_xx_m3));
    CHECK_FALSE(has_edge(net, c_dh_m, c_xx_p3));
    CHECK_FALSE(has_edge(net, c_dv_p, c_xx_m3));
    CHECK_FALSE(has_edge(net, c_dv_m, c_xx_p3));
    // the dark-fed states leak only into the ground configuration
    CHECK_FALSE(has_edge(net, c_dh_p, c_xx_st0));
    CHECK_FALSE(has_edge(net, c_dv_p, c_xx_st0));
    CHECK_FALSE(has_edge(net, c_dh_m, c_xx_st0));
    CHECK_FALSE(has_edge(net, c_dv_m, c_xx_st0));
    // same for the Jz = 0 triplet-triplet state
    CHECK_FALSE(has_edge(net, c_tt_0, c_xx_st0));
    CHECK(has_edge(net, c_tt_0, c_xx_ss0));
    // no triexciton decays straight to a biexciton
    for (int x3 : {c_xxx_bp, c_xxx_bm, c_xxx_h, c_xxx_v}) {
        for (int xx : {c_xx_p3, c_xx_m3, c_xx_st0, c_xx_ss0}) {
            CHECK_FALSE(has_edge(net, x3, xx));
        }
    }
}

TEST_CASE("pair-capture ladder rates and spin statistics") {
    const double g = 0.5;
    RateNetwork net = build_cascade_network(default_table_rates(),
                                            default_pump(g));
    CHECK(rate_between(net, c_gnd, c_x1) == Approx(g).epsilon(1e-15));
    CHECK(rate_between(net, c_x1, c_xx_ss0) ==
          Approx(g * (1.0 - 0.345)).epsilon(1e-15));
    for (int s : {c_xx_st0, c_xx_p3, c_xx_m3}) {
        CHECK(rate_between(net, c_x1, s) ==
              Approx(g * 0.345 / 12.0).epsilon(1e-15));
    }
    for (int s : {c_dh_p, c_dh_m, c_dv_p, c_dv_m, c_tt_p2, c_tt_m2, c_tt_0}) {
        CHECK(rate_between(net, c_x1, s) ==
              Approx(g * 0.345 * 9.0 / 12.0 / 7.0).epsilon(1e-15));
    }
    // every metastable biexciton feeds all four triexcitons equally
    for (int s : {c_xx_ss0, c_xx_p3, c_xx_m3, c_xx_st0}) {
        for (int x3 : {c_xxx_bp, c_xxx_bm, c_xxx_h, c_xxx_v}) {
            CHECK(rate_between(net, s, x3) == Approx(g / 4.0).epsilon(1e-15));
        }
    }
    // total capture probability out of the exciton is exactly g
    double out = 0.0;
    for (const Transition& t : net.transitions) {
        if (t.kind == TKind::generation && t.from == c_x1) out += t.rate;
    }
    CHECK(out == Approx(g).epsilon(1e-14));
}

TEST_CASE("polarizer projection weights") {
    CHECK(pol_weight(Pol::unpol, Pol::unpol) == 1.0);
    CHECK(pol_weight(Pol::sigma_p, Pol::unpol) == 1.0);
    CHECK(pol_weight(Pol::sigma_m, Pol::unpol) == 1.0);
    CHECK(pol_weight(Pol::unpol, Pol::sigma_p) == 0.5);
    CHECK(pol_weight(Pol::unpol, Pol::sigma_m) == 0.5);
    CHECK(pol_weight(Pol::sigma_p, Pol::sigma_p) == 1.0);
    CHECK(pol_weight(Pol::sigma_m, Pol::sigma_m) == 1.0);
    CHECK(pol_weight(Pol::sigma_p, Pol::sigma_m) == 0.0);
    CHECK(pol_weight(Pol::sigma_m, Pol::sigma_p) == 0.0);
}

TEST_CASE("two-level toy reaches the textbook occupation") {
    const double g = 0.02, d = 0.07;
    RateNetwork net;
    net.transitions.push_back(
        {1, 0, g, TKind::generation, Line::none, Pol::unpol});
    net.transitions.push_back(
        {0, 1, d, TKind::radiative, Line::x0, Pol::unpol});
    net.rate_matrix = Mat(2);
    net.rate_matrix(0, 1) += g;
    net.rate_matrix(1, 1) -= g;
    net.rate_matrix(1, 0) += d;
    net.rate_matrix(0, 0) -= d;

    std::vector<double> n = steady_state(net);
    REQUIRE(n.size() == 2);
    CHECK(n[0] == Approx(g / (g + d)).epsilon(1e-12));
    CHECK(n[1] == Approx(d / (g + d)).epsilon(1e-12));
    CHECK(n[0] + n[1] == Approx(1.0).epsilon(1e-12));
    CHECK(line_intensity(net, n, Line::x0) ==
          Approx(d * g / (g + d)).epsilon(1e-12));
}

TEST_CASE("a generator with a two-dimensional null space is rejected") {
    RateNetwork net;
    net.rate_matrix = Mat(2);  // two isolated states, no transitions
    CHECK_THROWS_AS(steady_state(net), NumericError);
}

TEST_CASE("pump off leaves the dot empty") {
    RateNetwork net = build_cascade_network(default_table_rates(),
                                            default_pump(0.0));
    CHECK(count_kind(net, TKind::generation) == 0);
    std::vector<double> n = steady_state(net);
    CHECK(n[c_gnd] == Approx(1.0).epsilon(1e-12));
    for (int s = 0; s < c_gnd; ++s) {
        CHECK(std::abs(n[static_cast<std::size_t>(s)]) <= 1e-12);
    }
}

TEST_CASE("steady state at the calibrated pump") {
    RateNetwork net = assemble_network(default_params(), g_cal);
    std::vector<double> n = steady_state(net);

    CHECK(n[c_x1] == Approx(0.0020137008077406125).epsilon(1e-9));
    CHECK(n[c_xx_p3] == Approx(0.0005389097580698281).epsilon(1e-9));
    CHECK(n[c_xx_ss0] == Approx(0.002013700806578755).epsilon(1e-9));
    CHECK(n[c_xxx_h] == Approx(0.15514027674767378).epsilon(1e-9));
    CHECK(n[c_gnd] == Approx(1.0744132779877965e-05).epsilon(1e-9));

    // the +/- branches are perfectly symmetric
    CHECK(n[c_xx_m3] == Approx(n[c_xx_p3]).epsilon(1e-12));
    CHECK(n[c_dh_m] == Approx(n[c_dh_p]).epsilon(1e-12));
    CHECK(n[c_tt_m2] == Approx(n[c_tt_p2]).epsilon(1e-12));

    double total = 0.0;
    for (double v : n) total += v;
    CHECK(total == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("line intensities at the calibrated steady state") {
    RateNetwork net = assemble_network(default_params(), g_cal);
    std::vector<double> n = steady_state(net);

    const double i_x0 = line_intensity(net, n, Line::x0);
    const double i_xx0 = line_intensity(net, n, Line::xx0);
    CHECK(i_x0 == Approx(5.034252019351531e-06).epsilon(1e-9));
    CHECK(i_xx0 == Approx(5.034252016446888e-06).epsilon(1e-9));
    // the calibration condition itself
    CHECK(std::abs(i_xx0 - i_x0) <= 1e-9 * i_x0);

    // the +3 branch alone feeds the co-circular analyzer
    CHECK(line_intensity(net, n, Line::xx0_t3, Pol::sigma_p) ==
          Approx(1.3472743951745702e-06).epsilon(1e-9));
    CHECK(line_intensity(net, n, Line::xx0_t3, Pol::unpol) ==
          Approx(2.0 * 1.3472743951745702e-06).epsilon(1e-9));

    // an unpolarized line loses half its flux through a circular analyzer
    CHECK(line_intensity(net, n, Line::xx0, Pol::sigma_p) ==
          Approx(0.5 * i_xx0).epsilon(1e-12));
}
