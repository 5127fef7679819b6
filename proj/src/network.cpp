#include "qdcascade/network.hpp"

namespace qd {

namespace {

constexpr const char* cstate_names[n_cascade] = {
    "XXX_B+", "XXX_B-", "XXX_H", "XXX_V",
    "(H,+)", "(H,-)", "(V,+)", "(V,-)",
    "TT+2", "TT-2", "TT0",
    "XX+3", "XX-3", "XX0_ST", "XX0_SS",
    "X", "G",
};

// the seven metastable triexciton feeders, in fixed order
constexpr int tt7[7] = {c_dh_p, c_dh_m, c_dv_p, c_dv_m, c_tt_p2, c_tt_m2, c_tt_0};
constexpr int xxx4[4] = {c_xxx_bp, c_xxx_bm, c_xxx_h, c_xxx_v};

}  // namespace

const char* cstate_name(int s) { return cstate_names[s]; }

const char* line_tag(Line l) {
    switch (l) {
        case Line::xxx_i: return "i";
        case Line::xxx_ii: return "ii";
        case Line::xxx_iii: return "iii";
        case Line::xxx_iv: return "iv";
        case Line::xx0_t3: return "t3";
        case Line::xx0_t0: return "t0";
        case Line::xx0: return "xx0";
        case Line::x0: return "x0";
        case Line::untracked: return "untracked";
        case Line::none: return "none";
    }
    return "?";
}

const char* pol_tag(Pol p) {
    switch (p) {
        case Pol::unpol: return "u";
        case Pol::sigma_p: return "sp";
        case Pol::sigma_m: return "sm";
    }
    return "?";
}

CascadeRates rates_from_lifetimes(double tau_h_pm3, double tau_v_pm3,
                                  double tau_2_ss0, double tau_2_st0,
                                  double tau_0tt_ss0, double tau_hv_ss0) {
    CascadeRates k;
    k.k_h_pm3 = 1.0 / tau_h_pm3;
    k.k_v_pm3 = 1.0 / tau_v_pm3;
    k.k_2_ss0 = 1.0 / tau_2_ss0;
    k.k_2_st0 = 1.0 / tau_2_st0;
    k.k_0tt_ss0 = 1.0 / tau_0tt_ss0;
    k.k_hv_ss0 = 1.0 / tau_hv_ss0;
    return k;
}

CascadeRates rates_from_spectrum(const RateTable& t) {
    CascadeRates k;
    k.k_h_pm3 = channel_rate(t, NrChannel::h_pm3);
    k.k_v_pm3 = channel_rate(t, NrChannel::v_pm3);
    k.k_2_ss0 = channel_rate(t, NrChannel::two_ss0);
    k.k_2_st0 = channel_rate(t, NrChannel::two_st0);
    k.k_0tt_ss0 = channel_rate(t, NrChannel::ztt_ss0);
    // one shared leak averaged over all four dark-fed states
    k.k_hv_ss0 = 0.5 * (channel_rate(t, NrChannel::h_ss0) +
                        channel_rate(t, NrChannel::v_ss0));
    return k;
}

RateNetwork build_cascade_network(const CascadeRates& k, const PumpSpec& pump) {
    RateNetwork net;
    auto add = [&net](int from, int to, double rate, TKind kind, Line line, Pol pol) {
        if (rate > 0.0) {
            net.transitions.push_back({from, to, rate, kind, line, pol});
        }
    };

    const double rx = 1.0 / pump.tau_xxx;
    for (int b : {c_xxx_bp, c_xxx_bm}) {
        add(b, c_tt_p2, rx / 4.0, TKind::radiative, Line::xxx_i, Pol::sigma_m);
        add(b, c_tt_m2, rx / 4.0, TKind::radiative, Line::xxx_i, Pol::sigma_p);
        add(b, c_tt_0, rx / 2.0, TKind::radiative, Line::xxx_iv, Pol::unpol);
    }
    add(c_xxx_h, c_dh_p, rx / 2.0, TKind::radiative, Line::xxx_ii, Pol::sigma_p);
    add(c_xxx_h, c_dh_m, rx / 2.0, TKind::radiative, Line::xxx_ii, Pol::sigma_m);
    add(c_xxx_v, c_dv_p, rx / 2.0, TKind::radiative, Line::xxx_iii, Pol::sigma_p);
    add(c_xxx_v, c_dv_m, rx / 2.0, TKind::radiative, Line::xxx_iii, Pol::sigma_m);
    add(c_xx_p3, c_x1, 1.0 / pump.tau_xx, TKind::radiative, Line::xx0_t3, Pol::sigma_p);
    add(c_xx_m3, c_x1, 1.0 / pump.tau_xx, TKind::radiative, Line::xx0_t3, Pol::sigma_m);
    add(c_xx_st0, c_x1, 1.0 / pump.tau_xx, TKind::radiative, Line::xx0_t0, Pol::unpol);
    add(c_xx_ss0, c_x1, 1.0 / pump.tau_xx, TKind::radiative, Line::xx0, Pol::unpol);
    add(c_x1, c_gnd, 1.0 / pump.tau_x, TKind::radiative, Line::x0, Pol::unpol);
    if (pump.tt_radiative_escape) {
        for (int s : tt7) {
            add(s, c_x1, 1.0 / pump.tau_tt, TKind::radiative, Line::untracked,
                Pol::unpol);
        }
    }

    add(c_dh_p, c_xx_p3, k.k_h_pm3, TKind::nonradiative, Line::none, Pol::unpol);
    add(c_dh_m, c_xx_m3, k.k_h_pm3, TKind::nonradiative, Line::none, Pol::unpol);
    add(c_dv_p, c_xx_p3, k.k_v_pm3, TKind::nonradiative, Line::none, Pol::unpol);
    add(c_dv_m, c_xx_m3, k.k_v_pm3, TKind::nonradiative, Line::none, Pol::unpol);
    for (int s : {c_dh_p, c_dh_m, c_dv_p, c_dv_m}) {
        add(s, c_xx_ss0, k.k_hv_ss0, TKind::nonradiative, Line::none, Pol::unpol);
    }
    for (int s : {c_tt_p2, c_tt_m2}) {
        add(s, c_xx_ss0, k.k_2_ss0, TKind::nonradiative, Line::none, Pol::unpol);
        add(s, c_xx_st0, k.k_2_st0, TKind::nonradiative, Line::none, Pol::unpol);
    }
    add(c_tt_0, c_xx_ss0, k.k_0tt_ss0, TKind::nonradiative, Line::none, Pol::unpol);

    // pair-capture ladder: one attempt rate g per climb; at the exciton stage
    // a blockade-respecting share eta lands in the metastable configurations,
    // split by spin statistics (hole-triplet singles 3/12, full triplets 9/12),
    // the remainder relaxes into the ground-configuration biexciton.  No
    // capture out of the metastable triexciton feeders.
    const double g = pump.generation;
    const double eta = pump.eta;
    add(c_gnd, c_x1, g, TKind::generation, Line::none, Pol::unpol);
    add(c_x1, c_xx_ss0, g * (1.0 - eta), TKind::generation, Line::none, Pol::unpol);
    add(c_x1, c_xx_st0, g * eta * 1.0 / 12.0, TKind::generation, Line::none, Pol::unpol);
    add(c_x1, c_xx_p3, g * eta * 1.0 / 12.0, TKind::generation, Line::none, Pol::unpol);
    add(c_x1, c_xx_m3, g * eta * 1.0 / 12.0, TKind::generation, Line::none, Pol::unpol);
    for (int s : tt7) {
        add(c_x1, s, g * eta * 9.0 / 12.0 / 7.0, TKind::generation, Line::none,
            Pol::unpol);
    }
    for (int s : {c_xx_ss0, c_xx_p3, c_xx_m3, c_xx_st0}) {
        for (int x3 : xxx4) {
            add(s, x3, g / 4.0, TKind::generation, Line::none, Pol::unpol);
        }
    }

    net.rate_matrix = Mat(n_cascade);
    for (const Transition& t : net.transitions) {
        net.rate_matrix(t.to, t.from) += t.rate;
        net.rate_matrix(t.from, t.from) -= t.rate;
    }
    return net;
}

double pol_weight(Pol emitted, Pol analyzer) {
    if (analyzer == Pol::unpol) return 1.0;
    if (emitted == Pol::unpol) return 0.5;
    return emitted == analyzer ? 1.0 : 0.0;
}

std::vector<double> steady_state(const RateNetwork& net) {
    Mat a = net.rate_matrix;
    const int n = a.n;
    // replace the redundant last balance row with the normalization row
    for (int j = 0; j < n; ++j) a(n - 1, j) = 1.0;
    std::vector<double> b(static_cast<std::size_t>(n), 0.0);
    b[static_cast<std::size_t>(n - 1)] = 1.0;
    return solve_linear(std::move(a), std::move(b));
}

double line_intensity(const RateNetwork& net, const std::vector<double>& n,
                      Line line, Pol analyzer) {
    double s = 0.0;
    for (const Transition& t : net.transitions) {
        if (t.kind == TKind::radiative && t.line == line) {
            s += pol_weight(t.pol, analyzer) * t.rate * n[static_cast<std::size_t>(t.from)];
        }
    }
    return s;
}

}  // namespace qd
