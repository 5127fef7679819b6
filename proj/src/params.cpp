#include "qdcascade/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qd {

namespace {

void check_array(const std::array<double, 4>& a, const char* name) {
    for (double v : a) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(name) + ": non-finite entry");
        }
        if (std::fabs(v) >= 10.0) {
            throw std::invalid_argument(std::string(name) +
                                        ": |value| >= 10 meV, outside the exchange scale");
        }
    }
}

void check_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + ": non-finite value");
    }
}

}  // namespace

void ExchangeParams::validate() const {
    check_array(delta0, "delta0");
    check_array(delta1, "delta1");
    check_array(delta2, "delta2");
    check_array(delta_e, "delta_e");
    check_array(delta_h, "delta_h");
}

TildeDeltas compute_tilde_deltas(const ExchangeParams& x) {
    TildeDeltas t;
    // level combinators over the fixed (1e1h, 1e2h, 2e1h, 2e2h) order; the
    // evaluation order below is kept left-to-right so equal-by-construction
    // cancellations stay exact
    t.d0_plus = (x.delta0[0] + x.delta0[1] + x.delta0[2] + x.delta0[3]) / 4.0;
    t.d0_minus = (x.delta0[0] + x.delta0[1] - x.delta0[2] - x.delta0[3]) / 4.0;
    t.d0_ss = (x.delta0[0] - x.delta0[1] - x.delta0[2] + x.delta0[3]) / 4.0;
    t.d1_plus = (x.delta1[0] + x.delta1[1] + x.delta1[2] + x.delta1[3]) / 8.0;
    t.d1_minus = (x.delta1[0] + x.delta1[1] - x.delta1[2] - x.delta1[3]) / 8.0;
    t.d1_ss = (x.delta1[0] - x.delta1[1] - x.delta1[2] + x.delta1[3]) / 8.0;
    t.d2_plus = (x.delta2[0] + x.delta2[1] + x.delta2[2] + x.delta2[3]) / 8.0;
    t.d2_minus = (x.delta2[0] + x.delta2[1] - x.delta2[2] - x.delta2[3]) / 8.0;
    t.de = (x.delta_e[0] + x.delta_e[1] + x.delta_e[2] + x.delta_e[3]) / 4.0;
    t.dh = (x.delta_h[0] + x.delta_h[1] + x.delta_h[2] + x.delta_h[3]) / 4.0;
    return t;
}

void EnergyParams::validate() const {
    check_finite(e_1h, "e_1h");
    check_finite(e_2h, "e_2h");
    check_finite(e_1e, "e_1e");
    check_finite(e_2e, "e_2e");
    check_finite(e_gap, "e_gap");
    check_finite(c_1e1e1e1e, "c_1e1e1e1e");
    check_finite(c_2e1e1e2e, "c_2e1e1e2e");
    check_finite(c_1h1h1h1h, "c_1h1h1h1h");
    check_finite(c_1h2h2h1h, "c_1h2h2h1h");
    check_finite(c_1e1h1h1e, "c_1e1h1h1e");
    check_finite(c_2e1h1h2e, "c_2e1h1h2e");
    check_finite(c_1e2h2h1e, "c_1e2h2h1e");
    check_finite(c_2e2h2h2e, "c_2e2h2h2e");
    check_finite(exch_ee, "exch_ee");
    check_finite(exch_hh, "exch_hh");
    check_finite(e_lo, "e_lo");
    check_finite(c_f, "c_f");
    check_finite(tau_lo, "tau_lo");
    if (e_gap <= 0.0) throw std::invalid_argument("e_gap must be positive");
    if (e_lo <= 0.0) throw std::invalid_argument("e_lo must be positive");
    if (tau_lo <= 0.0) throw std::invalid_argument("tau_lo must be positive");
    if (e_1h <= e_2h) {
        throw std::invalid_argument("hole levels out of order: need e_1h > e_2h");
    }
}

ExchangeParams default_exchange() {
    ExchangeParams x;
    x.delta0 = {0.271, 0.200, 0.200, 0.271};
    x.delta1 = {-0.033, 0.324, 0.06, 0.06};
    x.delta2 = {-0.0015, -0.0015, -0.0015, -0.0015};
    x.delta_e = {0.003, 0.003, 0.003, 0.003};
    x.delta_h = {0.003, 0.003, 0.003, 0.003};
    return x;
}

EnergyParams default_energies() {
    EnergyParams e;
    e.e_1h = -5.0;
    e.e_2h = -15.0;
    e.e_1e = 14.0;
    e.e_2e = 42.0;
    e.e_gap = 1297.0;
    e.c_1e1e1e1e = 22.7;
    e.c_2e1e1e2e = 17.0;
    e.c_1h1h1h1h = 26.3;
    e.c_1h2h2h1h = 19.7;
    e.c_1e1h1h1e = 24.3;
    e.c_2e1h1h2e = 17.3;
    e.c_1e2h2h1e = 19.1;
    e.c_2e2h2h2e = 18.8;
    e.exch_ee = 3.7;
    e.exch_hh = 6.6;
    e.e_lo = 32.0;
    e.c_f = 6.4;
    e.tau_lo = 7.0;
    return e;
}

}  // namespace qd
