#pragma once
#include <array>

namespace qd {

// One value per (electron level, hole level) pair, fixed order 1e1h, 1e2h, 2e1h, 2e2h.
// delta0/1/2 are the isotropic / bright-anisotropic / dark-anisotropic e-h exchange
// constants; delta_e / delta_h mix dark and bright excitons by flipping a single
// electron / hole spin.  All in meV.
struct ExchangeParams {
    std::array<double, 4> delta0{};
    std::array<double, 4> delta1{};
    std::array<double, 4> delta2{};
    std::array<double, 4> delta_e{};
    std::array<double, 4> delta_h{};

    void validate() const;  // throws std::invalid_argument on non-finite or |x| >= 10 meV
};

// Reduced exchange combinations that enter the coupled biexciton matrix.
// The +/- combinators average / difference over the electron level, the ss ones
// single out the level-antisymmetric part.
struct TildeDeltas {
    double d0_plus, d0_minus, d0_ss;
    double d1_plus, d1_minus, d1_ss;
    double d2_plus, d2_minus;
    double de, dh;
};

TildeDeltas compute_tilde_deltas(const ExchangeParams& x);

// Single-carrier energies, Coulomb integrals, carrier-carrier exchange and the
// LO-phonon constants.  Energies meV, tau_lo ps.
struct EnergyParams {
    double e_1h, e_2h;        // hole levels (negative, e_1h > e_2h)
    double e_1e, e_2e;        // electron levels
    double e_gap;             // fundamental gap
    double c_1e1e1e1e, c_2e1e1e2e;              // e-e direct Coulomb
    double c_1h1h1h1h, c_1h2h2h1h;              // h-h direct Coulomb
    double c_1e1h1h1e, c_2e1h1h2e;              // e-h direct Coulomb
    double c_1e2h2h1e, c_2e2h2h2e;
    double exch_ee, exch_hh;  // e-e and h-h exchange splittings
    double e_lo;              // LO phonon energy
    double c_f;               // Frohlich coupling constant
    double tau_lo;            // LO phonon lifetime

    void validate() const;  // finite, ordering and positivity checks
};

ExchangeParams default_exchange();
EnergyParams default_energies();

}  // namespace qd
