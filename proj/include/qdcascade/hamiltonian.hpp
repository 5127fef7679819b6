#pragma once
#include <array>

#include "qdcascade/basis.hpp"
#include "qdcascade/linalg.hpp"
#include "qdcascade/params.hpp"

namespace qd {

struct HamiltonianMatrix {
    Mat m;            // 15x15, symmetric, meV
    double detuning;  // electron level splitting minus LO energy, meV
};

// Diagonal (uncoupled) energies in the fixed basis order, from the carrier
// energy bookkeeping: direct Coulomb shifts plus carrier-carrier exchange,
// +e_lo on the phonon-dressed rows.  Uses e_2e as given.
std::array<double, n_basis> h0_diagonal(const EnergyParams& e);

// Full coupled matrix: h0 diagonal plus one half times the exchange/phonon
// coupling block.  The detuning is applied by moving the upper electron level,
// e_2e := e_1e + e_lo + detuning, so every energy containing e_2e shifts
// consistently.  Bit-exact symmetric by construction.
HamiltonianMatrix build_hamiltonian(const EnergyParams& e, const ExchangeParams& x,
                                    double detuning);

// Single-exciton 4x4 exchange matrix in the basis |+1>,|-1>,|+2>,|-2> for one
// (electron level, hole level) pair.  Documentation helper: the 15x15 coupling
// block above is assembled from combinations of these constants.
Mat single_exciton_matrix(double d0, double d1, double d2, double de, double dh);

}  // namespace qd
