#pragma once
#include <array>
#include <string_view>

namespace qd {

inline constexpr int n_basis = 15;

// Fixed basis ordering of the coupled biexciton problem.  Indices 0-6 are the
// e-triplet--h-triplet (TT) configurations labeled by total angular momentum
// projection, 7-10 the excited spin-singlet configurations, 11-14 the ground
// configurations dressed with one LO phonon.  |+-4> is fully dark and excluded.
enum BasisIndex {
    b_p2 = 0,   // |+2>
    b_m1,       // |-1>
    b_p3,       // |+3>
    b_z0,       // |0>
    b_m3,       // |-3>
    b_p1,       // |+1>
    b_m2,       // |-2>
    b_p3s,      // |+3*_ST>
    b_z0s,      // |0*_ST>
    b_m3s,      // |-3*_ST>
    b_ss0s,     // |0*_SS>
    b_p3_lo,    // |+3_ST,1LO>
    b_st0_lo,   // |0_ST,1LO>
    b_m3_lo,    // |-3_ST,1LO>
    b_ss0_lo,   // |0_SS,1LO>
};

std::string_view basis_name(int i);
bool basis_has_phonon(int i);       // true iff i >= 11

// Zero-coupling eigenstates ("parents") used to name the mixed eigenstates.
// Parents 0-6 are the symmetric/antisymmetric combinations inside the TT block,
// parents 7-14 coincide with basis states 7-14.
inline constexpr int n_parents = 15;
enum ParentIndex {
    p_2plus = 0,
    p_2minus,
    p_hplus,
    p_hminus,
    p_0tt,
    p_vplus,
    p_vminus,
    // 7..14 track the basis indices
};

std::string_view parent_name(int p);
const std::array<std::array<double, n_basis>, n_parents>& parent_vectors();

}  // namespace qd
