#include "qdcascade/basis.hpp"

#include <cmath>

namespace qd {

namespace {

constexpr const char* basis_names[n_basis] = {
    "+2", "-1", "+3", "0", "-3", "+1", "-2",
    "+3*_ST", "0*_ST", "-3*_ST", "0*_SS",
    "+3_ST,1LO", "0_ST,1LO", "-3_ST,1LO", "0_SS,1LO",
};

constexpr const char* parent_names[n_parents] = {
    "2+", "2-", "H+", "H-", "0_TT", "V+", "V-",
    "+3*_ST", "0*_ST", "-3*_ST", "0*_SS",
    "+3_ST,1LO", "0_ST,1LO", "-3_ST,1LO", "0_SS,1LO",
};

std::array<std::array<double, n_basis>, n_parents> make_parents() {
    std::array<std::array<double, n_basis>, n_parents> p{};
    const double s2 = 1.0 / std::sqrt(2.0);
    // |2+-> = (|+2> +- |-2>) / sqrt(2)
    p[p_2plus][b_p2] = s2;
    p[p_2plus][b_m2] = s2;
    p[p_2minus][b_p2] = s2;
    p[p_2minus][b_m2] = -s2;
    // equal-weight combinations of |+1>,|-1>,|+3>,|-3> with the sign patterns
    // that diagonalize the anisotropic exchange inside the TT block
    p[p_hplus][b_p1] = 0.5;
    p[p_hplus][b_m1] = 0.5;
    p[p_hplus][b_p3] = 0.5;
    p[p_hplus][b_m3] = 0.5;
    p[p_hminus][b_p1] = 0.5;
    p[p_hminus][b_m1] = -0.5;
    p[p_hminus][b_p3] = 0.5;
    p[p_hminus][b_m3] = -0.5;
    p[p_0tt][b_z0] = 1.0;
    p[p_vplus][b_p1] = 0.5;
    p[p_vplus][b_m1] = 0.5;
    p[p_vplus][b_p3] = -0.5;
    p[p_vplus][b_m3] = -0.5;
    p[p_vminus][b_p1] = 0.5;
    p[p_vminus][b_m1] = -0.5;
    p[p_vminus][b_p3] = -0.5;
    p[p_vminus][b_m3] = 0.5;
    for (int k = 7; k < n_parents; ++k) {
        p[k][k] = 1.0;
    }
    return p;
}

}  // namespace

std::string_view basis_name(int i) { return basis_names[i]; }

bool basis_has_phonon(int i) { return i >= b_p3_lo; }

std::string_view parent_name(int p) { return parent_names[p]; }

const std::array<std::array<double, n_basis>, n_parents>& parent_vectors() {
    static const auto p = make_parents();
    return p;
}

}  // namespace qd
