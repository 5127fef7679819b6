#include "qdcascade/hamiltonian.hpp"

namespace qd {

std::array<double, n_basis> h0_diagonal(const EnergyParams& e) {
    // configuration energies: single-particle terms + direct Coulomb, with the
    // e-h attraction entering negatively.  star = excited electron present,
    // carr = ground electron configuration (phonon-dressed rows), S = hole
    // promoted to its upper level.
    const double e_star = e.e_2h + e.e_2e + e.e_gap + e.c_2e1e1e2e + e.c_1h2h2h1h
                          - e.c_1e1h1h1e - e.c_2e1h1h2e - e.c_1e2h2h1e - e.c_2e2h2h2e;
    const double e_star_s = e.e_1h + e.e_2e + e.e_gap + e.c_2e1e1e2e + e.c_1h1h1h1h
                            - 2.0 * e.c_1e1h1h1e - 2.0 * e.c_2e1h1h2e;
    const double e_carr = e.e_2h + e.e_1e + e.e_gap + e.c_1e1e1e1e + e.c_1h2h2h1h
                          - 2.0 * e.c_1e1h1h1e - 2.0 * e.c_1e2h2h1e;
    const double e_carr_s = e.e_1h + e.e_1e + e.e_gap + e.c_1e1e1e1e + e.c_1h1h1h1h
                            - 4.0 * e.c_1e1h1h1e;

    std::array<double, n_basis> d{};
    for (int i = 0; i < 7; ++i) d[i] = e_star - e.exch_ee - e.exch_hh;
    for (int i = 7; i < 10; ++i) d[i] = e_star + e.exch_ee - e.exch_hh;
    d[10] = e_star_s + e.exch_ee;
    for (int i = 11; i < 14; ++i) d[i] = e_carr - e.exch_hh + e.e_lo;
    d[14] = e_carr_s + e.e_lo;
    return d;
}

HamiltonianMatrix build_hamiltonian(const EnergyParams& e, const ExchangeParams& x,
                                    double detuning) {
    EnergyParams ed = e;
    ed.e_2e = e.e_1e + e.e_lo + detuning;
    const std::array<double, n_basis> diag = h0_diagonal(ed);
    const TildeDeltas t = compute_tilde_deltas(x);
    const double cf = e.c_f;
    const double de = t.de;
    const double dh = t.dh;

    struct Entry {
        int i, j;
        double v;
    };
    // exchange / phonon coupling block (upper triangle incl. two diagonal
    // entries); the full matrix enters as H = diag + C/2
    const Entry ent[] = {
        {0, 0, t.d0_plus}, {0, 1, 4.0 * dh}, {0, 2, 4.0 * de}, {0, 3, t.d1_plus},
        {0, 8, -t.d1_minus}, {0, 10, t.d1_ss}, {0, 11, -2.0 * de},
        {1, 2, t.d2_plus}, {1, 3, 8.0 * de}, {1, 4, t.d1_plus}, {1, 7, t.d2_minus},
        {1, 9, -t.d1_minus}, {1, 12, -4.0 * de},
        {2, 3, 8.0 * dh}, {2, 5, t.d1_plus}, {2, 7, -t.d0_minus},
        {3, 4, 8.0 * dh}, {3, 5, 8.0 * de}, {3, 6, t.d1_plus}, {3, 10, t.d0_ss},
        {4, 5, t.d2_plus}, {4, 6, 4.0 * de}, {4, 9, t.d0_minus},
        {5, 6, 4.0 * dh}, {5, 7, t.d1_minus}, {5, 9, -t.d2_minus}, {5, 12, 4.0 * de},
        {6, 6, t.d0_plus}, {6, 8, t.d1_minus}, {6, 10, t.d1_ss}, {6, 13, 2.0 * de},
        {7, 8, 8.0 * dh}, {7, 10, -4.0 * dh}, {7, 11, cf}, {7, 12, -4.0 * dh},
        {7, 14, 2.0 * dh},
        {8, 9, 8.0 * dh}, {8, 11, -4.0 * dh}, {8, 12, cf}, {8, 13, -4.0 * dh},
        {9, 10, 4.0 * dh}, {9, 12, -4.0 * dh}, {9, 13, cf}, {9, 14, -2.0 * dh},
        {10, 11, 2.0 * dh}, {10, 13, -2.0 * dh}, {10, 14, cf},
        {11, 12, 4.0 * dh}, {11, 14, -2.0 * dh},
        {12, 13, 4.0 * dh},
        {13, 14, 2.0 * dh},
    };

    HamiltonianMatrix h;
    h.m = Mat(n_basis);
    h.detuning = detuning;
    for (const Entry& en : ent) {
        const double half = 0.5 * en.v;
        h.m(en.i, en.j) += half;
        if (en.i != en.j) h.m(en.j, en.i) += half;
    }
    for (int i = 0; i < n_basis; ++i) {
        h.m(i, i) += diag[static_cast<std::size_t>(i)];
    }
    return h;
}

Mat single_exciton_matrix(double d0, double d1, double d2, double de, double dh) {
    // |+1>, |-1>, |+2>, |-2> block for one (electron level, hole level) pair
    Mat m(4);
    m(0, 0) = 0.5 * d0;
    m(1, 1) = 0.5 * d0;
    m(2, 2) = -0.5 * d0;
    m(3, 3) = -0.5 * d0;
    m(0, 1) = m(1, 0) = 0.5 * d1;
    m(2, 3) = m(3, 2) = 0.5 * d2;
    m(0, 2) = m(2, 0) = 0.5 * de;
    m(1, 3) = m(3, 1) = 0.5 * de;
    m(0, 3) = m(3, 0) = 0.5 * dh;
    m(1, 2) = m(2, 1) = 0.5 * dh;
    return m;
}

}  // namespace qd
