#pragma once
#include <array>
#include <vector>

#include "qdcascade/hamiltonian.hpp"

namespace qd {

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending, meV
    Mat eigenvectors;                 // columns, orthonormal
    double residual_norm;             // max_k ||H v_k - l_k v_k|| / ||H||_F
};

Spectrum eigendecompose(const HamiltonianMatrix& h, double tol = 1e-12,
                        int max_sweeps = 100);

// Eigenstates named by leading parentage; a bijection onto the 15 parents.
struct LabeledSpectrum {
    Spectrum spec;
    double detuning = 0.0;
    std::array<int, n_basis> label;           // label[k] = parent index of eigenstate k
    std::array<int, n_basis> state_of_label;  // inverse permutation
    std::array<double, n_basis> overlap;      // squared overlap with assigned parent
    std::vector<int> warned;                  // eigenstate ids with overlap < 0.5
};

// Greedy maximum-overlap assignment against the analytic parents; ties broken
// by eigenvalue order.  Eigenstates whose best assigned overlap is below 0.5
// land on the warned list (strong-mixing regime near crossings).
LabeledSpectrum label_states(const Spectrum& s, double detuning);

// Same assignment against an arbitrary reference set (row r = vector that
// carries label r); used for adiabatic continuation along sweeps.
LabeledSpectrum label_states_against(const Spectrum& s, double detuning,
                                     const Mat& reference);

// Squared eigenvector components on the four phonon-dressed basis states,
// keyed by assigned label.  Column order +3_ST,1LO / 0_ST,1LO / -3_ST,1LO /
// 0_SS,1LO.  total = row sum (the phonon content of that labeled state).
struct PhononProjection {
    std::array<std::array<double, 4>, n_parents> prob;
    std::array<double, n_parents> total;
};

PhononProjection phonon_projection(const LabeledSpectrum& ls);

// Non-radiative relaxation rates: phonon-containing probability divided by the
// LO phonon lifetime.  rate keeps a clamped copy (entries below clamp -> 0,
// numerical noise floor far from resonance); prob stays raw.
struct RateTable {
    std::array<std::array<double, 4>, n_parents> prob;
    std::array<std::array<double, 4>, n_parents> rate;
    double tau_lo;
    double clamp;
};

RateTable relaxation_rates(const PhononProjection& p, double tau_lo,
                           double clamp = 1e-9);

// Pair-averaged relaxation channels (the degenerate-pair vector choice is
// arbitrary, so observables are averaged over the pair members).
enum class NrChannel {
    h_pm3,     // |H+->,|H-> onto the +-3_ST phonon states
    v_pm3,     // |V+>,|V->  "
    two_pm3,   // |2+>,|2->  "
    ztt_pm3,   // |0_TT>     "
    h_st0,     // ... onto the 0_ST phonon state
    v_st0,
    two_st0,
    ztt_st0,
    h_ss0,     // ... onto the 0_SS phonon state
    v_ss0,
    two_ss0,
    ztt_ss0,
};

double channel_rate(const RateTable& t, NrChannel c, bool clamped = true);
double channel_lifetime(const RateTable& t, NrChannel c);  // 1/rate, inf when 0

struct SweepPoint {
    double detuning;
    LabeledSpectrum labeled;
    PhononProjection proj;
    RateTable rates;
};

struct SweepResult {
    std::vector<SweepPoint> points;  // ordered by detuning
};

// Diagonalize across [d_min, d_max]; the first point is labeled against the
// analytic parents, later points against the previous point's eigenvectors
// (adiabatic continuation).  Diagonalizations run in parallel, labeling is a
// serial pass, so the result is deterministic.
SweepResult detuning_sweep(const EnergyParams& e, const ExchangeParams& x,
                           double d_min, double d_max, int n);

}  // namespace qd
