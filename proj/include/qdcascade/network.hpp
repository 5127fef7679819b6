#pragma once
#include <string>
#include <vector>

#include "qdcascade/linalg.hpp"
#include "qdcascade/spectrum.hpp"

namespace qd {

// Classical occupation network for the triexciton -> biexciton -> exciton ->
// ground cascade.  Dark-exciton-like triexcitons and the bright doublet are
// tracked per spin projection; the seven phonon-coupled biexcitons collapse
// onto their pair-averaged representatives.
inline constexpr int n_cascade = 17;

enum CState : int {
    c_xxx_bp = 0,  // bright triexciton, +3/2 core
    c_xxx_bm,      // bright triexciton, -3/2 core
    c_xxx_h,       // H-active central doublet member
    c_xxx_v,       // V-active central doublet member
    c_dh_p,        // H-fed dark-like triexciton, +
    c_dh_m,
    c_dv_p,        // V-fed dark-like triexciton, +
    c_dv_m,
    c_tt_p2,       // triplet-triplet biexciton, Jz = +2
    c_tt_m2,
    c_tt_0,
    c_xx_p3,       // metastable biexciton +3
    c_xx_m3,
    c_xx_st0,      // metastable biexciton 0 (triplet-hole)
    c_xx_ss0,      // ground-configuration biexciton
    c_x1,          // exciton
    c_gnd,
};

const char* cstate_name(int s);

// Spectral lines a transition can emit into.  untracked marks decays that
// produce no photon in any detection channel we model.
enum class Line {
    xxx_i,    // triexciton quartet: bright -> TT(+-2)
    xxx_ii,   // triexciton: H doublet -> dark-like
    xxx_iii,  // triexciton: V doublet -> dark-like
    xxx_iv,   // triexciton: bright -> TT(0)
    xx0_t3,   // biexciton +-3 -> exciton
    xx0_t0,   // biexciton 0_ST -> exciton
    xx0,      // ground-configuration biexciton -> exciton
    x0,       // exciton -> vacuum
    untracked,
    none,     // non-radiative / generation
};

const char* line_tag(Line l);  // short tag used in filenames/CSV

enum class Pol { unpol, sigma_p, sigma_m };

const char* pol_tag(Pol p);

enum class TKind { radiative, nonradiative, generation };

struct Transition {
    int from;
    int to;
    double rate;  // 1/ps
    TKind kind;
    Line line;
    Pol pol;
};

// The six non-radiative relaxation channels of the cascade: four
// flip-flop/spin-flip paths out of the triplet septet plus one shared slow
// leak from the dark-fed states into the ground-configuration biexciton.
struct CascadeRates {
    double k_h_pm3;    // H-fed dark states -> +-3 metastable biexciton
    double k_v_pm3;    // V-fed dark states -> +-3 metastable biexciton
    double k_2_ss0;    // TT(+-2) -> ground-configuration biexciton
    double k_2_st0;    // TT(+-2) -> 0_ST metastable biexciton
    double k_0tt_ss0;  // TT(0)   -> ground-configuration biexciton
    double k_hv_ss0;   // all four dark-fed states -> ground biexciton
};

CascadeRates rates_from_lifetimes(double tau_h_pm3, double tau_v_pm3,
                                  double tau_2_ss0, double tau_2_st0,
                                  double tau_0tt_ss0, double tau_hv_ss0);
CascadeRates rates_from_spectrum(const RateTable& t);

struct PumpSpec {
    double generation;          // pair-capture attempt rate, 1/ps
    double eta;                 // spin-blockade branching into triplet captures
    bool tt_radiative_escape;   // TT septet decays radiatively to the exciton
    double tau_xxx;             // radiative lifetimes, ps
    double tau_xx;
    double tau_x;
    double tau_tt;
};

struct RateNetwork {
    std::vector<Transition> transitions;
    Mat rate_matrix;  // column-generator: d n / dt = R n, columns sum to zero
};

RateNetwork build_cascade_network(const CascadeRates& k, const PumpSpec& pump);

// Polarizer projection weight for an emitted transition seen through an
// analyzer setting.
double pol_weight(Pol emitted, Pol analyzer);

// Null-space occupation vector (sums to 1) of the network generator.
std::vector<double> steady_state(const RateNetwork& net);

// Photon flux into a line through an analyzer, for occupations n.
double line_intensity(const RateNetwork& net, const std::vector<double>& n,
                      Line line, Pol analyzer = Pol::unpol);

}  // namespace qd
