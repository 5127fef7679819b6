#pragma once
#include <functional>
#include <vector>

#include "qdcascade/network.hpp"

namespace qd {

struct LineSel {
    Line line;
    Pol pol = Pol::unpol;
};

struct CorrelationTrace {
    std::vector<double> tau;        // ps, symmetric grid around 0
    std::vector<double> g2;         // raw conditional correlation
    std::vector<double> convolved;  // after detector response (empty if none)
    LineSel a;
    LineSel b;
    double fwhm = 0.0;
};

// Bisect the pair-capture rate until the ground-configuration biexciton line
// and the exciton line have equal steady-state intensity.  builder maps a
// candidate generation rate to the full network.  Throws NumericError when the
// bracket does not straddle a root or the tolerance is not met in 200 steps.
double calibrate_generation(
    const std::function<RateNetwork(double)>& builder, double lo = 1e-6,
    double hi = 1.0, double rel_tol = 1e-9);

// Propagate occupations over a uniform grid: one step matrix expm(R h),
// applied repeatedly.  Returns occupations at every grid time (including t=0).
std::vector<std::vector<double>> evolve(const RateNetwork& net,
                                        const std::vector<double>& n0,
                                        int n_steps, double h);

// Two-sided conditional correlation of photon B at delay tau after photon A.
// Positive delays condition on an A emission, renormalize the post-emission
// occupations, and track the B flux against its steady value; negative delays
// swap the roles.  Throws NumericError when either line has zero steady
// intensity.
CorrelationTrace g2_trace(const RateNetwork& net, LineSel a, LineSel b,
                          double tau_max, double tau_step);

// Gaussian detector response (FWHM in ps), constant-extension padding at the
// trace edges.  Rejects grids too coarse to resolve the response
// (step > fwhm/4).  Fills trace.convolved.
void convolve_response(CorrelationTrace& trace, double fwhm);

}  // namespace qd
