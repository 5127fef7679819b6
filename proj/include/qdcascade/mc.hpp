#pragma once
#include <cstdint>
#include <vector>

#include "qdcascade/dynamics.hpp"

namespace qd {

struct McResult {
    CorrelationTrace trace;            // g2 only (no convolution)
    std::vector<double> counts;        // weighted pair counts per bin
    std::vector<double> sigma;         // per-bin standard error on g2
    std::uint64_t total_jumps = 0;
    double total_time = 0.0;           // summed trajectory time, ps
    bool insufficient = false;         // fewer events than requested
    std::uint64_t achieved_events = 0; // emitted A/B photons actually seen
};

// Stochastic-trajectory estimate of the same two-line correlation the
// rate-equation solver computes.  Deterministic for a fixed seed: a fixed
// worker count with per-worker counter-offset generators, merged in worker
// order.  Polarizer projection enters as photon weights, so fractional
// analyzer transmissions stay exact.
McResult mc_g2(const RateNetwork& net, LineSel a, LineSel b, double tau_max,
               double tau_step, std::uint64_t n_events, std::uint64_t seed,
               int workers = 8);

}  // namespace qd
