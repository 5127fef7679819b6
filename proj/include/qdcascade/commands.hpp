#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qdcascade/config.hpp"
#include "qdcascade/network.hpp"

namespace qd {

struct G2Pair {
    Line a;
    Pol pol_a;
    Line b;
    Pol pol_b;
};

// "ii,t3,sp,sm" -> pair; polarizations optional (default unpolarized).
G2Pair parse_pair(const std::string& text);

// The measurement grid: the four triexciton lines against the four
// biexciton/exciton lines, unpolarized, plus the four circular-analyzer
// combinations on the strong circular pairs.
std::vector<G2Pair> all16_pairs();

// Each command writes its CSVs plus a .manifest.json sidecar into outdir and
// returns the CSV paths.  outdir resolution (CLI layer): --out, else
// QD_CASCADE_OUT, else the working directory.
std::vector<std::string> cmd_spectrum(const ModelParams& p,
                                      const std::string& outdir,
                                      std::uint64_t seed);
std::vector<std::string> cmd_sweep(const ModelParams& p,
                                   const std::string& outdir,
                                   std::uint64_t seed);
std::vector<std::string> cmd_g2(const ModelParams& p, const std::string& outdir,
                                std::uint64_t seed,
                                const std::vector<G2Pair>& pairs);

// Network assembly shared by cmd_g2 and the tests: spectrum-derived or
// fitted-lifetime rates, calibrated generation when requested.
RateNetwork assemble_network(const ModelParams& p, double generation);
double resolve_generation(const ModelParams& p);  // calibrates when negative

}  // namespace qd
