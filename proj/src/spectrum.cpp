#include "qdcascade/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <thread>

namespace qd {

Spectrum eigendecompose(const HamiltonianMatrix& h, double tol, int max_sweeps) {
    JacobiResult jr = jacobi_eigh(h.m, tol, max_sweeps);
    Spectrum s;
    s.eigenvalues = std::move(jr.values);
    s.eigenvectors = std::move(jr.vectors);

    const double hnorm = frob_norm(h.m);
    double worst = 0.0;
    if (hnorm > 0.0) {
        for (int k = 0; k < n_basis; ++k) {
            double r2 = 0.0;
            for (int i = 0; i < n_basis; ++i) {
                double hv = 0.0;
                for (int j = 0; j < n_basis; ++j) {
                    hv += h.m(i, j) * s.eigenvectors(j, k);
                }
                const double diff = hv - s.eigenvalues[static_cast<std::size_t>(k)] *
                                             s.eigenvectors(i, k);
                r2 += diff * diff;
            }
            worst = std::max(worst, std::sqrt(r2));
        }
        worst /= hnorm;
    }
    s.residual_norm = worst;
    return s;
}

namespace {

// squared overlaps of every eigenstate against every reference vector;
// ref is indexed [parent][basis component]
LabeledSpectrum assign_labels(const Spectrum& s, double detuning,
                              const std::array<std::array<double, n_basis>, n_parents>& ref) {
    struct Cand {
        double o;
        int k;  // eigenstate
        int p;  // parent
    };
    std::vector<Cand> cands;
    cands.reserve(n_parents * n_basis);
    for (int p = 0; p < n_parents; ++p) {
        for (int k = 0; k < n_basis; ++k) {
            double dot = 0.0;
            for (int i = 0; i < n_basis; ++i) {
                dot += ref[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] *
                       s.eigenvectors(i, k);
            }
            cands.push_back({dot * dot, k, p});
        }
    }
    // best overlap first; ties resolved toward the lower eigenstate, then the
    // lower parent, so the assignment is deterministic
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.o != b.o) return a.o > b.o;
        if (a.k != b.k) return a.k < b.k;
        return a.p < b.p;
    });

    LabeledSpectrum ls;
    ls.spec = s;
    ls.detuning = detuning;
    ls.label.fill(-1);
    ls.state_of_label.fill(-1);
    ls.overlap.fill(0.0);
    for (const Cand& c : cands) {
        if (ls.label[static_cast<std::size_t>(c.k)] < 0 &&
            ls.state_of_label[static_cast<std::size_t>(c.p)] < 0) {
            ls.label[static_cast<std::size_t>(c.k)] = c.p;
            ls.state_of_label[static_cast<std::size_t>(c.p)] = c.k;
            ls.overlap[static_cast<std::size_t>(c.k)] = c.o;
        }
    }
    for (int k = 0; k < n_basis; ++k) {
        if (ls.overlap[static_cast<std::size_t>(k)] < 0.5) {
            ls.warned.push_back(k);
        }
    }
    return ls;
}

}  // namespace

LabeledSpectrum label_states(const Spectrum& s, double detuning) {
    return assign_labels(s, detuning, parent_vectors());
}

LabeledSpectrum label_states_against(const Spectrum& s, double detuning,
                                     const Mat& reference) {
    std::array<std::array<double, n_basis>, n_parents> ref{};
    for (int p = 0; p < n_parents; ++p) {
        for (int i = 0; i < n_basis; ++i) {
            ref[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] =
                reference(p, i);
        }
    }
    return assign_labels(s, detuning, ref);
}

PhononProjection phonon_projection(const LabeledSpectrum& ls) {
    PhononProjection pp{};
    for (int p = 0; p < n_parents; ++p) {
        const int k = ls.state_of_label[static_cast<std::size_t>(p)];
        double tot = 0.0;
        for (int c = 0; c < 4; ++c) {
            const double v = ls.spec.eigenvectors(b_p3_lo + c, k);
            pp.prob[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] = v * v;
            tot += v * v;
        }
        pp.total[static_cast<std::size_t>(p)] = tot;
    }
    return pp;
}

RateTable relaxation_rates(const PhononProjection& p, double tau_lo, double clamp) {
    RateTable t;
    t.prob = p.prob;
    t.tau_lo = tau_lo;
    t.clamp = clamp;
    for (int l = 0; l < n_parents; ++l) {
        for (int c = 0; c < 4; ++c) {
            const double r = p.prob[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)] / tau_lo;
            // rates below the clamp are numerical noise far from resonance
            t.rate[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)] =
                r < clamp ? 0.0 : r;
        }
    }
    return t;
}

namespace {

struct ChannelSpec {
    int labels[2];
    int nl;
    int cols[2];
    int nc;
};

ChannelSpec channel_spec(NrChannel c) {
    // columns: 0 = +3_ST,1LO  1 = 0_ST,1LO  2 = -3_ST,1LO  3 = 0_SS,1LO
    switch (c) {
        case NrChannel::h_pm3:   return {{p_hplus, p_hminus}, 2, {0, 2}, 2};
        case NrChannel::v_pm3:   return {{p_vplus, p_vminus}, 2, {0, 2}, 2};
        case NrChannel::two_pm3: return {{p_2plus, p_2minus}, 2, {0, 2}, 2};
        case NrChannel::ztt_pm3: return {{p_0tt, 0}, 1, {0, 2}, 2};
        case NrChannel::h_st0:   return {{p_hplus, p_hminus}, 2, {1, 0}, 1};
        case NrChannel::v_st0:   return {{p_vplus, p_vminus}, 2, {1, 0}, 1};
        case NrChannel::two_st0: return {{p_2plus, p_2minus}, 2, {1, 0}, 1};
        case NrChannel::ztt_st0: return {{p_0tt, 0}, 1, {1, 0}, 1};
        case NrChannel::h_ss0:   return {{p_hplus, p_hminus}, 2, {3, 0}, 1};
        case NrChannel::v_ss0:   return {{p_vplus, p_vminus}, 2, {3, 0}, 1};
        case NrChannel::two_ss0: return {{p_2plus, p_2minus}, 2, {3, 0}, 1};
        case NrChannel::ztt_ss0: return {{p_0tt, 0}, 1, {3, 0}, 1};
    }
    throw NumericError("channel_spec: bad channel");
}

}  // namespace

double channel_rate(const RateTable& t, NrChannel c, bool clamped) {
    const ChannelSpec cs = channel_spec(c);
    double sum = 0.0;
    for (int li = 0; li < cs.nl; ++li) {
        for (int ci = 0; ci < cs.nc; ++ci) {
            const std::size_t l = static_cast<std::size_t>(cs.labels[li]);
            const std::size_t col = static_cast<std::size_t>(cs.cols[ci]);
            sum += clamped ? t.rate[l][col] : t.prob[l][col] / t.tau_lo;
        }
    }
    return sum / cs.nl;  // average over the degenerate pair, sum over columns
}

double channel_lifetime(const RateTable& t, NrChannel c) {
    const double r = channel_rate(t, c, true);
    if (r <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / r;
}

SweepResult detuning_sweep(const EnergyParams& e, const ExchangeParams& x,
                           double d_min, double d_max, int n) {
    if (n < 1) throw NumericError("detuning_sweep: need at least one point");
    SweepResult out;
    out.points.resize(static_cast<std::size_t>(n));

    std::vector<double> dets(static_cast<std::size_t>(n));
    std::vector<Spectrum> specs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        dets[static_cast<std::size_t>(i)] =
            (n == 1)       ? d_min
            : (i == n - 1) ? d_max
                           : d_min + (d_max - d_min) * i / (n - 1);
    }

    // diagonalizations are independent; chunk them across hardware threads
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int nworkers = std::max(1, std::min(n, hw > 0 ? hw : 4));
    std::vector<std::future<void>> futs;
    futs.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (int i = w; i < n; i += nworkers) {
                specs[static_cast<std::size_t>(i)] = eigendecompose(
                    build_hamiltonian(e, x, dets[static_cast<std::size_t>(i)]));
            }
        }));
    }
    for (auto& f : futs) f.get();

    // serial continuation pass: label against the previous point's vectors so
    // identities follow branches adiabatically through the anticrossings
    Mat ref(n_basis);
    for (int i = 0; i < n; ++i) {
        const double d = dets[static_cast<std::size_t>(i)];
        LabeledSpectrum ls =
            (i == 0) ? label_states(specs[static_cast<std::size_t>(i)], d)
                     : label_states_against(specs[static_cast<std::size_t>(i)], d, ref);
        for (int p = 0; p < n_parents; ++p) {
            const int k = ls.state_of_label[static_cast<std::size_t>(p)];
            for (int c = 0; c < n_basis; ++c) {
                ref(p, c) = ls.spec.eigenvectors(c, k);
            }
        }
        SweepPoint& pt = out.points[static_cast<std::size_t>(i)];
        pt.detuning = d;
        pt.proj = phonon_projection(ls);
        pt.rates = relaxation_rates(pt.proj, e.tau_lo);
        pt.labeled = std::move(ls);
    }
    return out;
}

}  // namespace qd
