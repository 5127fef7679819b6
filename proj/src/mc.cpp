#include "qdcascade/mc.hpp"

#include <cmath>
#include <cstddef>
#include <future>
#include <random>
#include <vector>

namespace qd {

namespace {

struct Photon {
    double t;
    double wa;  // analyzer weight in the A role (line must match)
    double wb;
    bool is_a;
    bool is_b;
};

struct Outgoing {
    double rate;
    int to;
    bool record;
    double wa, wb;
    bool is_a, is_b;
};

struct WorkerOut {
    std::vector<double> counts;
    std::vector<double> sumsq;
    double time = 0.0;
    double wa_total = 0.0;
    double wb_total = 0.0;
    std::uint64_t jumps = 0;
    std::uint64_t photons = 0;
    bool stuck = false;
};

WorkerOut run_worker(const std::vector<std::vector<Outgoing>>& out_of,
                     const std::vector<double>& total_rate, std::uint64_t quota,
                     std::uint64_t rng_seed, double tau_max, double tau_step,
                     int nside, int s0) {
    WorkerOut w;
    const int nbins = 2 * nside + 1;
    w.counts.assign(static_cast<std::size_t>(nbins), 0.0);
    w.sumsq.assign(static_cast<std::size_t>(nbins), 0.0);

    std::mt19937_64 eng(rng_seed);
    auto uniform = [&eng]() {
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };

    const double burn = 5000.0;
    const double window = tau_max + 0.5 * tau_step;
    std::vector<Photon> ph;
    ph.reserve(quota);

    int s = s0;
    double t = 0.0;
    while (w.photons < quota) {
        const double rtot = total_rate[static_cast<std::size_t>(s)];
        if (rtot <= 0.0) {
            w.stuck = true;
            break;
        }
        t += -std::log1p(-uniform()) / rtot;
        double x = uniform() * rtot;
        const auto& cand = out_of[static_cast<std::size_t>(s)];
        std::size_t pick = cand.size() - 1;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            x -= cand[i].rate;
            if (x <= 0.0) {
                pick = i;
                break;
            }
        }
        const Outgoing& tr = cand[pick];
        ++w.jumps;
        if (tr.record && t > burn) {
            ph.push_back({t, tr.wa, tr.wb, tr.is_a, tr.is_b});
            ++w.photons;
        }
        s = tr.to;
    }
    if (ph.empty()) return w;

    w.time = ph.back().t - burn;
    for (const Photon& p : ph) {
        if (p.is_a) w.wa_total += p.wa;
        if (p.is_b) w.wb_total += p.wb;
    }

    // two-pointer pair histogram over the +-tau_max window
    std::size_t lo = 0;
    for (std::size_t i = 0; i < ph.size(); ++i) {
        if (!ph[i].is_a) continue;
        const double ta = ph[i].t;
        while (lo < ph.size() && ph[lo].t < ta - window) ++lo;
        for (std::size_t j = lo; j < ph.size() && ph[j].t <= ta + window; ++j) {
            if (j == i || !ph[j].is_b) continue;
            const int k = static_cast<int>(std::llround((ph[j].t - ta) / tau_step)) + nside;
            if (k < 0 || k >= nbins) continue;
            const double wt = ph[i].wa * ph[j].wb;
            w.counts[static_cast<std::size_t>(k)] += wt;
            w.sumsq[static_cast<std::size_t>(k)] += wt * wt;
        }
    }
    return w;
}

}  // namespace

McResult mc_g2(const RateNetwork& net, LineSel a, LineSel b, double tau_max,
               double tau_step, std::uint64_t n_events, std::uint64_t seed,
               int workers) {
    if (workers < 1) workers = 1;
    const int nside = static_cast<int>(std::llround(tau_max / tau_step));
    const int nbins = 2 * nside + 1;

    // reject unobservable lines up front instead of sampling forever
    {
        const std::vector<double> n_ss = steady_state(net);
        if (line_intensity(net, n_ss, a.line, a.pol) <= 0.0 ||
            line_intensity(net, n_ss, b.line, b.pol) <= 0.0) {
            throw NumericError("mc_g2: a requested line has zero steady intensity");
        }
    }

    const std::size_t n_states = static_cast<std::size_t>(net.rate_matrix.n);
    std::vector<std::vector<Outgoing>> out_of(n_states);
    std::vector<double> total_rate(n_states, 0.0);
    for (const Transition& t : net.transitions) {
        Outgoing o;
        o.rate = t.rate;
        o.to = t.to;
        o.is_a = t.kind == TKind::radiative && t.line == a.line;
        o.is_b = t.kind == TKind::radiative && t.line == b.line;
        o.wa = o.is_a ? pol_weight(t.pol, a.pol) : 0.0;
        o.wb = o.is_b ? pol_weight(t.pol, b.pol) : 0.0;
        o.record = o.is_a || o.is_b;
        out_of[static_cast<std::size_t>(t.from)].push_back(o);
        total_rate[static_cast<std::size_t>(t.from)] += t.rate;
    }

    std::vector<std::future<WorkerOut>> futs;
    futs.reserve(static_cast<std::size_t>(workers));
    const std::uint64_t base = n_events / static_cast<std::uint64_t>(workers);
    const std::uint64_t extra = n_events % static_cast<std::uint64_t>(workers);
    const int s0 = net.rate_matrix.n - 1;  // trajectories start from the last state
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t quota = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
        const std::uint64_t rng_seed =
            seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(w) + 1);
        futs.push_back(std::async(std::launch::async, [&, quota, rng_seed] {
            return run_worker(out_of, total_rate, quota, rng_seed, tau_max,
                              tau_step, nside, s0);
        }));
    }

    McResult res;
    res.counts.assign(static_cast<std::size_t>(nbins), 0.0);
    res.sigma.assign(static_cast<std::size_t>(nbins), 0.0);
    std::vector<double> sumsq(static_cast<std::size_t>(nbins), 0.0);
    double wa_total = 0.0;
    double wb_total = 0.0;
    // merge strictly in worker order so the result is seed-deterministic
    for (auto& f : futs) {
        const WorkerOut w = f.get();
        for (int k = 0; k < nbins; ++k) {
            res.counts[static_cast<std::size_t>(k)] += w.counts[static_cast<std::size_t>(k)];
            sumsq[static_cast<std::size_t>(k)] += w.sumsq[static_cast<std::size_t>(k)];
        }
        res.total_jumps += w.jumps;
        res.total_time += w.time;
        res.achieved_events += w.photons;
        wa_total += w.wa_total;
        wb_total += w.wb_total;
        if (w.stuck) res.insufficient = true;
    }
    if (res.achieved_events < n_events) res.insufficient = true;

    res.trace.a = a;
    res.trace.b = b;
    res.trace.tau.resize(static_cast<std::size_t>(nbins));
    res.trace.g2.assign(static_cast<std::size_t>(nbins), 0.0);
    for (int k = 0; k < nbins; ++k) {
        res.trace.tau[static_cast<std::size_t>(k)] = (k - nside) * tau_step;
    }
    // pooled-rate normalization: for uncorrelated photons E[C_k] equals
    // (WA/T)(WB/T) h T, so C_k T / (WA WB h) tends to 1 in the far field
    if (wa_total > 0.0 && wb_total > 0.0 && res.total_time > 0.0) {
        const double norm = res.total_time / (wa_total * wb_total * tau_step);
        for (int k = 0; k < nbins; ++k) {
            res.trace.g2[static_cast<std::size_t>(k)] =
                res.counts[static_cast<std::size_t>(k)] * norm;
            res.sigma[static_cast<std::size_t>(k)] =
                std::sqrt(sumsq[static_cast<std::size_t>(k)]) * norm;
        }
    }
    return res;
}

}  // namespace qd
