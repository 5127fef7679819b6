#include "qdcascade/commands.hpp"

#include <cstdio>
#include <future>
#include <limits>
#include <string>

#include "qdcascade/csvio.hpp"
#include "qdcascade/dynamics.hpp"
#include "qdcascade/hamiltonian.hpp"

namespace qd {

namespace {

Line parse_line_tag(const std::string& s) {
    if (s == "i") return Line::xxx_i;
    if (s == "ii") return Line::xxx_ii;
    if (s == "iii") return Line::xxx_iii;
    if (s == "iv") return Line::xxx_iv;
    if (s == "t3") return Line::xx0_t3;
    if (s == "t0") return Line::xx0_t0;
    if (s == "xx0") return Line::xx0;
    if (s == "x0") return Line::x0;
    throw ConfigError("unknown line tag '" + s +
                      "' (expected i, ii, iii, iv, t3, t0, xx0 or x0)");
}

Pol parse_pol_tag(const std::string& s) {
    if (s == "u") return Pol::unpol;
    if (s == "sp") return Pol::sigma_p;
    if (s == "sm") return Pol::sigma_m;
    throw ConfigError("unknown polarization tag '" + s + "' (expected u, sp or sm)");
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

CascadeRates resolve_rates(const ModelParams& p) {
    const DynamicsParams& d = p.dynamics;
    if (d.rate_source == RateSource::table) {
        return rates_from_lifetimes(d.tau_h_pm3, d.tau_v_pm3, d.tau_2_ss0,
                                    d.tau_2_st0, d.tau_0tt_ss0, d.tau_hv_ss0);
    }
    const HamiltonianMatrix h =
        build_hamiltonian(p.energies, p.exchange, d.detuning);
    const LabeledSpectrum ls = label_states(eigendecompose(h), d.detuning);
    if (!ls.warned.empty()) {
        std::fprintf(stderr,
                     "warning: %zu eigenstates at detuning %s meV are weakly "
                     "identified (overlap < 0.5)\n",
                     ls.warned.size(), format12(d.detuning).c_str());
    }
    return rates_from_spectrum(
        relaxation_rates(phonon_projection(ls), p.energies.tau_lo));
}

PumpSpec pump_spec(const ModelParams& p, double generation) {
    return {generation,       p.dynamics.pump_eta, p.dynamics.tt_radiative_escape,
            p.dynamics.tau_xxx, p.dynamics.tau_xx,   p.dynamics.tau_x,
            p.dynamics.tau_tt};
}

void write_spectrum_rows(CsvWriter& csv, const LabeledSpectrum& ls,
                         const PhononProjection& proj, const RateTable& rates) {
    csv.header({"state", "energy_mev", "parent_overlap",
                "p_p3st_1lo", "p_st0_1lo", "p_m3st_1lo", "p_ss0_1lo", "p_phonon",
                "rate_p3st_1lo", "rate_st0_1lo", "rate_m3st_1lo", "rate_ss0_1lo",
                "life_p3st_1lo", "life_st0_1lo", "life_m3st_1lo", "life_ss0_1lo"});
    for (int p = 0; p < n_parents; ++p) {
        const int k = ls.state_of_label[static_cast<std::size_t>(p)];
        csv.cell(std::string(parent_name(p)));
        csv.cell(ls.spec.eigenvalues[static_cast<std::size_t>(k)]);
        csv.cell(ls.overlap[static_cast<std::size_t>(k)]);
        for (int c = 0; c < 4; ++c) {
            csv.cell(proj.prob[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)]);
        }
        csv.cell(proj.total[static_cast<std::size_t>(p)]);
        for (int c = 0; c < 4; ++c) {
            csv.cell(rates.rate[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)]);
        }
        for (int c = 0; c < 4; ++c) {
            const double r =
                rates.rate[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)];
            csv.cell(r > 0.0 ? 1.0 / r : std::numeric_limits<double>::infinity());
        }
        csv.endrow();
    }
}

}  // namespace

G2Pair parse_pair(const std::string& text) {
    const std::vector<std::string> parts = split_commas(text);
    if (parts.size() != 2 && parts.size() != 4) {
        throw ConfigError("pair must be 'lineA,lineB' or 'lineA,lineB,polA,polB', got '" +
                          text + "'");
    }
    G2Pair pr;
    pr.a = parse_line_tag(parts[0]);
    pr.b = parse_line_tag(parts[1]);
    pr.pol_a = parts.size() == 4 ? parse_pol_tag(parts[2]) : Pol::unpol;
    pr.pol_b = parts.size() == 4 ? parse_pol_tag(parts[3]) : Pol::unpol;
    return pr;
}

std::vector<G2Pair> all16_pairs() {
    std::vector<G2Pair> out;
    const Line top[4] = {Line::xxx_i, Line::xxx_ii, Line::xxx_iii, Line::xxx_iv};
    const Line bottom[4] = {Line::xx0, Line::xx0_t0, Line::xx0_t3, Line::x0};
    for (Line a : top) {
        for (Line b : bottom) {
            out.push_back({a, Pol::unpol, b, Pol::unpol});
        }
    }
    // circular-analyzer combinations on the strong circular pairs
    out.push_back({Line::xxx_ii, Pol::sigma_p, Line::xx0_t3, Pol::sigma_p});
    out.push_back({Line::xxx_ii, Pol::sigma_p, Line::xx0_t3, Pol::sigma_m});
    out.push_back({Line::xxx_iii, Pol::sigma_p, Line::xx0_t3, Pol::sigma_p});
    out.push_back({Line::xxx_iii, Pol::sigma_p, Line::xx0_t3, Pol::sigma_m});
    return out;
}

RateNetwork assemble_network(const ModelParams& p, double generation) {
    return build_cascade_network(resolve_rates(p), pump_spec(p, generation));
}

double resolve_generation(const ModelParams& p) {
    if (p.dynamics.generation >= 0.0) {
        return p.dynamics.generation;
    }
    const CascadeRates rates = resolve_rates(p);
    return calibrate_generation([&](double g) {
        return build_cascade_network(rates, pump_spec(p, g));
    });
}

std::vector<std::string> cmd_spectrum(const ModelParams& p,
                                      const std::string& outdir,
                                      std::uint64_t seed) {
    const double det = p.dynamics.detuning;
    const HamiltonianMatrix h = build_hamiltonian(p.energies, p.exchange, det);
    const LabeledSpectrum ls = label_states(eigendecompose(h), det);
    if (!ls.warned.empty()) {
        std::fprintf(stderr,
                     "warning: %zu eigenstates at detuning %s meV are weakly "
                     "identified (overlap < 0.5)\n",
                     ls.warned.size(), format12(det).c_str());
    }
    const PhononProjection proj = phonon_projection(ls);
    const RateTable rates = relaxation_rates(proj, p.energies.tau_lo);

    CsvWriter csv;
    csv.path = outdir + "/spectrum.csv";
    write_spectrum_rows(csv, ls, proj, rates);
    csv.flush();
    write_manifest(outdir + "/spectrum.manifest.json", p, seed, "spectrum");
    return {csv.path};
}

std::vector<std::string> cmd_sweep(const ModelParams& p, const std::string& outdir,
                                   std::uint64_t seed) {
    const SweepParams& sw = p.sweep;
    const SweepResult full =
        detuning_sweep(p.energies, p.exchange, sw.d_min, sw.d_max, sw.points);
    // flip-flop share: re-run with the single-carrier spin-flip couplings
    // removed, so the remaining phonon content comes from the two-spin channel
    ExchangeParams xff = p.exchange;
    xff.delta_e = {0.0, 0.0, 0.0, 0.0};
    xff.delta_h = {0.0, 0.0, 0.0, 0.0};
    const SweepResult ff =
        detuning_sweep(p.energies, xff, sw.d_min, sw.d_max, sw.points);

    std::size_t warned_points = 0;
    for (const SweepPoint& pt : full.points) {
        if (!pt.labeled.warned.empty()) ++warned_points;
    }
    if (warned_points > 0) {
        std::fprintf(stderr,
                     "warning: %zu of %d sweep points have weakly identified "
                     "states (overlap < 0.5)\n",
                     warned_points, sw.points);
    }

    CsvWriter csv;
    csv.path = outdir + "/sweep.csv";
    csv.header({"detuning_mev", "state", "energy_mev", "parent_overlap",
                "p_phonon", "p_flipflop", "p_spinflip", "rate_total"});
    for (int i = 0; i < sw.points; ++i) {
        const SweepPoint& pt = full.points[static_cast<std::size_t>(i)];
        const SweepPoint& pf = ff.points[static_cast<std::size_t>(i)];
        for (int l = 0; l < n_parents; ++l) {
            const int k = pt.labeled.state_of_label[static_cast<std::size_t>(l)];
            const double tot = pt.proj.total[static_cast<std::size_t>(l)];
            const double flip = pf.proj.total[static_cast<std::size_t>(l)];
            csv.cell(pt.detuning);
            csv.cell(std::string(parent_name(l)));
            csv.cell(pt.labeled.spec.eigenvalues[static_cast<std::size_t>(k)]);
            csv.cell(pt.labeled.overlap[static_cast<std::size_t>(k)]);
            csv.cell(tot);
            csv.cell(flip);
            csv.cell(tot - flip);  // may go negative through interference
            csv.cell(tot / p.energies.tau_lo);
            csv.endrow();
        }
    }
    csv.flush();
    write_manifest(outdir + "/sweep.manifest.json", p, seed, "sweep");
    return {csv.path};
}

std::vector<std::string> cmd_g2(const ModelParams& p, const std::string& outdir,
                                std::uint64_t seed,
                                const std::vector<G2Pair>& pairs) {
    const double g = resolve_generation(p);
    const RateNetwork net = assemble_network(p, g);

    std::vector<std::string> paths(pairs.size());
    std::vector<std::future<void>> futs;
    futs.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        futs.push_back(std::async(std::launch::async, [&, i] {
            const G2Pair& pr = pairs[i];
            CorrelationTrace tr =
                g2_trace(net, {pr.a, pr.pol_a}, {pr.b, pr.pol_b},
                         p.dynamics.tau_max, p.dynamics.tau_step);
            if (p.detector.fwhm > 0.0) {
                convolve_response(tr, p.detector.fwhm);
            }
            CsvWriter csv;
            csv.path = outdir + "/g2_" + line_tag(pr.a) + "_" + line_tag(pr.b) +
                       "_" + pol_tag(pr.pol_a) + "_" + pol_tag(pr.pol_b) + ".csv";
            if (tr.convolved.empty()) {
                csv.header({"tau_ps", "g2"});
            } else {
                csv.header({"tau_ps", "g2", "g2_conv"});
            }
            for (std::size_t k = 0; k < tr.tau.size(); ++k) {
                csv.cell(tr.tau[k]);
                csv.cell(tr.g2[k]);
                if (!tr.convolved.empty()) csv.cell(tr.convolved[k]);
                csv.endrow();
            }
            csv.flush();
            paths[i] = csv.path;
        }));
    }
    for (auto& f : futs) f.get();
    write_manifest(outdir + "/g2.manifest.json", p, seed, "g2");
    return paths;
}

}  // namespace qd
