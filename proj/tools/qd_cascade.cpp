#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdcascade/commands.hpp"
#include "qdcascade/config.hpp"
#include "qdcascade/csvio.hpp"
#include "qdcascade/linalg.hpp"

namespace {

std::string resolve_outdir(const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("QD_CASCADE_OUT"); env && *env) {
        return env;
    }
    return ".";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biexciton spin-phonon spectra and cascade photon correlations"};
    app.set_version_flag("--version", std::string(qd::tool_version));
    app.require_subcommand(1);

    std::string config_path;
    std::string out;
    std::uint64_t seed = 0;
    std::vector<std::string> pair_args;
    bool all16 = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "parameter file (ini)")
            ->required();
        sub->add_option("-o,--out", out,
                        "output directory (default: $QD_CASCADE_OUT or .)");
        sub->add_option("-s,--seed", seed, "seed recorded in the run manifest");
    };

    CLI::App* sp = app.add_subcommand(
        "spectrum", "diagonalize at one detuning and tabulate the eigenstates");
    add_common(sp);

    CLI::App* sw = app.add_subcommand(
        "sweep", "trace the labeled eigenstates across a detuning range");
    add_common(sw);

    CLI::App* g2 = app.add_subcommand(
        "g2", "two-photon correlation traces for line pairs");
    add_common(g2);
    g2->add_option("-p,--pair", pair_args,
                   "line pair 'lineA,lineB[,polA,polB]' (repeatable; "
                   "lines i ii iii iv t3 t0 xx0 x0, pols u sp sm)");
    g2->add_flag("--all16", all16,
                 "emit the full 4x4 unpolarized grid plus the circular "
                 "combinations on lines ii and iii");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const qd::ModelParams params = qd::load_config(config_path);
        const std::string outdir = resolve_outdir(out);

        std::vector<std::string> written;
        if (sp->parsed()) {
            written = qd::cmd_spectrum(params, outdir, seed);
        } else if (sw->parsed()) {
            written = qd::cmd_sweep(params, outdir, seed);
        } else {
            std::vector<qd::G2Pair> pairs;
            if (all16) {
                pairs = qd::all16_pairs();
            }
            for (const std::string& s : pair_args) {
                pairs.push_back(qd::parse_pair(s));
            }
            if (pairs.empty()) {
                pairs.push_back(qd::parse_pair("ii,t3"));
            }
            written = qd::cmd_g2(params, outdir, seed, pairs);
        }
        for (const std::string& path : written) {
            std::printf("%s\n", path.c_str());
        }
        return 0;
    } catch (const qd::ConfigError& e) {
        if (e.line > 0) {
            std::fprintf(stderr, "config error (%s:%d): %s\n",
                         config_path.c_str(), e.line, e.what());
        } else {
            std::fprintf(stderr, "config error: %s\n", e.what());
        }
        return 2;
    } catch (const qd::NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
