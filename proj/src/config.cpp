#include "qdcascade/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qdcascade/csvio.hpp"

namespace qd {

namespace {

enum class Unit { mev, ps, bare };

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

const char* unit_name(Unit u) {
    switch (u) {
        case Unit::mev: return "meV";
        case Unit::ps: return "ps";
        case Unit::bare: return "(none)";
    }
    return "?";
}

// numeric value with an optional unit suffix; the suffix must agree with the
// key's declared unit
double parse_number(const std::string& raw, Unit unit, int line) {
    std::string text = raw;
    std::string suffix;
    const std::size_t sp = text.find_first_of(" \t");
    if (sp != std::string::npos) {
        suffix = trim(text.substr(sp));
        text = text.substr(0, sp);
    }
    if (!suffix.empty()) {
        Unit got;
        if (suffix == "meV") {
            got = Unit::mev;
        } else if (suffix == "ps") {
            got = Unit::ps;
        } else {
            throw ConfigError("unknown unit suffix '" + suffix + "'", line);
        }
        if (got != unit) {
            throw ConfigError("unit mismatch: got '" + suffix + "', key expects " +
                                  unit_name(unit),
                              line);
        }
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw ConfigError("not a number: '" + raw + "'", line);
    }
    if (!std::isfinite(v)) {
        throw ConfigError("non-finite value: '" + raw + "'", line);
    }
    return v;
}

bool parse_bool(const std::string& raw, int line) {
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw ConfigError("expected true/false: '" + raw + "'", line);
}

struct Key {
    std::string section;
    std::string name;
    Unit unit;
    double* num = nullptr;
    std::array<double, 4>* arr = nullptr;
    int arr_idx = 0;
};

std::vector<Key> key_table(ModelParams& p) {
    EnergyParams& e = p.energies;
    ExchangeParams& x = p.exchange;
    DynamicsParams& d = p.dynamics;
    std::vector<Key> keys = {
        {"energies", "e_1h", Unit::mev, &e.e_1h},
        {"energies", "e_2h", Unit::mev, &e.e_2h},
        {"energies", "e_1e", Unit::mev, &e.e_1e},
        {"energies", "e_2e", Unit::mev, &e.e_2e},
        {"energies", "e_gap", Unit::mev, &e.e_gap},
        {"energies", "c_1e1e1e1e", Unit::mev, &e.c_1e1e1e1e},
        {"energies", "c_2e1e1e2e", Unit::mev, &e.c_2e1e1e2e},
        {"energies", "c_1h1h1h1h", Unit::mev, &e.c_1h1h1h1h},
        {"energies", "c_1h2h2h1h", Unit::mev, &e.c_1h2h2h1h},
        {"energies", "c_1e1h1h1e", Unit::mev, &e.c_1e1h1h1e},
        {"energies", "c_2e1h1h2e", Unit::mev, &e.c_2e1h1h2e},
        {"energies", "c_1e2h2h1e", Unit::mev, &e.c_1e2h2h1e},
        {"energies", "c_2e2h2h2e", Unit::mev, &e.c_2e2h2h2e},
        {"energies", "exch_ee", Unit::mev, &e.exch_ee},
        {"energies", "exch_hh", Unit::mev, &e.exch_hh},
        {"energies", "e_lo", Unit::mev, &e.e_lo},
        {"energies", "c_f", Unit::mev, &e.c_f},
        {"energies", "tau_lo", Unit::ps, &e.tau_lo},
        {"dynamics", "detuning", Unit::mev, &d.detuning},
        {"dynamics", "generation", Unit::bare, &d.generation},
        {"dynamics", "pump_eta", Unit::bare, &d.pump_eta},
        {"dynamics", "tau_xxx", Unit::ps, &d.tau_xxx},
        {"dynamics", "tau_xx", Unit::ps, &d.tau_xx},
        {"dynamics", "tau_x", Unit::ps, &d.tau_x},
        {"dynamics", "tau_tt", Unit::ps, &d.tau_tt},
        {"dynamics", "tau_h_pm3", Unit::ps, &d.tau_h_pm3},
        {"dynamics", "tau_v_pm3", Unit::ps, &d.tau_v_pm3},
        {"dynamics", "tau_2_ss0", Unit::ps, &d.tau_2_ss0},
        {"dynamics", "tau_2_st0", Unit::ps, &d.tau_2_st0},
        {"dynamics", "tau_0tt_ss0", Unit::ps, &d.tau_0tt_ss0},
        {"dynamics", "tau_hv_ss0", Unit::ps, &d.tau_hv_ss0},
        {"dynamics", "tau_max", Unit::ps, &d.tau_max},
        {"dynamics", "tau_step", Unit::ps, &d.tau_step},
        {"detector", "fwhm", Unit::ps, &p.detector.fwhm},
        {"sweep", "d_min", Unit::mev, &p.sweep.d_min},
        {"sweep", "d_max", Unit::mev, &p.sweep.d_max},
    };
    const char* pair_suffix[4] = {"1e1h", "1e2h", "2e1h", "2e2h"};
    struct ArrRef {
        const char* base;
        std::array<double, 4>* arr;
    };
    const ArrRef arrs[] = {
        {"delta0", &x.delta0}, {"delta1", &x.delta1}, {"delta2", &x.delta2},
        {"delta_e", &x.delta_e}, {"delta_h", &x.delta_h},
    };
    for (const ArrRef& ar : arrs) {
        for (int i = 0; i < 4; ++i) {
            Key k;
            k.section = "exchange";
            k.name = std::string(ar.base) + "_" + pair_suffix[i];
            k.unit = Unit::mev;
            k.arr = ar.arr;
            k.arr_idx = i;
            keys.push_back(k);
        }
    }
    return keys;
}

}  // namespace

ModelParams default_params() {
    ModelParams p;
    p.energies = default_energies();
    p.exchange = default_exchange();
    return p;
}

ModelParams load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    ModelParams p = default_params();
    std::vector<Key> keys = key_table(p);

    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t cpos = raw.find_first_of("#;");
        std::string text = trim(cpos == std::string::npos ? raw : raw.substr(0, cpos));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw ConfigError("malformed section header: '" + text + "'", line);
            }
            section = trim(text.substr(1, text.size() - 2));
            if (section != "energies" && section != "exchange" &&
                section != "dynamics" && section != "detector" && section != "sweep") {
                throw ConfigError("unknown section '" + section + "'", line);
            }
            continue;
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value': '" + text + "'", line);
        }
        if (section.empty()) {
            throw ConfigError("key before any [section] header", line);
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (value.empty()) {
            throw ConfigError("empty value for key '" + key + "'", line);
        }

        // non-numeric keys first
        if (section == "dynamics" && key == "rate_source") {
            if (value == "model") {
                p.dynamics.rate_source = RateSource::model;
            } else if (value == "table") {
                p.dynamics.rate_source = RateSource::table;
            } else {
                throw ConfigError("rate_source must be 'model' or 'table', got '" +
                                      value + "'",
                                  line);
            }
            continue;
        }
        if (section == "dynamics" && key == "tt_radiative_escape") {
            p.dynamics.tt_radiative_escape = parse_bool(value, line);
            continue;
        }
        if (section == "sweep" && key == "points") {
            const double v = parse_number(value, Unit::bare, line);
            if (v != std::floor(v) || v < 1.0 || v > 1e6) {
                throw ConfigError("points must be a positive integer, got '" + value +
                                      "'",
                                  line);
            }
            p.sweep.points = static_cast<int>(v);
            continue;
        }

        bool found = false;
        for (const Key& k : keys) {
            if (section == k.section && key == k.name) {
                const double v = parse_number(value, k.unit, line);
                if (k.num != nullptr) {
                    *k.num = v;
                } else {
                    (*k.arr)[static_cast<std::size_t>(k.arr_idx)] = v;
                }
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError("unknown key '" + key + "' in section [" + section + "]",
                              line);
        }
    }

    // cross-field validation; line numbers no longer apply
    try {
        p.energies.validate();
        p.exchange.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
    const DynamicsParams& d = p.dynamics;
    if (d.pump_eta < 0.0 || d.pump_eta > 1.0) {
        throw ConfigError("pump_eta must lie in [0, 1]");
    }
    for (double tau : {d.tau_xxx, d.tau_xx, d.tau_x, d.tau_tt, d.tau_h_pm3,
                       d.tau_v_pm3, d.tau_2_ss0, d.tau_2_st0, d.tau_0tt_ss0,
                       d.tau_hv_ss0}) {
        if (tau <= 0.0) throw ConfigError("lifetimes must be positive");
    }
    if (d.tau_step <= 0.0 || d.tau_max < d.tau_step) {
        throw ConfigError("need 0 < tau_step <= tau_max");
    }
    if (p.detector.fwhm < 0.0) {
        throw ConfigError("fwhm must be >= 0 (0 disables the response)");
    }
    if (p.detector.fwhm > 0.0 && d.tau_step > p.detector.fwhm / 4.0) {
        throw ConfigError("tau_step too coarse for the detector response "
                          "(need tau_step <= fwhm/4)");
    }
    if (p.sweep.points > 1 && p.sweep.d_max <= p.sweep.d_min) {
        throw ConfigError("sweep needs d_max > d_min");
    }
    return p;
}

std::string resolved_config_text(const ModelParams& p) {
    std::ostringstream os;
    const EnergyParams& e = p.energies;
    const ExchangeParams& x = p.exchange;
    const DynamicsParams& d = p.dynamics;
    auto mev = [&os](const char* k, double v) {
        os << k << " = " << format12(v) << " meV\n";
    };
    auto ps = [&os](const char* k, double v) {
        os << k << " = " << format12(v) << " ps\n";
    };

    os << "[energies]\n";
    mev("e_1h", e.e_1h);
    mev("e_2h", e.e_2h);
    mev("e_1e", e.e_1e);
    mev("e_2e", e.e_2e);
    mev("e_gap", e.e_gap);
    mev("c_1e1e1e1e", e.c_1e1e1e1e);
    mev("c_2e1e1e2e", e.c_2e1e1e2e);
    mev("c_1h1h1h1h", e.c_1h1h1h1h);
    mev("c_1h2h2h1h", e.c_1h2h2h1h);
    mev("c_1e1h1h1e", e.c_1e1h1h1e);
    mev("c_2e1h1h2e", e.c_2e1h1h2e);
    mev("c_1e2h2h1e", e.c_1e2h2h1e);
    mev("c_2e2h2h2e", e.c_2e2h2h2e);
    mev("exch_ee", e.exch_ee);
    mev("exch_hh", e.exch_hh);
    mev("e_lo", e.e_lo);
    mev("c_f", e.c_f);
    ps("tau_lo", e.tau_lo);

    os << "\n[exchange]\n";
    const char* pair_suffix[4] = {"1e1h", "1e2h", "2e1h", "2e2h"};
    struct ArrRef {
        const char* base;
        const std::array<double, 4>* arr;
    };
    const ArrRef arrs[] = {
        {"delta0", &x.delta0}, {"delta1", &x.delta1}, {"delta2", &x.delta2},
        {"delta_e", &x.delta_e}, {"delta_h", &x.delta_h},
    };
    for (const ArrRef& ar : arrs) {
        for (int i = 0; i < 4; ++i) {
            os << ar.base << "_" << pair_suffix[i] << " = "
               << format12((*ar.arr)[static_cast<std::size_t>(i)]) << " meV\n";
        }
    }

    os << "\n[dynamics]\n";
    mev("detuning", d.detuning);
    os << "rate_source = " << (d.rate_source == RateSource::model ? "model" : "table")
       << "\n";
    os << "generation = " << format12(d.generation) << "\n";
    os << "pump_eta = " << format12(d.pump_eta) << "\n";
    os << "tt_radiative_escape = " << (d.tt_radiative_escape ? "true" : "false")
       << "\n";
    ps("tau_xxx", d.tau_xxx);
    ps("tau_xx", d.tau_xx);
    ps("tau_x", d.tau_x);
    ps("tau_tt", d.tau_tt);
    ps("tau_h_pm3", d.tau_h_pm3);
    ps("tau_v_pm3", d.tau_v_pm3);
    ps("tau_2_ss0", d.tau_2_ss0);
    ps("tau_2_st0", d.tau_2_st0);
    ps("tau_0tt_ss0", d.tau_0tt_ss0);
    ps("tau_hv_ss0", d.tau_hv_ss0);
    ps("tau_max", d.tau_max);
    ps("tau_step", d.tau_step);

    os << "\n[detector]\n";
    ps("fwhm", p.detector.fwhm);

    os << "\n[sweep]\n";
    mev("d_min", p.sweep.d_min);
    mev("d_max", p.sweep.d_max);
    os << "points = " << p.sweep.points << "\n";
    return os.str();
}

}  // namespace qd
