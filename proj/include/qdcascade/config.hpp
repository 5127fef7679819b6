#pragma once
#include <stdexcept>
#include <string>

#include "qdcascade/params.hpp"

namespace qd {

struct ConfigError : std::runtime_error {
    int line;  // 0 when not tied to a specific line
    ConfigError(const std::string& msg, int line_ = 0)
        : std::runtime_error(msg), line(line_) {}
};

enum class RateSource { model, table };

struct DynamicsParams {
    double detuning = -3.5;          // meV, spectrum used by the cascade
    // default to the fitted lifetimes: the ab-initio rates underpredict the
    // relaxation by orders of magnitude and leave the pump calibration with
    // no balance point (see README, known limits)
    RateSource rate_source = RateSource::table;
    double generation = -1.0;        // 1/ps; negative -> calibrate
    double pump_eta = 0.345;
    bool tt_radiative_escape = true;
    double tau_xxx = 400.0;          // ps
    double tau_xx = 400.0;
    double tau_x = 400.0;
    double tau_tt = 400.0;
    // fitted-lifetime description (rate_source = table), ps
    double tau_h_pm3 = 50.0;
    double tau_v_pm3 = 3000.0;
    double tau_2_ss0 = 400.0;
    double tau_2_st0 = 1000.0;
    double tau_0tt_ss0 = 1200.0;
    double tau_hv_ss0 = 5000.0;
    double tau_max = 20000.0;        // correlation window half-width, ps
    double tau_step = 50.0;          // correlation grid step, ps
};

struct DetectorParams {
    double fwhm = 400.0;  // ps; <= 0 disables convolution
};

struct SweepParams {
    double d_min = -10.0;
    double d_max = 10.0;
    int points = 401;
};

struct ModelParams {
    EnergyParams energies;
    ExchangeParams exchange;
    DynamicsParams dynamics;
    DetectorParams detector;
    SweepParams sweep;
};

ModelParams default_params();

// INI-style flat config: [energies], [exchange], [dynamics], [detector],
// [sweep].  '#' and ';' start comments.  Values may carry a unit suffix
// (meV / ps); a suffix that contradicts the key's unit is an error.  Unknown
// sections and keys are rejected with the offending line number.
ModelParams load_config(const std::string& path);

// Full parameter set serialized back in config syntax (for the run manifest).
std::string resolved_config_text(const ModelParams& p);

}  // namespace qd
