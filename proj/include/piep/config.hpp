#pragma once

// Flat `key = value` run configuration.
//
//   # periodic growth run
//   g2 = 2.5e-3          # g^2
//   gamma = 5e-3
//   kappa2_out = 1.01    # |kappa|^2 outside windows, in units of g^2
//   kappa2_in = 4        # |kappa|^2 inside windows, in units of g^2
//
// Every other key is optional; see README.md for the full list and defaults.

#include <string>
#include <string_view>
#include <vector>

#include "piep/experiments.hpp"

namespace piep {

enum class Command { spectrum, simulate, sweep_dz, sweep_grid, ep };

enum class InitialForm {
    waveguides,  ///< (u1, u2) given directly
    eigen,       ///< (a1, a2) in the base eigenbasis
    equal_mix,   ///< a (r1 + r2) with unit energy
};

struct Settings {
    double g2 = 0.0;
    double gamma = 0.0;
    double kappa2_out = 0.0;
    double kappa2_in = 0.0;
    double beta = 0.0;
    double kappa_phase = 0.0;

    bool has_schedule = false;  ///< false only when no real splitting exists and none was requested
    double period = 0.0;
    double delta_z = 0.0;
    double z_first = 0.0;
    double z_total = 0.0;
    double sample_dz = 0.0;

    InitialForm initial = InitialForm::waveguides;
    Complex init1{1.0};  ///< u1 or a1
    Complex init2{1.0};  ///< u2 or a2

    double ep_tol = kDefaultEpTol;
    double rk4_h = 0.0;
    double g_c = 0.0;
    double alpha = kRefAlpha;

    std::size_t dz_points = 200;
    double dz_max = 0.0;
    double period_ratio_min = 0.5;
    double period_ratio_max = 1.5;
    std::size_t period_ratio_points = 101;

    bool operator==(const Settings&) const = default;
};

struct RunConfig {
    Settings settings;
    std::vector<std::string> defaulted;  ///< keys filled from defaults, in canonical order
    std::vector<std::string> warnings;
};

/// Parses and validates. Defaults depend on the command: sweeps default to
/// the unit-energy equal eigen-mix initial state, sweep_grid to z_total = 20 period.
/// Throws ConfigError naming the key and line.
RunConfig parse_config(std::string_view text, Command command = Command::simulate);

/// Every resolved key at full precision; reparses to equal settings.
std::string serialize_config(const RunConfig& cfg);

SystemParams base_params(const Settings& s);
Complex kappa_out(const Settings& s);
Complex kappa_in(const Settings& s);

ScenarioConfig to_scenario(const Settings& s, bool nonlinear);
std::vector<double> dz_grid(const Settings& s);
std::vector<double> period_ratio_grid(const Settings& s);

}  // namespace piep
