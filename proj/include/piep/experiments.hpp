#pragma once

// Scenario runs and transmission sweeps over window length and period.

#include <optional>
#include <variant>
#include <vector>

#include "piep/propagation.hpp"
#include "piep/schedule.hpp"
#include "piep/spectral.hpp"

namespace piep {

/// Initial state given directly as waveguide amplitudes (u1, u2) or as
/// coefficients in the base-coupling eigenbasis.
using InitialState = std::variant<State, EigenCoefficients>;

struct ScenarioConfig {
    SystemParams params;  ///< params.kappa is ignored; coupling comes from schedule
    CouplingSchedule schedule;
    InitialState initial = State{Complex{1.0}, Complex{1.0}};
    std::optional<NonlinearParams> nonlinear;
    double sample_dz = 1.0;
    double ep_tol = kDefaultEpTol;
    double rk4_h = 0.0;  ///< 0 selects period / 4096

    SystemParams base_params() const {
        SystemParams p = params;
        p.kappa = schedule.kappa_base;
        return p;
    }
};

struct ScenarioResult {
    Trajectory trajectory;
    std::vector<double> re_dE;      ///< Re(E1 - E2) of the instantaneous generator
    std::vector<double> im_e1, im_e2;
    std::vector<double> cos_phase;  ///< NaN where the generator is defective
};

struct SweepRow {
    double delta_z = 0.0;
    double period_ratio = 0.0;  ///< Delta_var / Delta
    double ratio = 0.0;         ///< t_pert / t_unpert
    double log10_ratio = 0.0;
    double cos_phase_f = 0.0;   ///< after the first window, in the base eigenbasis
};

/// Waveguide amplitudes at z = 0.
State initial_amplitudes(const ScenarioConfig& cfg);

/// E(z_total) / E(0).
double transmission(const Trajectory& traj);

ScenarioResult run_scenario(const ScenarioConfig& cfg);

std::vector<SweepRow> sweep_perturbation_length(const ScenarioConfig& cfg, const std::vector<double>& dz_grid);

/// Rows in (period_ratio, delta_z) input order; period = ratio * optimal period.
std::vector<SweepRow> sweep_period_length(const ScenarioConfig& cfg, const std::vector<double>& period_ratios,
                                          const std::vector<double>& dz_grid);

// Harness defaults.

inline constexpr double kRefG2 = 2.5e-3;
inline constexpr double kRefGamma = 5e-3;
inline constexpr double kRefKappa2In = 4.0;  ///< |kappa|^2 / g^2 inside windows
inline constexpr double kRefGc = 0.05;
inline constexpr double kRefAlpha = 1e-4;

/// beta = 0, g^2 = 2.5e-3, gamma = 5e-3, |kappa|^2 = kappa2_ratio * g^2 (real kappa).
SystemParams reference_params(double kappa2_ratio);

/// First window start so the initial interference phase sits at a maximum:
/// the phase is wrapped into [-pi/2, 3pi/2) and converted to a distance,
/// clamped at 0.
double phase_aligned_start(const SystemParams& base, const State& state0, double ep_tol = kDefaultEpTol);

/// a (r1 + r2) with a chosen for unit waveguide energy.
EigenCoefficients unit_energy_equal_mix(const SystemParams& base, double ep_tol = kDefaultEpTol);

/// delta_z_k = k * max / n for k = 1..n.
std::vector<double> uniform_grid(double max, std::size_t n);

/// n points evenly spaced over [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Two waveguides, u1(0) = u2(0) = 1, |kappa|^2 = 1.01 g^2 -> 4 g^2 in windows,
/// period Delta, delta_z = Delta/50, z_total = 10 Delta.
ScenarioConfig growth_scenario();

/// Equal-mix initial state, z_total = n_periods * Delta.
ScenarioConfig sweep_scenario(double kappa2_out, double n_periods);

/// Growth-scenario schedule with saturable gain g_c = 0.05, alpha = 1e-4, z_total = 40 Delta.
ScenarioConfig saturation_scenario();

}  // namespace piep
