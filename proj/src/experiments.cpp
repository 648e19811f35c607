#include "piep/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "piep/energy.hpp"
#include "piep/errors.hpp"

namespace piep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(i) for i in [0, n) on a few worker threads; results are written by
// index so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

State mix(const SpectralData& sd, const EigenCoefficients& a) { return a.a1 * sd.r1 + a.a2 * sd.r2; }

double cos_phase_or_nan(const State& u, const SpectralData& sd) {
    if (sd.is_defective) return kNaN;
    const EigenCoefficients a = decompose_state(u, sd);
    if (a.a1 == Complex{} || a.a2 == Complex{}) return kNaN;
    return oscillation_phase(a.a1, a.a2, sd).cos_phase;
}

// Exact propagators for the two coupling levels of a sweep.
struct SweepKernel {
    SystemParams base;
    SpectralData base_sd;
    ExactPropagator base_prop;
    ExactPropagator pert_prop;
    Complex kappa_pert;
    State psi0;
    double t_unpert;

    explicit SweepKernel(const ScenarioConfig& cfg)
        : base(cfg.base_params()),
          base_sd(spectral_decompose(build_generator(base), cfg.ep_tol)),
          base_prop(build_generator(base), cfg.ep_tol),
          pert_prop(build_generator([&] {
                        SystemParams p = cfg.params;
                        p.kappa = cfg.schedule.kappa_pert;
                        return p;
                    }()),
                    cfg.ep_tol),
          kappa_pert(cfg.schedule.kappa_pert),
          psi0(initial_amplitudes(cfg)),
          t_unpert(0.0) {
        if (base_sd.is_defective)
            throw ExceptionalPointError("sweep requires non-defective base coupling (|kappa|^2 != g^2)");
        if (norm2(psi0) == 0.0) throw DegenerateInputError("initial state has zero energy");
        const CouplingSchedule flat = cfg.schedule.unperturbed();
        t_unpert = norm2(endpoint(flat)) / norm2(psi0);
    }

    State endpoint(const CouplingSchedule& s) const {
        State u = psi0;
        for (const Segment& seg : segments(s)) {
            const double len = seg.z_end - seg.z_start;
            u = (seg.kappa == base.kappa ? base_prop(len) : pert_prop(len)) * u;
        }
        return u;
    }

    SweepRow row(const CouplingSchedule& s, double period_ratio) const {
        SweepRow r;
        r.delta_z = s.delta_z;
        r.period_ratio = period_ratio;
        const State after_first = pert_prop(s.delta_z) * (base_prop(s.z_first) * psi0);
        r.cos_phase_f = cos_phase_or_nan(after_first, base_sd);
        r.ratio = (norm2(endpoint(s)) / norm2(psi0)) / t_unpert;
        r.log10_ratio = std::log10(r.ratio);
        return r;
    }
};

}  // namespace

State initial_amplitudes(const ScenarioConfig& cfg) {
    if (const auto* u = std::get_if<State>(&cfg.initial)) return *u;
    const SpectralData sd = spectral_decompose(build_generator(cfg.base_params()), cfg.ep_tol);
    if (sd.is_defective)
        throw ExceptionalPointError("eigen-coefficient initial state undefined at the exceptional point");
    return mix(sd, std::get<EigenCoefficients>(cfg.initial));
}

double transmission(const Trajectory& traj) {
    if (traj.size() == 0) throw DegenerateInputError("empty trajectory");
    const double e0 = traj.energies.front();
    if (e0 == 0.0) throw DegenerateInputError("initial energy is zero; transmission undefined");
    return traj.energies.back() / e0;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    cfg.schedule.validate();
    if (!(cfg.sample_dz > 0.0)) throw InvalidParameterError("sample_dz must be > 0");
    const State psi0 = initial_amplitudes(cfg);

    ScenarioResult out;
    if (cfg.nonlinear) {
        const double h = cfg.rk4_h > 0.0 ? cfg.rk4_h : cfg.schedule.period / 4096.0;
        out.trajectory = propagate_nonlinear(psi0, cfg.schedule, cfg.params, *cfg.nonlinear, h, cfg.sample_dz);
    } else {
        out.trajectory = propagate_linear(psi0, cfg.schedule, cfg.params, cfg.sample_dz, cfg.ep_tol);
    }

    const std::size_t n = out.trajectory.size();
    out.re_dE.resize(n);
    out.im_e1.resize(n);
    out.im_e2.resize(n);
    out.cos_phase.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double z = out.trajectory.z[k];
        const State& u = out.trajectory.states[k];
        const Complex kappa = kappa_at(cfg.schedule, z);
        SystemParams p = cfg.params;
        p.kappa = kappa;
        const Generator gen = cfg.nonlinear ? nonlinear_generator(p, *cfg.nonlinear, kappa, u) : build_generator(p);
        const SpectralData sd = spectral_decompose(gen, cfg.ep_tol);
        out.re_dE[k] = (sd.e1 - sd.e2).real();
        out.im_e1[k] = sd.e1.imag();
        out.im_e2[k] = sd.e2.imag();
        out.cos_phase[k] = cos_phase_or_nan(u, sd);
    }
    return out;
}

std::vector<SweepRow> sweep_perturbation_length(const ScenarioConfig& cfg, const std::vector<double>& dz_grid) {
    const SweepKernel kernel(cfg);
    const double period_ratio = cfg.schedule.period / optimal_period(kernel.base, cfg.ep_tol);
    std::vector<SweepRow> rows(dz_grid.size());
    parallel_for(dz_grid.size(), [&](std::size_t i) {
        CouplingSchedule s = cfg.schedule;
        s.delta_z = dz_grid[i];
        s.validate();
        rows[i] = kernel.row(s, period_ratio);
    });
    return rows;
}

std::vector<SweepRow> sweep_period_length(const ScenarioConfig& cfg, const std::vector<double>& period_ratios,
                                          const std::vector<double>& dz_grid) {
    const SweepKernel kernel(cfg);
    const double delta = optimal_period(kernel.base, cfg.ep_tol);
    const std::size_t nd = dz_grid.size();
    std::vector<SweepRow> rows(period_ratios.size() * nd);
    parallel_for(rows.size(), [&](std::size_t idx) {
        CouplingSchedule s = cfg.schedule;
        s.period = period_ratios[idx / nd] * delta;
        s.delta_z = dz_grid[idx % nd];
        s.validate();
        rows[idx] = kernel.row(s, period_ratios[idx / nd]);
    });
    return rows;
}

SystemParams reference_params(double kappa2_ratio) {
    SystemParams p;
    p.beta = 0.0;
    p.gamma = kRefGamma;
    p.g = std::sqrt(kRefG2);
    p.kappa = Complex{std::sqrt(kappa2_ratio * kRefG2)};
    return p;
}

double phase_aligned_start(const SystemParams& base, const State& state0, double ep_tol) {
    const SpectralData sd = spectral_decompose(build_generator(base), ep_tol);
    const double omega = std::abs((sd.e1 - sd.e2).real());
    if (sd.is_defective || omega == 0.0) return 0.0;
    const EigenCoefficients a = decompose_state(state0, sd);
    if (a.a1 == Complex{} || a.a2 == Complex{}) return 0.0;
    // Along z the phase decreases at rate omega (e1 is the + branch).
    const double phi0 = oscillation_phase(a.a1, a.a2, sd).phase;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double wrapped = phi0 - two_pi * std::floor((phi0 + 0.5 * std::numbers::pi) / two_pi);
    return std::max(0.0, wrapped / omega);
}

EigenCoefficients unit_energy_equal_mix(const SystemParams& base, double ep_tol) {
    const SpectralData sd = spectral_decompose(build_generator(base), ep_tol);
    if (sd.is_defective) throw ExceptionalPointError("equal eigen-mix undefined at the exceptional point");
    const double a = 1.0 / norm(sd.r1 + sd.r2);
    return EigenCoefficients{Complex{a}, Complex{a}};
}

std::vector<double> uniform_grid(double max, std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k) grid[k] = max * static_cast<double>(k + 1) / static_cast<double>(n);
    return grid;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t k = 0; k < n; ++k)
        out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return out;
}

ScenarioConfig growth_scenario() {
    ScenarioConfig cfg;
    cfg.params = reference_params(1.01);
    const double delta = optimal_period(cfg.params);
    const State psi0{Complex{1.0}, Complex{1.0}};
    cfg.schedule.kappa_base = cfg.params.kappa;
    cfg.schedule.kappa_pert = reference_params(kRefKappa2In).kappa;
    cfg.schedule.period = delta;
    cfg.schedule.delta_z = delta / 50.0;
    cfg.schedule.z_first = phase_aligned_start(cfg.params, psi0);
    cfg.schedule.z_total = 10.0 * delta;
    cfg.initial = psi0;
    cfg.sample_dz = delta / 200.0;
    return cfg;
}

ScenarioConfig sweep_scenario(double kappa2_out, double n_periods) {
    ScenarioConfig cfg;
    cfg.params = reference_params(kappa2_out);
    const double delta = optimal_period(cfg.params);
    const EigenCoefficients mix0 = unit_energy_equal_mix(cfg.params);
    cfg.initial = mix0;
    cfg.schedule.kappa_base = cfg.params.kappa;
    cfg.schedule.kappa_pert = reference_params(kRefKappa2In).kappa;
    cfg.schedule.period = delta;
    cfg.schedule.delta_z = delta / 50.0;
    cfg.schedule.z_first = phase_aligned_start(cfg.params, initial_amplitudes(cfg));
    cfg.schedule.z_total = n_periods * delta;
    cfg.sample_dz = delta / 200.0;
    return cfg;
}

ScenarioConfig saturation_scenario() {
    ScenarioConfig cfg = growth_scenario();
    cfg.nonlinear = NonlinearParams{kRefGc, kRefAlpha};
    cfg.params.g = kRefGc;
    cfg.schedule.z_total = 40.0 * cfg.schedule.period;
    cfg.rk4_h = cfg.schedule.period / 4096.0;
    return cfg;
}

}  // namespace piep
