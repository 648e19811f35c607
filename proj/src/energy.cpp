#include "piep/energy.hpp"

#include <cmath>
#include <numbers>

#include "piep/errors.hpp"

namespace piep {

namespace {

void require_diagonalizable(const SpectralData& sd, const char* op) {
    if (sd.is_defective)
        throw ExceptionalPointError(std::string(op) +
                                    ": eigenvectors coalesce at the exceptional point; use the Jordan expansion");
}

}  // namespace

Complex evolution_rate(Complex e, Evolution convention) {
    const Complex i{0.0, 1.0};
    return convention == Evolution::schrodinger ? -i * e : i * e;
}

EigenCoefficients decompose_state(const State& state, const SpectralData& sd) {
    require_diagonalizable(sd, "decompose_state");
    return EigenCoefficients{inner(*sd.l1, state), inner(*sd.l2, state)};
}

Complex energy_expectation(const State& state, const Generator& gen) { return inner(state, gen.m * state); }

EnergyBreakdown energy_closed_form(Complex a1, Complex a2, const SpectralData& sd, double s,
                                   Evolution convention) {
    require_diagonalizable(sd, "energy_closed_form");
    const Complex e1 = sd.e1;
    const Complex e2 = sd.e2;
    const Complex lam1 = evolution_rate(e1, convention);
    const Complex lam2 = evolution_rate(e2, convention);

    const Complex amp = std::conj(a1) * a2 * sd.overlap;  // A
    const double grow1 = std::exp(2.0 * lam1.real() * s);
    const double grow2 = std::exp(2.0 * lam2.real() * s);
    const double envelope = std::exp((lam1 + lam2).real() * s);
    const double signed_omega = (lam2 - lam1).imag();

    EnergyBreakdown out;
    const Complex rotating = std::exp(Complex{0.0, signed_omega * s});
    out.complex_energy = e1 * std::norm(a1) * grow1 + e2 * std::norm(a2) * grow2 +
                         (e2 * amp * rotating + e1 * std::conj(amp) * std::conj(rotating)) * envelope;
    out.total = out.complex_energy.real();
    out.e_av = e1.real() * std::norm(a1) * grow1 + e2.real() * std::norm(a2) * grow2;

    const double prefactor = (e1 + e2).real();
    out.e_osc = std::abs(prefactor) * std::abs(amp) * envelope;
    out.omega = std::abs((e1 - e2).real());
    out.theta = std::arg(std::conj(a1) * a2);

    double phase = std::arg(amp) + signed_omega * s;
    if (prefactor < 0.0) phase += std::numbers::pi;
    out.cos_phase = std::cos(phase);

    if (out.omega == 0.0) {
        out.omega_zero = true;
        out.t_theta = 0.0;
    } else {
        out.t_theta = -std::arg(sd.overlap) / signed_omega;
    }
    return out;
}

OscillationPhase oscillation_phase(Complex a1, Complex a2, const SpectralData& sd) {
    require_diagonalizable(sd, "oscillation_phase");
    if (a1 == Complex{} || a2 == Complex{})
        throw DegenerateInputError("oscillation phase undefined: one eigen-amplitude is zero");
    const double phase = std::arg(std::conj(a1) * a2 * sd.overlap);
    return OscillationPhase{phase, std::cos(phase)};
}

}  // namespace piep
