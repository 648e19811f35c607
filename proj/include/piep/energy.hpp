#pragma once

// Energy of a two-mode non-Hermitian state, split into mode populations
// plus an interference term whose phase decides amplification.

#include "piep/linalg.hpp"
#include "piep/spectral.hpp"

namespace piep {

/// How an eigenmode with eigenvalue E evolves along the evolution variable s.
enum class Evolution {
    schrodinger,  ///< psi ~ exp(-i E t); decay when Im E < 0
    waveguide,    ///< psi ~ exp(+i E z); decay when Im E > 0
};

/// Rate lambda with psi ~ exp(lambda s) for eigenvalue e.
Complex evolution_rate(Complex e, Evolution convention);

struct EnergyBreakdown {
    double total = 0.0;      ///< Re of complex_energy
    Complex complex_energy;  ///< <psi|M|psi> in closed form
    double e_av = 0.0;       ///< diagonal (mode population) part
    double e_osc = 0.0;      ///< amplitude of the interference part, >= 0
    double omega = 0.0;      ///< |Re(E1 - E2)|
    double theta = 0.0;      ///< arg(a1* a2)
    double t_theta = 0.0;    ///< cos_phase = cos(w_s (t - t_theta) + theta), w_s the signed frequency
    double cos_phase = 1.0;
    bool omega_zero = false;  ///< t_theta undefined; cos_phase taken from arg(A) directly
};

/// Eigenbasis coefficients (a1, a2) with a1 r1 + a2 r2 = state.
EigenCoefficients decompose_state(const State& state, const SpectralData& sd);

/// <psi|M|psi>. For diagonalizable M this equals the biorthogonal form
/// sum_i E_i <psi|r_i><l_i|psi>.
Complex energy_expectation(const State& state, const Generator& gen);

/// Closed-form energy after evolving the eigen-coefficients (a1, a2) for s.
EnergyBreakdown energy_closed_form(Complex a1, Complex a2, const SpectralData& sd, double s,
                                   Evolution convention = Evolution::schrodinger);

struct OscillationPhase {
    double phase = 0.0;  ///< arg(a1* a2 <r1|r2>)
    double cos_phase = 1.0;
};

OscillationPhase oscillation_phase(Complex a1, Complex a2, const SpectralData& sd);

/// |u1|^2 + |u2|^2.
inline double waveguide_energy(const State& state) { return norm2(state); }

}  // namespace piep
