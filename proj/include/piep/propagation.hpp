#pragma once

// z-evolution of the two-mode state: exact per-segment matrix exponentials
// for the linear system and fixed-step RK4 for the saturable one.

#include <vector>

#include "piep/linalg.hpp"
#include "piep/schedule.hpp"
#include "piep/spectral.hpp"

namespace piep {

struct Trajectory {
    std::vector<double> z;       ///< strictly increasing, from 0 to z_total
    std::vector<State> states;
    std::vector<double> energies;  ///< |u1|^2 + |u2|^2 per sample

    std::size_t size() const { return z.size(); }
    void push(double zi, const State& u) {
        z.push_back(zi);
        states.push_back(u);
        energies.push_back(norm2(u));
    }
};

/// Amplitude-saturated gain/loss g_{1,2} = -+ g_c / (1 + alpha |u_{1,2}|^2).
struct NonlinearParams {
    double g_c = 0.0;
    double alpha = 0.0;

    void validate() const;
};

/// exp(i M dz) for one generator, with the spectral work done once.
class ExactPropagator {
public:
    explicit ExactPropagator(const Generator& gen, double ep_tol = kDefaultEpTol);

    Mat2 operator()(double dz) const;
    bool defective() const { return defective_; }

private:
    bool defective_ = false;
    Complex e1_, e2_;
    Mat2 proj1_, proj2_;  // r_i <l_i|
    Mat2 nilpotent_;      // M - E I at the exceptional point
};

/// exp(i M dz). Diagonalizable: R diag(exp(i E_k dz)) R^-1; defective:
/// exp(i E dz) (I + i dz N) with N = M - E I nilpotent.
Mat2 propagator_matrix(const Generator& gen, double dz, double ep_tol = kDefaultEpTol);

/// Exact evolution through every constant-kappa segment of the schedule,
/// sampled every sample_dz and at every segment boundary.
Trajectory propagate_linear(const State& state0, const CouplingSchedule& schedule, const SystemParams& params,
                            double sample_dz, double ep_tol = kDefaultEpTol);

/// Endpoint of propagate_linear without sampling.
State propagate_linear_endpoint(const State& state0, const CouplingSchedule& schedule, const SystemParams& params,
                                double ep_tol = kDefaultEpTol);

/// Instantaneous generator of the saturable system: the +-g slots of the
/// linear generator become -g_1 and -g_2.
Generator nonlinear_generator(const SystemParams& params, const NonlinearParams& nl, Complex kappa,
                              const State& u);

/// RK4 with step h, clipped at every kappa discontinuity. Samples are the step
/// endpoints spaced at least sample_dz apart (every step when 0) plus every
/// segment boundary. params.g is unused; gain/loss comes from nl.
Trajectory propagate_nonlinear(const State& state0, const CouplingSchedule& schedule, const SystemParams& params,
                               const NonlinearParams& nl, double h, double sample_dz = 0.0);

}  // namespace piep
