#pragma once

// Piecewise-constant coupling profile kappa(z): a base coupling with
// rectangular perturbation windows of length delta_z repeated every period.

#include <vector>

#include "piep/linalg.hpp"
#include "piep/spectral.hpp"

namespace piep {

struct CouplingSchedule {
    Complex kappa_base;
    Complex kappa_pert;
    double delta_z = 0.0;  ///< window length, 0 < delta_z < period
    double period = 0.0;   ///< start-to-start window spacing
    double z_first = 0.0;  ///< start of the first window
    double z_total = 0.0;  ///< total propagation length, >= period

    void validate() const;

    /// Same schedule with the perturbation switched off.
    CouplingSchedule unperturbed() const {
        CouplingSchedule s = *this;
        s.kappa_pert = kappa_base;
        return s;
    }
};

struct Segment {
    double z_start = 0.0;
    double z_end = 0.0;
    Complex kappa;
};

/// Windows are half-open: [z_first + k*period, z_first + k*period + delta_z).
Complex kappa_at(const CouplingSchedule& s, double z);

/// Contiguous constant-kappa pieces covering [0, z_total]; neighbours differ in kappa.
std::vector<Segment> segments(const CouplingSchedule& s);

/// Delta = pi / |Re(E1 - E2)|, half the energy oscillation period.
/// Throws ExceptionalPointError when the spectrum has no real splitting.
double optimal_period(const SystemParams& params, double ep_tol = kDefaultEpTol);

}  // namespace piep
