#include "piep/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "piep/errors.hpp"

namespace piep {

void CouplingSchedule::validate() const {
    if (!is_finite(kappa_base) || !is_finite(kappa_pert)) throw InvalidParameterError("schedule kappa is not finite");
    if (!std::isfinite(delta_z) || !std::isfinite(period) || !std::isfinite(z_first) || !std::isfinite(z_total))
        throw InvalidParameterError("schedule lengths must be finite");
    if (!(delta_z > 0.0)) throw InvalidParameterError("delta_z must be > 0");
    if (!(delta_z < period))
        throw InvalidParameterError("delta_z (" + std::to_string(delta_z) + ") must be < period (" +
                                    std::to_string(period) + ")");
    if (z_first < 0.0) throw InvalidParameterError("z_first must be >= 0");
    if (!(z_total >= period)) throw InvalidParameterError("z_total must be >= period");
}

Complex kappa_at(const CouplingSchedule& s, double z) {
    if (!(z >= 0.0 && z <= s.z_total))
        throw DomainError("z = " + std::to_string(z) + " outside [0, " + std::to_string(s.z_total) + "]");
    if (z < s.z_first) return s.kappa_base;
    return std::fmod(z - s.z_first, s.period) < s.delta_z ? s.kappa_pert : s.kappa_base;
}

std::vector<Segment> segments(const CouplingSchedule& s) {
    s.validate();
    std::vector<Segment> raw;
    double cursor = 0.0;
    for (long k = 0;; ++k) {
        const double start = s.z_first + static_cast<double>(k) * s.period;
        if (start >= s.z_total) break;
        if (start > cursor) raw.push_back({cursor, start, s.kappa_base});
        const double end = std::min(start + s.delta_z, s.z_total);
        raw.push_back({start, end, s.kappa_pert});
        cursor = end;
    }
    if (cursor < s.z_total) raw.push_back({cursor, s.z_total, s.kappa_base});

    std::vector<Segment> merged;
    for (const Segment& seg : raw) {
        if (!merged.empty() && merged.back().kappa == seg.kappa)
            merged.back().z_end = seg.z_end;
        else
            merged.push_back(seg);
    }
    return merged;
}

double optimal_period(const SystemParams& params, double ep_tol) {
    const SpectralData sd = spectral_decompose(build_generator(params), ep_tol);
    const double split = std::abs((sd.e1 - sd.e2).real());
    if (sd.is_defective || split == 0.0)
        throw ExceptionalPointError("no real eigenvalue splitting (|kappa|^2 <= g^2): oscillation period undefined");
    return std::numbers::pi / split;
}

}  // namespace piep
