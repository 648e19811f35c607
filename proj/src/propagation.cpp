#include "piep/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "piep/errors.hpp"

namespace piep {

namespace {

const Complex kI{0.0, 1.0};

Mat2 outer(const State& ket, const State& bra) {
    Mat2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out[i][j] = ket[i] * std::conj(bra[j]);
    return out;
}

SystemParams with_kappa(SystemParams p, Complex kappa) {
    p.kappa = kappa;
    return p;
}

// Boundary samples closer than this to a regular sample are merged.
double merge_tolerance(double z_total) { return 1e-12 * std::max(1.0, z_total); }

}  // namespace

void NonlinearParams::validate() const {
    if (!std::isfinite(g_c) || g_c < 0.0) throw InvalidParameterError("g_c must be finite and >= 0");
    if (!std::isfinite(alpha) || alpha < 0.0) throw InvalidParameterError("alpha must be finite and >= 0");
}

ExactPropagator::ExactPropagator(const Generator& gen, double ep_tol) {
    const SpectralData sd = spectral_decompose(gen, ep_tol);
    defective_ = sd.is_defective;
    e1_ = sd.e1;
    e2_ = sd.e2;
    if (defective_) {
        nilpotent_ = gen.m - sd.e1 * Mat2::identity();
    } else {
        proj1_ = outer(sd.r1, *sd.l1);
        proj2_ = outer(sd.r2, *sd.l2);
    }
}

Mat2 ExactPropagator::operator()(double dz) const {
    if (defective_) return std::exp(kI * e1_ * dz) * (Mat2::identity() + (kI * dz) * nilpotent_);
    return std::exp(kI * e1_ * dz) * proj1_ + std::exp(kI * e2_ * dz) * proj2_;
}

Mat2 propagator_matrix(const Generator& gen, double dz, double ep_tol) { return ExactPropagator(gen, ep_tol)(dz); }

Trajectory propagate_linear(const State& state0, const CouplingSchedule& schedule, const SystemParams& params,
                            double sample_dz, double ep_tol) {
    if (!(sample_dz > 0.0)) throw InvalidParameterError("sample_dz must be > 0");
    params.validate();
    const auto segs = segments(schedule);
    const double merge = merge_tolerance(schedule.z_total);

    Trajectory traj;
    traj.push(0.0, state0);
    State anchor = state0;
    for (const Segment& seg : segs) {
        const ExactPropagator prop(build_generator(with_kappa(params, seg.kappa)), ep_tol);
        // Regular grid points k * sample_dz strictly inside the segment.
        auto k = static_cast<long>(std::floor(seg.z_start / sample_dz)) + 1;
        for (;; ++k) {
            const double z = static_cast<double>(k) * sample_dz;
            if (z >= seg.z_end - merge) break;
            if (z <= seg.z_start + merge) continue;
            traj.push(z, prop(z - seg.z_start) * anchor);
        }
        anchor = prop(seg.z_end - seg.z_start) * anchor;
        traj.push(seg.z_end, anchor);
    }
    return traj;
}

State propagate_linear_endpoint(const State& state0, const CouplingSchedule& schedule, const SystemParams& params,
                                double ep_tol) {
    params.validate();
    State u = state0;
    for (const Segment& seg : segments(schedule))
        u = propagator_matrix(build_generator(with_kappa(params, seg.kappa)), seg.z_end - seg.z_start, ep_tol) * u;
    return u;
}

Generator nonlinear_generator(const SystemParams& params, const NonlinearParams& nl, Complex kappa,
                              const State& u) {
    const double g1 = -nl.g_c / (1.0 + nl.alpha * std::norm(u[0]));
    const double g2 = nl.g_c / (1.0 + nl.alpha * std::norm(u[1]));
    Generator gen;
    gen.m[0][0] = params.beta + kI * (params.gamma - g1);
    gen.m[1][1] = params.beta + kI * (params.gamma - g2);
    gen.m[0][1] = std::conj(kappa);
    gen.m[1][0] = kappa;
    return gen;
}

Trajectory propagate_nonlinear(const State& state0, const CouplingSchedule& schedule, const SystemParams& params,
                               const NonlinearParams& nl, double h, double sample_dz) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidParameterError("RK4 step h must be > 0");
    if (!(sample_dz >= 0.0)) throw InvalidParameterError("sample_dz must be >= 0");
    params.validate();
    nl.validate();
    const auto segs = segments(schedule);
    const double merge = merge_tolerance(schedule.z_total);

    Trajectory traj;
    traj.push(0.0, state0);
    State u = state0;
    double next_sample = sample_dz;
    for (const Segment& seg : segs) {
        auto rhs = [&](const State& v) { return kI * (nonlinear_generator(params, nl, seg.kappa, v).m * v); };
        double z = seg.z_start;
        while (z < seg.z_end) {
            const bool last = seg.z_end - z <= h + merge;
            const double step = last ? seg.z_end - z : h;
            const State k1 = rhs(u);
            const State k2 = rhs(u + Complex{0.5 * step} * k1);
            const State k3 = rhs(u + Complex{0.5 * step} * k2);
            const State k4 = rhs(u + Complex{step} * k3);
            u = u + Complex{step / 6.0} * (k1 + Complex{2.0} * k2 + Complex{2.0} * k3 + k4);
            z = last ? seg.z_end : z + step;
            if (!is_finite(u)) throw DivergenceError("RK4 state became non-finite at z = " + std::to_string(z), z);
            if (last || z >= next_sample - merge) {
                traj.push(z, u);
                next_sample = z + sample_dz;
            }
        }
    }
    return traj;
}

}  // namespace piep
