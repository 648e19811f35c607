#include "piep/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "piep/errors.hpp"

namespace piep {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Unit norm, first nonzero component rotated onto the positive real axis.
State gauge_fix(State v) {
    const double n = norm(v);
    v = Complex{1.0 / n} * v;
    const Complex lead = std::abs(v[0]) > 4.0 * kEps ? v[0] : v[1];
    const Complex phase = std::conj(lead) / std::abs(lead);
    v = phase * v;
    // Remove the roundoff imaginary part so the gauge is exact.
    if (std::abs(v[0]) > 4.0 * kEps)
        v[0] = Complex{v[0].real(), 0.0};
    else
        v[1] = Complex{v[1].real(), 0.0};
    return v;
}

// Right eigenvector of m for eigenvalue e, from whichever row of (m - eI)
// gives the better-conditioned null vector.
State eigenvector_for(const Mat2& m, Complex e) {
    const State from_row0{m[0][1], e - m[0][0]};
    const State from_row1{e - m[1][1], m[1][0]};
    return gauge_fix(norm2(from_row0) >= norm2(from_row1) ? from_row0 : from_row1);
}

Mat2 shifted(const Mat2& m, Complex e) { return m - e * Mat2::identity(); }

}  // namespace

void SystemParams::validate() const {
    if (!std::isfinite(beta)) throw InvalidParameterError("beta is not finite");
    if (!std::isfinite(gamma)) throw InvalidParameterError("gamma is not finite");
    if (!std::isfinite(g)) throw InvalidParameterError("g is not finite");
    if (!is_finite(kappa)) throw InvalidParameterError("kappa is not finite");
    if (g < 0.0) throw InvalidParameterError("g must be >= 0, got " + std::to_string(g));
}

Generator build_generator(const SystemParams& params) {
    params.validate();
    const Complex i{0.0, 1.0};
    Generator gen;
    gen.m[0][0] = params.beta + i * (params.gamma + params.g);
    gen.m[1][1] = params.beta + i * (params.gamma - params.g);
    gen.m[0][1] = std::conj(params.kappa);
    gen.m[1][0] = params.kappa;
    return gen;
}

State orthogonal_complement(const State& r) { return {-std::conj(r[1]), std::conj(r[0])}; }

SpectralData spectral_decompose(const Generator& gen, double ep_tol) {
    const Mat2& m = gen.m;
    const Complex center = 0.5 * m.trace();
    const Mat2 n = shifted(m, center);
    const Complex disc = n[0][0] * n[0][0] + n[0][1] * n[1][0];
    const double scale = 0.25 * n.frobenius_norm() * n.frobenius_norm();

    SpectralData sd;
    if (scale == 0.0) {
        // Scalar matrix: every vector is an eigenvector.
        sd.e1 = sd.e2 = center;
        sd.r1 = {Complex{1.0}, Complex{}};
        sd.r2 = {Complex{}, Complex{1.0}};
        sd.l1 = sd.r1;
        sd.l2 = sd.r2;
        sd.overlap = Complex{};
        sd.c_param = Complex{1.0};
        return sd;
    }

    if (std::abs(disc) <= ep_tol * scale) {
        const JordanChain chain = jordan_chain(gen, center, ep_tol);
        sd.e1 = sd.e2 = center;
        sd.r1 = sd.r2 = chain.eigenvector;
        sd.overlap = Complex{1.0};
        sd.c_param = Complex{};
        sd.is_defective = true;
        sd.adjoint = chain.adjoint;
        return sd;
    }

    Complex s = std::sqrt(disc);
    if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) s = -s;
    sd.e1 = center + s;
    sd.e2 = center - s;
    sd.r1 = eigenvector_for(m, sd.e1);
    sd.r2 = eigenvector_for(m, sd.e2);

    const Mat2 left = inverse(Mat2::from_columns(sd.r1, sd.r2));
    sd.l1 = State{std::conj(left[0][0]), std::conj(left[0][1])};
    sd.l2 = State{std::conj(left[1][0]), std::conj(left[1][1])};
    sd.overlap = inner(sd.r1, sd.r2);
    sd.c_param = inner(orthogonal_complement(sd.r1), sd.r2);
    return sd;
}

OverlapInfo eigen_overlap(const SpectralData& sd) {
    if (sd.is_defective) return OverlapInfo{Complex{1.0}, Complex{}, true};
    return OverlapInfo{sd.overlap, sd.c_param, false};
}

State jordan_adjoint(const Generator& gen, Complex e, const State& phi, double tol) {
    const Mat2 n = shifted(gen.m, e);
    const double nn = n.frobenius_norm() * n.frobenius_norm();
    if (nn == 0.0) throw NotDefectiveError("generator is a scalar matrix; no Jordan chain exists");
    if ((n * n).frobenius_norm() > tol * nn)
        throw NotDefectiveError("M - eI is not nilpotent within tolerance; eigenvalue is not defective");

    // For a rank-one N the pseudo-inverse is N^H / ||N||_F^2.
    const State x = Complex{1.0 / nn} * (n.adjoint() * phi);
    const double residual = norm(n * x - phi);
    const double bound = (2.0 * tol + 64.0 * kEps) * norm(phi);
    if (residual > bound)
        throw NumericalDegeneracyError("Jordan chain equation inconsistent: residual " + std::to_string(residual));
    return x;
}

JordanChain jordan_chain(const Generator& gen, Complex e, double tol) {
    const Mat2 n = shifted(gen.m, e);
    const State from_row0{n[0][1], -n[0][0]};
    const State from_row1{-n[1][1], n[1][0]};
    if (norm2(from_row0) == 0.0 && norm2(from_row1) == 0.0)
        throw NotDefectiveError("generator is a scalar matrix; no Jordan chain exists");

    JordanChain chain;
    chain.eigenvector = gauge_fix(norm2(from_row0) >= norm2(from_row1) ? from_row0 : from_row1);
    chain.adjoint = jordan_adjoint(gen, e, chain.eigenvector, tol);
    chain.residual = norm(n * chain.adjoint - chain.eigenvector);
    return chain;
}

EigenCoefficients expand_orthogonal_mix(Complex b1, Complex b2, const SpectralData& sd) {
    if (sd.is_defective || sd.c_param == Complex{})
        throw ExceptionalPointError("c = 0 at the exceptional point; phi_perp is not spanned by the eigenbasis");
    const Complex a2 = b2 / sd.c_param;
    return EigenCoefficients{b1 - a2 * sd.overlap, a2};
}

}  // namespace piep
