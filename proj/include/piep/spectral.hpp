#pragma once

// Coupled-mode generator of two waveguides with gain/loss and its spectral
// structure, including the defective (exceptional point) case.

#include <optional>

#include "piep/linalg.hpp"

namespace piep {

/// Default relative tolerance on ||kappa|^2 - g^2| / g^2 for EP detection.
inline constexpr double kDefaultEpTol = 1e-10;

struct SystemParams {
    double beta = 0.0;   ///< real propagation constant
    double gamma = 0.0;  ///< half-sum of the imaginary wavenumber parts
    double g = 0.0;      ///< half-difference of the imaginary wavenumber parts, >= 0
    Complex kappa{};     ///< coupling constant

    /// Throws InvalidParameterError if a field is non-finite or g < 0.
    void validate() const;
};

/// The 2x2 matrix M of -i d/dz u = M u.
struct Generator {
    Mat2 m;
};

struct SpectralData {
    Complex e1, e2;           ///< e1 on the + branch (Re e1 >= Re e2, ties by Im)
    State r1{}, r2{};         ///< unit right eigenvectors, first nonzero component real > 0
    std::optional<State> l1;  ///< left eigenvectors with <l_i|r_j> = delta_ij; absent when defective
    std::optional<State> l2;
    Complex overlap;          ///< <r1|r2>
    Complex c_param;          ///< <phi_perp|r2>
    bool is_defective = false;
    std::optional<State> adjoint;  ///< Jordan adjoint vector, only when defective
};

Generator build_generator(const SystemParams& params);

/// Closed-form eigenpairs of any 2x2 generator. For coupled-mode matrices
/// e_{1,2} = beta + i gamma +- sqrt(|kappa|^2 - g^2).
SpectralData spectral_decompose(const Generator& gen, double ep_tol = kDefaultEpTol);

/// Unit vector orthogonal to r: (-conj(r[1]), conj(r[0])).
State orthogonal_complement(const State& r);

struct OverlapInfo {
    Complex overlap;
    Complex c_param;
    bool at_exceptional_point = false;
};

/// Overlap <r1|r2> and c = <phi_perp|r2>. At the EP returns overlap 1, c 0
/// and sets at_exceptional_point.
OverlapInfo eigen_overlap(const SpectralData& sd);

struct JordanChain {
    State eigenvector{};  ///< unit, gauge-fixed
    State adjoint{};      ///< minimal-norm solution of (M - eI) x = eigenvector
    double residual = 0.0;
};

/// Minimal-norm adjoint vector for an arbitrary right-hand side phi.
/// Throws NotDefectiveError if M - eI is not nilpotent within tol and
/// NumericalDegeneracyError if phi is not in range(M - eI).
State jordan_adjoint(const Generator& gen, Complex e, const State& phi, double tol);

JordanChain jordan_chain(const Generator& gen, Complex e, double tol = kDefaultEpTol);

struct EigenCoefficients {
    Complex a1, a2;
};

/// Coefficients of b1|phi1> + b2|phi_perp> in the eigenbasis (r1, r2).
/// Throws ExceptionalPointError when c = 0.
EigenCoefficients expand_orthogonal_mix(Complex b1, Complex b2, const SpectralData& sd);

}  // namespace piep
