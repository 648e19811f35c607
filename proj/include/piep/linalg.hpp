#pragma once

// Fixed-size 2x2 complex linear algebra used throughout the simulator.

#include <array>
#include <cmath>
#include <complex>

namespace piep {

using Complex = std::complex<double>;

/// Two-component mode amplitude vector (u1, u2) or an eigenvector.
using State = std::array<Complex, 2>;

struct Mat2 {
    std::array<std::array<Complex, 2>, 2> m{};

    static Mat2 identity() { return Mat2{{{{Complex{1.0}, Complex{}}, {Complex{}, Complex{1.0}}}}}; }
    static Mat2 diag(Complex a, Complex b) { return Mat2{{{{a, Complex{}}, {Complex{}, b}}}}; }
    static Mat2 from_columns(const State& c0, const State& c1) {
        return Mat2{{{{c0[0], c1[0]}, {c0[1], c1[1]}}}};
    }

    const std::array<Complex, 2>& operator[](std::size_t i) const { return m[i]; }
    std::array<Complex, 2>& operator[](std::size_t i) { return m[i]; }

    Complex trace() const { return m[0][0] + m[1][1]; }
    Complex det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    Mat2 adjoint() const {
        return Mat2{{{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}}};
    }
    double frobenius_norm() const {
        return std::sqrt(std::norm(m[0][0]) + std::norm(m[0][1]) + std::norm(m[1][0]) + std::norm(m[1][1]));
    }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

inline Mat2 operator*(Complex s, const Mat2& a) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r[i][j] = s * a[i][j];
    return r;
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

inline State operator*(const Mat2& a, const State& v) {
    return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
}

inline State operator+(const State& a, const State& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline State operator-(const State& a, const State& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline State operator*(Complex s, const State& v) { return {s * v[0], s * v[1]}; }

/// <a|b>, antilinear in the first argument.
inline Complex inner(const State& a, const State& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

inline double norm2(const State& v) { return std::norm(v[0]) + std::norm(v[1]); }
inline double norm(const State& v) { return std::sqrt(norm2(v)); }

/// Inverse of a 2x2 matrix; caller guarantees det != 0.
inline Mat2 inverse(const Mat2& a) {
    const Complex d = a.det();
    return Mat2{{{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}}};
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline bool is_finite(const State& v) { return is_finite(v[0]) && is_finite(v[1]); }

}  // namespace piep
