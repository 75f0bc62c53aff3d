#pragma once

#include <complex>

namespace sram {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

// Row-major 2x2 real matrix.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

Vec2 mat2_mul(const Mat2& m, const Vec2& v);

struct Eigen2 {
    std::complex<double> lambda1, lambda2;  // |Re lambda1| <= |Re lambda2|
    bool complex_pair = false;
    // Real eigenvectors (unit norm), valid only when !complex_pair.
    Vec2 v1, v2;
};

Eigen2 eigen2(const Mat2& m);

// Stationary covariance of dx = A x dt + B dW with Q = B B^T diagonal:
// solves A S + S A^T + Q = 0 for symmetric S via the equivalent 3x3 system.
// Throws std::runtime_error if the system is singular (A not Hurwitz in
// general position).
struct Sym2 {
    double s11 = 0.0, s12 = 0.0, s22 = 0.0;
    bool positive_definite() const { return s11 > 0.0 && s11 * s22 - s12 * s12 > 0.0; }
};

Sym2 lyapunov2(const Mat2& a, double q11, double q22);

}
