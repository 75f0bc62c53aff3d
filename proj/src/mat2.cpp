#include "sram/mat2.hpp"

#include <cmath>
#include <stdexcept>

namespace sram {

Vec2 mat2_mul(const Mat2& m, const Vec2& v) {
    return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
}

namespace {

Vec2 eigvec_for(const Mat2& m, double lambda) {
    // (m - lambda I) v = 0; pick the better-conditioned row.
    double r1x = m.a11 - lambda, r1y = m.a12;
    double r2x = m.a21, r2y = m.a22 - lambda;
    double n1 = std::hypot(r1x, r1y), n2 = std::hypot(r2x, r2y);
    Vec2 v;
    if (n1 >= n2) {
        v = {-r1y, r1x};
    } else {
        v = {-r2y, r2x};
    }
    double n = std::hypot(v.x, v.y);
    if (n == 0.0) return {1.0, 0.0};  // lambda I matrix: any direction
    return {v.x / n, v.y / n};
}

}  // namespace

Eigen2 eigen2(const Mat2& m) {
    Eigen2 e;
    double tr = m.trace(), det = m.det();
    double disc = tr * tr * 0.25 - det;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        double l1 = tr * 0.5 + s, l2 = tr * 0.5 - s;
        if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);
        e.lambda1 = l1;
        e.lambda2 = l2;
        e.v1 = eigvec_for(m, l1);
        e.v2 = eigvec_for(m, l2);
    } else {
        double s = std::sqrt(-disc);
        e.complex_pair = true;
        e.lambda1 = {tr * 0.5, s};
        e.lambda2 = {tr * 0.5, -s};
    }
    return e;
}

Sym2 lyapunov2(const Mat2& a, double q11, double q22) {
    // Unknowns (s11, s12, s22); rows from the (1,1), (1,2), (2,2) entries of
    //   A S + S A^T = -Q.
    double m[3][4] = {
        {2.0 * a.a11, 2.0 * a.a12, 0.0, -q11},
        {a.a21, a.a11 + a.a22, a.a12, 0.0},
        {0.0, 2.0 * a.a21, 2.0 * a.a22, -q22},
    };
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-300)
            throw std::runtime_error("lyapunov2: singular system");
        if (piv != col)
            for (int c = 0; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    Sym2 s;
    s.s11 = m[0][3] / m[0][0];
    s.s12 = m[1][3] / m[1][1];
    s.s22 = m[2][3] / m[2][2];
    return s;
}

}
