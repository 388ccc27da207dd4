#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "folia/jet.hpp"

namespace folia {

template <class T>
using Vec4 = std::array<T, 4>;
template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

using Vec4d = Vec4<double>;
using Mat4d = Mat4<double>;
using JetVec = Vec4<Jet2>;
using JetMat = Mat4<Jet2>;

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
Mat4<T> mat4_zero() {
    Mat4<T> m{};
    for (auto& row : m)
        for (auto& x : row) x = T{};
    return m;
}

template <class T>
Mat4<T> mat4_identity() {
    Mat4<T> m = mat4_zero<T>();
    for (int i = 0; i < 4; ++i) m[i][i] = T(1.0);
    return m;
}

template <class T>
Vec4<T> mat_vec(const Mat4<T>& m, const Vec4<T>& x) {
    Vec4<T> r{};
    for (int i = 0; i < 4; ++i) {
        T s{};
        for (int j = 0; j < 4; ++j) s += m[i][j] * x[j];
        r[i] = s;
    }
    return r;
}

template <class T>
Mat4<T> mat_mul(const Mat4<T>& a, const Mat4<T>& b) {
    Mat4<T> r = mat4_zero<T>();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

/// LU factorization with partial pivoting over any ring with division by
/// units; pivots are compared by the scalar part so the same elimination
/// order is used for plain doubles and for jets.
template <class T>
struct Lu4 {
    Mat4<T> lu;
    std::array<int, 4> perm;
    int sign = 1;
};

template <class T>
Lu4<T> lu_factor(Mat4<T> a) {
    Lu4<T> f;
    f.lu = a;
    for (int i = 0; i < 4; ++i) f.perm[i] = i;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::abs(value(f.lu[col][col]));
        for (int r = col + 1; r < 4; ++r) {
            double cand = std::abs(value(f.lu[r][col]));
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (best == 0.0) throw SingularMatrixError("singular matrix in LU factorization");
        if (piv != col) {
            std::swap(f.lu[piv], f.lu[col]);
            std::swap(f.perm[piv], f.perm[col]);
            f.sign = -f.sign;
        }
        for (int r = col + 1; r < 4; ++r) {
            T m = f.lu[r][col] / f.lu[col][col];
            f.lu[r][col] = m;
            for (int c = col + 1; c < 4; ++c) f.lu[r][c] -= m * f.lu[col][c];
        }
    }
    return f;
}

template <class T>
Vec4<T> lu_solve(const Lu4<T>& f, const Vec4<T>& b) {
    Vec4<T> y{};
    for (int i = 0; i < 4; ++i) {
        T s = b[f.perm[i]];
        for (int j = 0; j < i; ++j) s -= f.lu[i][j] * y[j];
        y[i] = s;
    }
    Vec4<T> x{};
    for (int i = 3; i >= 0; --i) {
        T s = y[i];
        for (int j = i + 1; j < 4; ++j) s -= f.lu[i][j] * x[j];
        x[i] = s / f.lu[i][i];
    }
    return x;
}

template <class T>
T lu_det(const Lu4<T>& f) {
    T d = T(double(f.sign));
    for (int i = 0; i < 4; ++i) d = d * f.lu[i][i];
    return d;
}

template <class T>
Mat4<T> lu_inverse(const Lu4<T>& f) {
    Mat4<T> inv;
    for (int c = 0; c < 4; ++c) {
        Vec4<T> e{};
        e[c] = T(1.0);
        Vec4<T> col = lu_solve(f, e);
        for (int r = 0; r < 4; ++r) inv[r][c] = col[r];
    }
    return inv;
}

template <class T>
Mat4<T> mat_inverse(const Mat4<T>& a) {
    return lu_inverse(lu_factor(a));
}

inline double dot(const Vec4d& a, const Vec4d& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Vec4d& a) { return std::sqrt(dot(a, a)); }

/// g-inner product.
template <class T>
T metric_dot(const Mat4<T>& g, const Vec4<T>& x, const Vec4<T>& y) {
    T s{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g[i][j] * x[i] * y[j];
    return s;
}

/// Pivoted Cholesky positive-definiteness test; returns the failing pivot
/// index, or -1 when all pivots exceed the threshold.
inline int cholesky_fail_pivot(Mat4d a, double threshold = 1e-12) {
    std::array<int, 4> order{0, 1, 2, 3};
    for (int k = 0; k < 4; ++k) {
        int best = k;
        for (int r = k + 1; r < 4; ++r)
            if (a[order[r]][order[r]] > a[order[best]][order[best]]) best = r;
        std::swap(order[k], order[best]);
        int pk = order[k];
        if (a[pk][pk] < threshold) return pk;
        double root = std::sqrt(a[pk][pk]);
        for (int r = k + 1; r < 4; ++r) {
            int pr = order[r];
            double l = a[pr][pk] / root;
            for (int c = k + 1; c <= r; ++c) {
                int pc = order[c];
                a[pr][pc] -= l * (a[pc][pk] / root);
                a[pc][pr] = a[pr][pc];
            }
        }
    }
    return -1;
}

/// Cyclic Jacobi eigendecomposition of a symmetric 4x4 matrix.
/// Returns eigenvalues (ascending) and matching orthonormal eigenvectors
/// as columns of v.
inline void sym_eigen(Mat4d a, Vec4d& eig, Mat4d& v) {
    v = mat4_identity<double>();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double phi = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                double c = std::cos(phi), s = std::sin(phi);
                for (int k = 0; k < 4; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    for (int i = 0; i < 4; ++i) eig[i] = a[i][i];
    // insertion sort, carrying columns
    for (int i = 1; i < 4; ++i)
        for (int j = i; j > 0 && eig[j - 1] > eig[j]; --j) {
            std::swap(eig[j - 1], eig[j]);
            for (int k = 0; k < 4; ++k) std::swap(v[k][j - 1], v[k][j]);
        }
}

/// Minimum-norm least-squares solution of a (possibly rank-deficient)
/// 4x4 system via the eigendecomposition of M^T M.
inline Vec4d least_squares_4x4(const Mat4d& m, const Vec4d& b, double rank_tol = 1e-10) {
    Mat4d mtm = mat4_zero<double>();
    Vec4d mtb{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) mtm[i][j] += m[k][i] * m[k][j];
        }
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) mtb[i] += m[k][i] * b[k];
    Vec4d eig;
    Mat4d v;
    sym_eigen(mtm, eig, v);
    double cutoff = std::max(std::abs(eig[3]), 1.0e-300) * rank_tol;
    Vec4d x{};
    for (int n = 0; n < 4; ++n) {
        if (eig[n] <= cutoff) continue;
        double proj = 0.0;
        for (int i = 0; i < 4; ++i) proj += v[i][n] * mtb[i];
        for (int i = 0; i < 4; ++i) x[i] += v[i][n] * proj / eig[n];
    }
    return x;
}

}  // namespace folia
