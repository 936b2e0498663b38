#pragma once

#include <vector>

#include "rtq/errors.hpp"
#include "rtq/rational.hpp"

namespace rtq {

// Small dense rational-matrix helpers (row-major n*n vectors). Sizes here are
// the Lie-algebra rank, so cubic algorithms are fine.
using RatMat = std::vector<Rational>;
using RatVec = std::vector<Rational>;

inline RatMat rat_identity(int n) {
    RatMat m(static_cast<size_t>(n * n), Rational(0));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i * n + i)] = Rational(1);
    return m;
}

inline RatMat rat_mul(const RatMat& a, const RatMat& b, int n) {
    RatMat r(static_cast<size_t>(n * n), Rational(0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Rational& aik = a[static_cast<size_t>(i * n + k)];
            if (aik.is_zero()) continue;
            for (int j = 0; j < n; ++j)
                r[static_cast<size_t>(i * n + j)] += aik * b[static_cast<size_t>(k * n + j)];
        }
    return r;
}

inline RatVec rat_mul_vec(const RatMat& a, const RatVec& x, int n) {
    RatVec r(static_cast<size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r[static_cast<size_t>(i)] += a[static_cast<size_t>(i * n + j)] * x[static_cast<size_t>(j)];
    return r;
}

inline Rational rat_dot(const RatVec& x, const RatVec& y) {
    Rational s(0);
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline Rational rat_det(RatMat m, int n) {
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (!m[static_cast<size_t>(row * n + col)].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<size_t>(col * n + j)], m[static_cast<size_t>(pivot * n + j)]);
            det = -det;
        }
        Rational p = m[static_cast<size_t>(col * n + col)];
        det *= p;
        for (int row = col + 1; row < n; ++row) {
            Rational f = m[static_cast<size_t>(row * n + col)] / p;
            if (f.is_zero()) continue;
            for (int j = col; j < n; ++j)
                m[static_cast<size_t>(row * n + j)] -= f * m[static_cast<size_t>(col * n + j)];
        }
    }
    return det;
}

inline RatMat rat_inverse(const RatMat& m_in, int n) {
    RatMat a(static_cast<size_t>(n * 2 * n), Rational(0));
    auto at = [&](int i, int j) -> Rational& { return a[static_cast<size_t>(i * 2 * n + j)]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) at(i, j) = m_in[static_cast<size_t>(i * n + j)];
        at(i, n + i) = Rational(1);
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (!at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) fail(Errc::SingularB, "matrix is singular");
        if (pivot != col)
            for (int j = 0; j < 2 * n; ++j) std::swap(at(col, j), at(pivot, j));
        Rational inv = Rational(1) / at(col, col);
        for (int j = 0; j < 2 * n; ++j) at(col, j) *= inv;
        for (int row = 0; row < n; ++row) {
            if (row == col || at(row, col).is_zero()) continue;
            Rational f = at(row, col);
            for (int j = 0; j < 2 * n; ++j) at(row, j) -= f * at(col, j);
        }
    }
    RatMat out(static_cast<size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<size_t>(i * n + j)] = at(i, n + j);
    return out;
}

// Signature (n+ minus n-) of a symmetric rational quadratic form, by exact
// congruent diagonalization.
inline int rat_signature(RatMat q, int n) {
    auto at = [&](int i, int j) -> Rational& { return q[static_cast<size_t>(i * n + j)]; };
    int sig = 0;
    for (int t = 0; t < n; ++t) {
        if (at(t, t).is_zero()) {
            int swap_i = -1;
            for (int i = t + 1; i < n; ++i)
                if (!at(i, i).is_zero()) {
                    swap_i = i;
                    break;
                }
            if (swap_i >= 0) {
                for (int k = 0; k < n; ++k) std::swap(at(t, k), at(swap_i, k));
                for (int k = 0; k < n; ++k) std::swap(at(k, t), at(k, swap_i));
            } else {
                int j_off = -1;
                for (int j = t + 1; j < n; ++j)
                    if (!at(t, j).is_zero()) {
                        j_off = j;
                        break;
                    }
                if (j_off < 0) continue; // zero row: zero eigenvalue, no contribution
                // Congruence x_t -> x_t + x_j makes the diagonal entry 2*q_tj.
                for (int k = t; k < n; ++k) at(t, k) += at(j_off, k);
                for (int k = t; k < n; ++k) at(k, t) += at(k, j_off);
            }
        }
        if (at(t, t).is_zero()) continue;
        Rational p = at(t, t);
        sig += p.sign();
        // Schur complement on the trailing block; row/col t is not revisited.
        for (int i = t + 1; i < n; ++i) {
            if (at(i, t).is_zero()) continue;
            Rational f = at(i, t) / p;
            for (int j = t + 1; j < n; ++j) at(i, j) -= f * at(t, j);
        }
        for (int i = t + 1; i < n; ++i) {
            at(i, t) = Rational(0);
            at(t, i) = Rational(0);
        }
    }
    return sig;
}

} // namespace rtq
