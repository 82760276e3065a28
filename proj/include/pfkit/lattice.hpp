#pragma once
// Integer linear algebra over Z: Smith-style diagonalization with unimodular
// row/column transforms, plus left-solve and left-kernel. Used for
// exponent-lattice membership (multiplicative groups written additively) and
// for relation lattices of finitely generated groups.

#include "poly.hpp"

#include <optional>
#include <vector>

namespace pfkit {

using IMat = std::vector<std::vector<Int>>;  // row-major; rows may be empty

inline IMat imat_identity(size_t n) {
    IMat m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline std::vector<Int> vec_mat(const std::vector<Int>& v, const IMat& m) {
    size_t r = m.size(), c = r ? m[0].size() : 0;
    std::vector<Int> out(c, 0);
    for (size_t i = 0; i < r; ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < c; ++j) out[j] += v[i] * m[i][j];
    }
    return out;
}

inline IMat imat_mul(const IMat& a, const IMat& b) {
    size_t r = a.size(), k = r ? a[0].size() : 0, c = b.empty() ? 0 : b[0].size();
    IMat out(r, std::vector<Int>(c, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

struct SnfResult {
    IMat d;  // diagonal (not necessarily divisibility-chained)
    IMat p;  // unimodular, rows x rows
    IMat q;  // unimodular, cols x cols
    // p * m * q == d
};

// Diagonalize m by unimodular row and column operations.
inline SnfResult snf(IMat m) {
    size_t r = m.size(), c = r ? m[0].size() : 0;
    SnfResult res;
    res.p = imat_identity(r);
    res.q = imat_identity(c);
    size_t k = 0;
    while (k < r && k < c) {
        // find a pivot of least absolute value in the trailing submatrix
        size_t pi = r, pj = c;
        Int best = 0;
        for (size_t i = k; i < r; ++i)
            for (size_t j = k; j < c; ++j) {
                if (m[i][j] == 0) continue;
                Int a = m[i][j] < 0 ? Int(-m[i][j]) : m[i][j];
                if (best == 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;  // rest is zero
        std::swap(m[pi], m[k]);
        std::swap(res.p[pi], res.p[k]);
        if (pj != k) {
            for (size_t i = 0; i < r; ++i) std::swap(m[i][pj], m[i][k]);
            for (size_t i = 0; i < c; ++i) std::swap(res.q[i][pj], res.q[i][k]);
        }
        bool clean = true;
        // clear column k
        for (size_t i = k + 1; i < r; ++i) {
            if (m[i][k] == 0) continue;
            Int f = m[i][k] / m[k][k];
            for (size_t j = 0; j < c; ++j) m[i][j] -= f * m[k][j];
            for (size_t j = 0; j < r; ++j) res.p[i][j] -= f * res.p[k][j];
            if (m[i][k] != 0) clean = false;
        }
        // clear row k
        for (size_t j = k + 1; j < c; ++j) {
            if (m[k][j] == 0) continue;
            Int f = m[k][j] / m[k][k];
            for (size_t i = 0; i < r; ++i) m[i][j] -= f * m[i][k];
            for (size_t i = 0; i < c; ++i) res.q[i][j] -= f * res.q[i][k];
            if (m[k][j] != 0) clean = false;
        }
        if (clean) ++k;  // else re-pivot on the (smaller) remainders
    }
    res.d = std::move(m);
    return res;
}

// Solve x * m = b over Z (x is 1 x rows, b is 1 x cols). Returns one solution
// or nothing when none exists.
inline std::optional<std::vector<Int>> solve_left(const IMat& m, const std::vector<Int>& b) {
    size_t r = m.size(), c = r ? m[0].size() : 0;
    if (r == 0) {
        for (const auto& x : b)
            if (x != 0) return std::nullopt;
        return std::vector<Int>{};
    }
    if (b.size() != c) throw DimensionMismatch("solve_left: vector length mismatch");
    SnfResult s = snf(m);
    std::vector<Int> cvec = vec_mat(b, s.q);  // y * d = b * q
    std::vector<Int> y(r, 0);
    for (size_t j = 0; j < c; ++j) {
        Int dj = j < r ? s.d[j][j] : Int(0);
        if (dj != 0) {
            if (cvec[j] % dj != 0) return std::nullopt;
            y[j] = cvec[j] / dj;
        } else if (cvec[j] != 0) {
            return std::nullopt;
        }
    }
    return vec_mat(y, s.p);
}

// Basis of { x : x * m = 0 } as rows.
inline std::vector<std::vector<Int>> kernel_left(const IMat& m) {
    size_t r = m.size(), c = r ? m[0].size() : 0;
    if (r == 0) return {};
    SnfResult s = snf(m);
    std::vector<std::vector<Int>> basis;
    for (size_t i = 0; i < r; ++i) {
        Int di = i < c ? s.d[i][i] : Int(0);
        if (di == 0) basis.push_back(s.p[i]);
    }
    return basis;
}

}  // namespace pfkit
