/**
 * Dense exact linear algebra over Rational: elimination, rank, kernels and
 * integer normalization of vectors.
 */
#pragma once

#include "dressian/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dressian {

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec operator*(const Rational& s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline Vec zero_vec(std::size_t n) { return Vec(n); }
inline Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}
inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

/// Matrix-vector product; rows of m are dotted with v.
inline Vec mul(const Matrix& m, const Vec& v) {
    Vec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

inline Matrix transpose(const Matrix& m, std::size_t cols) {
    Matrix t(cols, Vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

/// Positive multiple of v with coprime integer entries. The zero vector is returned unchanged.
inline Vec primitive_integer(const Vec& v) {
    mpz_class l = 1, g = 0;
    for (const auto& x : v)
        if (!x.is_zero()) l = lcm(l, x.denominator());
    std::vector<mpz_class> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        mpq_class q = v[i].to_mpq() * l;
        ints[i] = q.get_num();
        g = gcd(g, ints[i]);
    }
    if (g == 0) return v;
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (ints[i] != 0) out[i] = Rational(mpz_class(ints[i] / g));
    return out;
}

struct Echelon {
    Matrix rows;              ///< nonzero rows of the reduced row echelon form
    std::vector<int> pivots;  ///< pivot column of each row
};

/// Reduced row echelon form of m (cols columns).
inline Echelon rref(Matrix m, std::size_t cols) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j)
            if (!m[r][j].is_zero()) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
        }
        e.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

/**
 * Rank by fraction-free (Bareiss) elimination. Rows are first scaled to
 * integer vectors, so every intermediate entry is an integer minor.
 */
inline int rank(const Matrix& input) {
    if (input.empty()) return 0;
    const std::size_t cols = input[0].size();
    Matrix m;
    m.reserve(input.size());
    for (const auto& row : input) {
        if (row.size() != cols) throw std::invalid_argument("rank: ragged matrix");
        m.push_back(primitive_integer(row));
    }
    Rational prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

/// Basis of {x : m x = 0} for a matrix with `cols` columns.
inline Matrix nullspace(const Matrix& m, std::size_t cols) {
    Echelon e = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int p : e.pivots) is_pivot[p] = true;
    Matrix basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some solution of m x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b, std::size_t cols) {
    Matrix aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    Echelon e = rref(aug, cols + 1);
    Vec x(cols);
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == static_cast<int>(cols)) return std::nullopt;
        x[e.pivots[i]] = e.rows[i][cols];
    }
    return x;
}

/// Affine dimension of a finite point set (-1 for the empty set).
inline int affine_dimension(const std::vector<Vec>& pts) {
    if (pts.empty()) return -1;
    Matrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    return rank(diffs);
}

}  // namespace dressian
