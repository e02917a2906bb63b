/**
 * Polyhedral cones given by linear equalities and inequalities: dimension,
 * extreme rays via the double description method, facets, and the inverse
 * passage from generators back to constraints.
 */
#pragma once

#include "dressian/simplex.hpp"

#include <bit>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace dressian {

/// {x in R^ambient_dim : e.x = 0 for e in equalities, g.x >= 0 for g in inequalities}.
struct PolyhedralCone {
    std::size_t ambient_dim = 0;
    Matrix equalities;
    Matrix inequalities;

    bool contains(const Vec& x) const {
        for (const auto& e : equalities)
            if (!dot(e, x).is_zero()) return false;
        for (const auto& g : inequalities)
            if (dot(g, x).sign() < 0) return false;
        return true;
    }
    /// Satisfies equalities, and every inequality strictly.
    bool strictly_contains(const Vec& x) const {
        for (const auto& e : equalities)
            if (!dot(e, x).is_zero()) return false;
        for (const auto& g : inequalities)
            if (dot(g, x).sign() <= 0) return false;
        return true;
    }
};

/**
 * Indices of inequalities that hold with equality on the whole cone. Found by
 * one LP: maximize sum s_i with s_i <= 1 and s_i <= g_i.x; the inequalities
 * with s_i < 1 at the optimum are exactly the implicit equalities.
 */
inline std::vector<int> implicit_equalities(const PolyhedralCone& c) {
    const std::size_t d = c.ambient_dim, m = c.inequalities.size();
    if (m == 0) return {};
    const std::size_t nv = d + m;
    Matrix a_le;
    Vec b_le;
    for (std::size_t i = 0; i < m; ++i) {
        Vec row(nv);
        row[d + i] = 1;
        a_le.push_back(row);
        b_le.push_back(1);
        for (std::size_t j = 0; j < d; ++j) row[j] = -c.inequalities[i][j];
        a_le.push_back(std::move(row));
        b_le.push_back(0);
    }
    Matrix a_eq;
    for (const auto& e : c.equalities) {
        Vec row(nv);
        for (std::size_t j = 0; j < d; ++j) row[j] = e[j];
        a_eq.push_back(std::move(row));
    }
    Vec obj(nv);
    for (std::size_t i = 0; i < m; ++i) obj[d + i] = 1;
    LpResult r = maximize(obj, a_le, b_le, a_eq, Vec(a_eq.size()));
    if (r.status != LpStatus::optimal) throw std::logic_error("implicit_equalities: LP not optimal");
    std::vector<int> out;
    for (std::size_t i = 0; i < m; ++i)
        if (r.x[d + i] < Rational(1)) out.push_back(static_cast<int>(i));
    return out;
}

/// Dimension of the cone: ambient_dim minus the rank of all (explicit and implicit) equalities.
inline int cone_dim(const PolyhedralCone& c) {
    Matrix eq = c.equalities;
    for (int i : implicit_equalities(c)) eq.push_back(c.inequalities[i]);
    return static_cast<int>(c.ambient_dim) - rank(eq);
}

/// Fixed-size bit set over constraint indices.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t n) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    BitSet operator&(const BitSet& o) const {
        BitSet r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
        return r;
    }
    bool subset_of(const BitSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    friend bool operator==(const BitSet&, const BitSet&) = default;
    friend bool operator<(const BitSet& a, const BitSet& b) { return a.words_ < b.words_; }

private:
    std::vector<std::uint64_t> words_;
};

struct RaySet {
    Matrix lineality_basis;  ///< reduced row echelon basis of the lineality space
    std::vector<int> lineality_pivots;
    Matrix rays;             ///< primitive integer representatives, sorted

    /// Removes the lineality component by coordinate elimination on the pivot columns.
    Vec reduce(Vec v) const {
        for (std::size_t i = 0; i < lineality_basis.size(); ++i) {
            Rational f = v[lineality_pivots[i]];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!lineality_basis[i][j].is_zero()) v[j] -= f * lineality_basis[i][j];
        }
        return v;
    }
    /// Canonical representative of the ray through v modulo lineality (positive scaling only).
    Vec canonical(const Vec& v) const { return primitive_integer(reduce(v)); }
};

namespace detail {

/**
 * Extreme rays of the pointed cone {z : rows z >= 0} in R^r, where rows has
 * rank r. Double description with the combinatorial adjacency test.
 */
inline Matrix double_description(const Matrix& input_rows, std::size_t r) {
    if (r == 0) return {};
    Matrix rows;
    for (const auto& row : input_rows) rows.push_back(primitive_integer(row));
    const std::size_t m = rows.size();

    // Pick r linearly independent rows.
    std::vector<std::size_t> basis_rows;
    Matrix echelon;
    for (std::size_t i = 0; i < m && basis_rows.size() < r; ++i) {
        Matrix trial = echelon;
        trial.push_back(rows[i]);
        Echelon e = rref(trial, r);
        if (e.rows.size() > echelon.size()) {
            echelon = e.rows;
            basis_rows.push_back(i);
        }
    }
    if (basis_rows.size() < r) throw std::invalid_argument("double_description: cone is not pointed");

    // Inverse of the chosen square submatrix: its columns generate the initial simplicial cone.
    Matrix aug;
    for (std::size_t i = 0; i < r; ++i) {
        Vec row = rows[basis_rows[i]];
        for (std::size_t j = 0; j < r; ++j) row.push_back(i == j ? Rational(1) : Rational(0));
        aug.push_back(std::move(row));
    }
    Echelon inv = rref(aug, 2 * r);
    struct Ray {
        Vec z;
        BitSet zeros;
    };
    std::vector<Ray> rays;
    for (std::size_t col = 0; col < r; ++col) {
        Vec z(r);
        for (std::size_t i = 0; i < r; ++i) z[i] = inv.rows[i][r + col];
        Ray ray{primitive_integer(z), BitSet(m)};
        for (std::size_t i = 0; i < r; ++i)
            if (i != col) ray.zeros.set(basis_rows[i]);
        rays.push_back(std::move(ray));
    }
    std::vector<bool> done(m, false);
    for (auto b : basis_rows) done[b] = true;

    for (std::size_t row = 0; row < m; ++row) {
        if (done[row]) continue;
        done[row] = true;
        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(rows[row], rays[i].z);
            int s = val[i].sign();
            if (s > 0) pos.push_back(i);
            else if (s < 0) neg.push_back(i);
        }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            int s = val[i].sign();
            if (s == 0) rays[i].zeros.set(row);
            if (s >= 0) next.push_back(rays[i]);
        }
        for (auto p : pos) {
            for (auto q : neg) {
                BitSet common = rays[p].zeros & rays[q].zeros;
                if (common.count() + 2 < r) continue;
                bool adjacent = true;
                for (std::size_t w = 0; w < rays.size() && adjacent; ++w) {
                    if (w == p || w == q) continue;
                    if (common.subset_of(rays[w].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                Vec z(r);
                const Rational a = val[p], b = -val[q];
                for (std::size_t t = 0; t < r; ++t) z[t] = a * rays[q].z[t] + b * rays[p].z[t];
                common.set(row);
                next.push_back({primitive_integer(z), common});
            }
        }
        rays = std::move(next);
    }
    Matrix out;
    for (auto& ray : rays) out.push_back(std::move(ray.z));
    return out;
}

}  // namespace detail

/**
 * Extreme rays of the cone modulo its lineality space. Each ray is given by
 * the primitive integer representative in the complement fixed by the
 * lineality basis pivots (see RaySet::canonical); the list is sorted.
 */
inline RaySet extreme_rays(const PolyhedralCone& c) {
    const std::size_t d = c.ambient_dim;
    RaySet out;
    Matrix all = c.equalities;
    all.insert(all.end(), c.inequalities.begin(), c.inequalities.end());
    Matrix lin = nullspace(all, d);
    Echelon le = rref(lin, d);
    out.lineality_basis = le.rows;
    out.lineality_pivots = le.pivots;

    // Complement subspace U = {E x = 0, x_p = 0 for lineality pivots p}.
    Matrix u_eq = c.equalities;
    for (int p : le.pivots) u_eq.push_back(unit_vec(d, static_cast<std::size_t>(p)));
    Matrix basis = nullspace(u_eq, d);
    const std::size_t r = basis.size();
    if (r == 0) return out;
    Matrix rows;
    for (const auto& g : c.inequalities) {
        Vec row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = dot(g, basis[j]);
        rows.push_back(std::move(row));
    }
    Matrix z_rays;
    if (rows.empty()) {
        throw std::logic_error("extreme_rays: nonzero complement without inequalities");
    }
    z_rays = detail::double_description(rows, r);
    for (const auto& z : z_rays) {
        Vec x(d);
        for (std::size_t j = 0; j < r; ++j)
            if (!z[j].is_zero())
                for (std::size_t t = 0; t < d; ++t)
                    if (!basis[j][t].is_zero()) x[t] += z[j] * basis[j][t];
        out.rays.push_back(primitive_integer(x));
    }
    std::sort(out.rays.begin(), out.rays.end());
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    return out;
}

/**
 * The cone generated by rays plus a linear subspace, as a constraint system
 * (computed as the extreme rays of the dual cone).
 */
inline PolyhedralCone cone_from_generators(std::size_t ambient_dim, const Matrix& rays, const Matrix& lineality) {
    PolyhedralCone dual{ambient_dim, lineality, rays};
    RaySet dr = extreme_rays(dual);
    PolyhedralCone out;
    out.ambient_dim = ambient_dim;
    out.equalities = dr.lineality_basis;
    out.inequalities = dr.rays;
    return out;
}

struct ConeFacet {
    int inequality;          ///< index of one inequality defining the facet
    std::vector<int> rays;   ///< indices into RaySet::rays of rays on the facet
};

/**
 * Facets of a cone with known rays: distinct maximal tight-ray sets whose span
 * (with the lineality) has dimension one less than the cone.
 */
inline std::vector<ConeFacet> cone_facets(const PolyhedralCone& c, const RaySet& rs) {
    const int lin_dim = static_cast<int>(rs.lineality_basis.size());
    const int dim = lin_dim + rank(rs.rays.empty() ? Matrix{} : rs.rays);
    std::vector<ConeFacet> out;
    std::set<std::vector<int>> seen;
    for (std::size_t g = 0; g < c.inequalities.size(); ++g) {
        std::vector<int> tight;
        Matrix span = rs.lineality_basis;
        bool implicit = true;
        for (std::size_t i = 0; i < rs.rays.size(); ++i) {
            if (dot(c.inequalities[g], rs.rays[i]).is_zero()) {
                tight.push_back(static_cast<int>(i));
                span.push_back(rs.rays[i]);
            } else {
                implicit = false;
            }
        }
        if (implicit) continue;
        if ((span.empty() ? 0 : rank(span)) != dim - 1) continue;
        if (!seen.insert(tight).second) continue;
        out.push_back({static_cast<int>(g), std::move(tight)});
    }
    return out;
}

}  // namespace dressian
