/**
 * Matroids given by their bases: axioms, rank, circuits, components and
 * polytope dimension, plus principal transversal matroids of bipartite graphs.
 */
#pragma once

#include "dressian/combinat.hpp"
#include "dressian/simplex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace dressian {

class MatroidError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Basis exchange: for all B1, B2 and x in B1 - B2 there is y in B2 - B1 with B1 - x + y a basis.
inline bool is_matroid(const std::vector<KSubset>& bases) {
    if (bases.empty()) return false;
    const int k = bases[0].size();
    std::unordered_set<std::uint32_t> set;
    for (auto b : bases) {
        if (b.size() != k) throw std::invalid_argument("is_matroid: bases of different sizes");
        set.insert(b.bits());
    }
    for (auto b1 : bases)
        for (auto b2 : bases) {
            std::uint32_t out = b1.bits() & ~b2.bits(), in = b2.bits() & ~b1.bits();
            for (std::uint32_t x = out; x; x &= x - 1) {
                std::uint32_t xb = x & (~x + 1);
                bool ok = false;
                for (std::uint32_t y = in; y && !ok; y &= y - 1) {
                    std::uint32_t yb = y & (~y + 1);
                    ok = set.count((b1.bits() & ~xb) | yb) > 0;
                }
                if (!ok) return false;
            }
        }
    return true;
}

class Matroid {
public:
    Matroid(int n, std::vector<KSubset> bases) : n_(n), bases_(std::move(bases)) {
        std::sort(bases_.begin(), bases_.end());
        bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
        if (bases_.empty()) throw MatroidError("Matroid: no bases");
        for (auto b : bases_)
            if (n < 32 && (b.bits() >> n) != 0) throw MatroidError("Matroid: basis outside ground set");
        if (!is_matroid(bases_)) throw MatroidError("Matroid: basis exchange axiom fails");
        k_ = bases_[0].size();
    }
    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<KSubset>& bases() const { return bases_; }

    int rank(KSubset a) const {
        int r = 0;
        for (auto b : bases_) r = std::max(r, (a & b).size());
        return r;
    }
    bool is_basis(KSubset s) const { return std::binary_search(bases_.begin(), bases_.end(), s); }

    /// Minimal dependent sets, by increasing size then lexicographically.
    std::vector<KSubset> circuits() const {
        std::vector<KSubset> out;
        for (int size = 1; size <= std::min(k_ + 1, n_); ++size)
            for (auto s : enumerate_ksubsets(n_, size)) {
                if (rank(s) == size) continue;
                bool minimal = true;
                for (int e : s.elements())
                    if (rank(s.without(e)) < size - 1) {
                        minimal = false;
                        break;
                    }
                if (minimal) out.push_back(s);
            }
        return out;
    }

    bool is_loop(int e) const { return rank(KSubset(0).with(e)) == 0; }

    /// Connected components: i ~ j iff a circuit contains both. Loops and coloops are singletons.
    std::vector<KSubset> connected_components() const {
        std::vector<int> parent(n_ + 1);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto c : circuits()) {
            auto e = c.elements();
            for (std::size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
        }
        std::vector<KSubset> comps;
        std::vector<int> slot(n_ + 1, -1);
        for (int e = 1; e <= n_; ++e) {
            int r = find(e);
            if (slot[r] < 0) {
                slot[r] = static_cast<int>(comps.size());
                comps.push_back(KSubset(0));
            }
            comps[slot[r]] = comps[slot[r]].with(e);
        }
        return comps;
    }
    int component_count() const { return static_cast<int>(connected_components().size()); }
    /// Dimension of the matroid polytope: n minus the number of connected components.
    int polytope_dim() const { return n_ - component_count(); }

    friend bool operator==(const Matroid& a, const Matroid& b) { return a.n_ == b.n_ && a.bases_ == b.bases_; }

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<KSubset> bases_;
};

inline Vec indicator(KSubset s, int n) {
    Vec v(n);
    for (int e : s.elements()) v[e - 1] = 1;
    return v;
}

/**
 * Edges of conv{e_S : S in vertices}. The segment between two vertices is an
 * edge iff its midpoint has no convex representation using another vertex.
 */
inline std::vector<std::pair<KSubset, KSubset>> polytope_edges(const std::vector<KSubset>& verts, int n) {
    std::vector<std::pair<KSubset, KSubset>> out;
    const std::size_t m = verts.size();
    std::vector<Vec> pts;
    for (auto v : verts) pts.push_back(indicator(v, n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            // Variables lambda_1..lambda_m >= 0; sum lambda = 1; sum lambda p = (p_i + p_j)/2.
            Matrix a_eq;
            Vec b_eq;
            for (int c = 0; c < n; ++c) {
                Vec row(m);
                for (std::size_t l = 0; l < m; ++l) row[l] = pts[l][c];
                a_eq.push_back(std::move(row));
                b_eq.push_back((pts[i][c] + pts[j][c]) / 2);
            }
            a_eq.push_back(Vec(m, Rational(1)));
            b_eq.push_back(1);
            Matrix a_le;
            for (std::size_t l = 0; l < m; ++l) a_le.push_back(Rational(-1) * unit_vec(m, l));
            Vec obj(m, Rational(1));
            obj[i] = 0;
            obj[j] = 0;
            LpResult r = maximize(obj, a_le, Vec(m), a_eq, b_eq);
            if (r.status == LpStatus::optimal && r.value.is_zero()) out.emplace_back(verts[i], verts[j]);
        }
    return out;
}

/// Geometric matroid test: every edge of the polytope is parallel to some e_i - e_j.
inline bool edge_parallel_check(const std::vector<KSubset>& verts, int n) {
    for (auto& [a, b] : polytope_edges(verts, n))
        if (a.symmetric_difference_size(b) != 2) return false;
    return true;
}

/// Every cell is a matroid polytope.
inline bool is_matroid_subdivision(const std::vector<std::vector<KSubset>>& cells) {
    return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return is_matroid(c); });
}

/**
 * Principal transversal matroid of a bipartite graph on [k] and [k+1..n]:
 * bases ([k] - A) + B where the edges contain a perfect matching of A and B.
 * Edges are pairs (i, j) with 1 <= i <= k < j <= n.
 */
inline Matroid principal_transversal_matroid(int k, int n, const std::vector<std::pair<int, int>>& edges) {
    if (edges.empty()) throw std::invalid_argument("principal_transversal_matroid: empty graph");
    std::vector<std::uint32_t> adj(k + 1, 0);
    for (auto [i, j] : edges) {
        if (i < 1 || i > k || j <= k || j > n) throw std::invalid_argument("principal_transversal_matroid: bad edge");
        adj[i] |= 1u << (j - 1);
    }
    const std::uint32_t left = (1u << k) - 1;
    std::vector<KSubset> bases;
    for (auto s : enumerate_ksubsets(n, k)) {
        std::uint32_t a = left & ~s.bits(), b = s.bits() & ~left;
        // Perfect matching between a and b by DP over subsets of b.
        std::vector<int> as;
        for (std::uint32_t x = a; x; x &= x - 1) as.push_back(std::countr_zero(x) + 1);
        std::vector<std::uint32_t> reach{0};
        for (int i : as) {
            std::vector<std::uint32_t> next;
            for (auto used : reach)
                for (std::uint32_t y = adj[i] & b & ~used; y; y &= y - 1) next.push_back(used | (y & (~y + 1)));
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            reach = std::move(next);
            if (reach.empty()) break;
        }
        if (!reach.empty()) bases.push_back(s);
    }
    return Matroid(n, std::move(bases));
}

}  // namespace dressian
