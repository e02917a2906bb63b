/**
 * Tropical point configurations as lifting functions on a product of
 * simplices: types, tropical complexes, canonical forms under the
 * equivalence moves, rigidity, and enumeration of coarsest subdivisions.
 */
#pragma once

#include "dressian/tight_span.hpp"
#include "dressian/tropical.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace dressian {

/// S_1..S_k, each a sorted list of point indices 1..n-k.
using TypeVector = std::vector<std::vector<int>>;

/// Heights of the product vertices (i, j): h[(i-1)(n-k) + (j-1)] = v[i-1][j-1].
inline Vec product_heights(const PointConfig& cfg) {
    Vec h;
    for (const auto& row : cfg.v) h.insert(h.end(), row.begin(), row.end());
    return h;
}

/// Regular subdivision of Delta_{k-1} x Delta_{n-k-1} lifting (e_i, e_j) to v_ij.
inline Subdivision product_subdivision(const PointConfig& cfg) {
    return regular_subdivision(Polytope::product(cfg.k, cfg.n), product_heights(cfg));
}

/// S_i = { j : v_ij - x_i = min_l (v_lj - x_l) }.
inline TypeVector type_of(const Vec& x, const PointConfig& cfg) {
    if (static_cast<int>(x.size()) != cfg.k) throw std::invalid_argument("type_of: point needs k coordinates");
    TypeVector t(cfg.k);
    for (int j = 0; j < cfg.points(); ++j) {
        Rational best = cfg.v[0][j] - x[0];
        for (int i = 1; i < cfg.k; ++i) best = std::min(best, cfg.v[i][j] - x[i]);
        for (int i = 0; i < cfg.k; ++i)
            if (cfg.v[i][j] - x[i] == best) t[i].push_back(j + 1);
    }
    return t;
}

/// Type of a set of product vertices: S_i = { j : (i, j) in the set }.
inline TypeVector type_of_cell(const Polytope& prod, const Cell& c) {
    TypeVector t(prod.k);
    for (int v : c) {
        auto [i, j] = prod.product_pair(v);
        t[i - 1].push_back(j);
    }
    for (auto& s : t) std::sort(s.begin(), s.end());
    return t;
}

/**
 * Bounded cells of the type decomposition of T^(k-1). Pseudo-vertices come
 * from the maximal cells of the dual subdivision: on a cell, v_ij = a_i + b_j
 * with v >= a_i + b_j elsewhere, and a (normalized to a_1 = 0) is the point
 * whose type is the cell.
 */
struct TropicalComplex {
    struct Cell {
        TypeVector type;
        std::vector<int> vertices;  ///< pseudo-vertex indices
        int dim = 0;
    };
    std::vector<Vec> pseudo_vertices;
    std::vector<Cell> cells;  ///< one per tight-span element, in the same order
    TightSpan tight_span;
};

inline Vec pseudo_vertex(const PointConfig& cfg, const Polytope& prod, const dressian::Cell& c) {
    const int k = cfg.k, m = cfg.points();
    std::vector<std::optional<Rational>> a(k), b(m);
    a[0] = Rational(0);
    for (bool changed = true; changed;) {
        changed = false;
        for (int v : c) {
            auto [i, j] = prod.product_pair(v);
            if (a[i - 1] && !b[j - 1]) {
                b[j - 1] = cfg.v[i - 1][j - 1] - *a[i - 1];
                changed = true;
            } else if (!a[i - 1] && b[j - 1]) {
                a[i - 1] = cfg.v[i - 1][j - 1] - *b[j - 1];
                changed = true;
            }
        }
    }
    Vec x(k);
    for (int i = 0; i < k; ++i) {
        if (!a[i]) throw std::logic_error("pseudo_vertex: cell graph is not connected");
        x[i] = *a[i];
    }
    return x;
}

inline TropicalComplex tropical_complex(const PointConfig& cfg) {
    Polytope prod = Polytope::product(cfg.k, cfg.n);
    Subdivision g = regular_subdivision(prod, product_heights(cfg));
    TropicalComplex tc;
    tc.tight_span = tight_span(g, product_heights(cfg));
    for (const auto& c : g.cells) tc.pseudo_vertices.push_back(pseudo_vertex(cfg, prod, c));
    for (std::size_t e = 0; e < tc.tight_span.elements.size(); ++e) {
        const auto& el = tc.tight_span.elements[e];
        tc.cells.push_back({type_of_cell(prod, el.points), el.cells, tc.tight_span.dim_of(e)});
    }
    return tc;
}

/// Subtract row 0 from every column, then each row's first entry from the row.
inline Matrix normalize_first_row_and_column(Matrix v) {
    const std::size_t k = v.size(), m = v[0].size();
    for (std::size_t j = 0; j < m; ++j) {
        Rational c = v[0][j];
        for (std::size_t i = 0; i < k; ++i) v[i][j] -= c;
    }
    for (std::size_t i = 0; i < k; ++i) {
        Rational r = v[i][0];
        for (std::size_t j = 0; j < m; ++j) v[i][j] -= r;
    }
    return v;
}

/**
 * Canonical representative under row permutations, column permutations and
 * adding constants to rows or columns: the lexicographically smallest
 * normalized matrix over all row and column permutations.
 */
inline PointConfig canonical_form(const PointConfig& cfg) {
    const int k = cfg.k, m = cfg.points();
    std::vector<int> rp(k), cp(m);
    std::iota(rp.begin(), rp.end(), 0);
    std::optional<Matrix> best;
    do {
        std::iota(cp.begin(), cp.end(), 0);
        do {
            Matrix w(k, Vec(m));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < m; ++j) w[i][j] = cfg.v[rp[i]][cp[j]];
            w = normalize_first_row_and_column(std::move(w));
            if (!best || w < *best) best = std::move(w);
        } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
    return PointConfig(k, cfg.n, std::move(*best));
}

inline bool equivalent(const PointConfig& a, const PointConfig& b) {
    return a.k == b.k && a.n == b.n && canonical_form(a) == canonical_form(b);
}

/// Secondary cone of the subdivision induced by the configuration, in R^(k x (n-k)).
inline SecondaryCone secondary_cone(const PointConfig& cfg) { return secondary_cone(product_subdivision(cfg)); }

/// The configuration induces a coarsest non-trivial subdivision.
inline bool is_tropically_rigid(const PointConfig& cfg) {
    Subdivision g = product_subdivision(cfg);
    if (g.is_trivial()) return false;
    SecondaryCone sc = secondary_cone(g);
    return sc.dim == sc.lineality_dim + 1;
}

/// The configuration induces a triangulation.
inline bool is_generic(const PointConfig& cfg) {
    Subdivision g = product_subdivision(cfg);
    const std::size_t simplex = static_cast<std::size_t>(cfg.n - 1);
    return std::all_of(g.cells.begin(), g.cells.end(), [&](const Cell& c) { return c.size() == simplex; });
}

/// Appends a copy of point (column) i, 1-based.
inline PointConfig duplicate_point(const PointConfig& cfg, int i) {
    if (i < 1 || i > cfg.points()) throw std::invalid_argument("duplicate_point: bad column index");
    Matrix v = cfg.v;
    for (auto& row : v) row.push_back(row[i - 1]);
    return PointConfig(cfg.k, cfg.n + 1, std::move(v));
}

/// Configurations with a repeated point (two columns equal up to an additive constant).
inline bool has_multiple_points(const PointConfig& cfg) {
    for (int a = 0; a < cfg.points(); ++a)
        for (int b = a + 1; b < cfg.points(); ++b) {
            bool same = true;
            for (int i = 1; i < cfg.k && same; ++i) same = cfg.v[i][a] - cfg.v[0][a] == cfg.v[i][b] - cfg.v[0][b];
            if (same) return true;
        }
    return false;
}

/// The k x k staircase: v_ij = 1 below the diagonal, 0 elsewhere. Its subdivision is a k-split.
inline PointConfig k_split_configuration(int k) {
    Matrix v(k, Vec(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < i; ++j) v[i][j] = 1;
    return PointConfig(k, 2 * k, std::move(v));
}

/**
 * For each partition of n-k into k positive parts, the staircase
 * configuration with its j-th point repeated according to the j-th part.
 */
inline std::vector<PointConfig> rigid_partition_family(int k, int n) {
    if (n < 2 * k) throw std::invalid_argument("rigid_partition_family: need n >= 2k");
    PointConfig base = k_split_configuration(k);
    std::vector<PointConfig> out;
    for (const auto& parts : partitions_into(n - k, k)) {
        Matrix v(k);
        for (int j = 0; j < k; ++j)
            for (int r = 0; r < parts[j]; ++r)
                for (int i = 0; i < k; ++i) v[i].push_back(base.v[i][j]);
        out.emplace_back(k, n, std::move(v));
    }
    return out;
}

namespace detail {

/// Lexicographically smallest image of a product subdivision under row and column permutations.
inline std::vector<Cell> canonical_cells(const Subdivision& s) {
    const int k = s.polytope.k, m = s.polytope.n - s.polytope.k;
    std::vector<int> rp(k), cp(m);
    std::iota(rp.begin(), rp.end(), 0);
    std::optional<std::vector<Cell>> best;
    do {
        std::iota(cp.begin(), cp.end(), 0);
        do {
            std::vector<Cell> img;
            for (const auto& c : s.cells) {
                Cell d;
                for (int v : c) d.push_back(rp[v / m] * m + cp[v % m]);
                std::sort(d.begin(), d.end());
                img.push_back(std::move(d));
            }
            std::sort(img.begin(), img.end());
            if (!best || img < *best) best = std::move(img);
        } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
    return *best;
}

inline Matrix as_matrix(const Vec& h, int k, int m) {
    Matrix v(k, Vec(m));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) v[i][j] = h[i * m + j];
    return v;
}

}  // namespace detail

/**
 * Regular triangulations of the product, one per symmetry class, found by
 * walking across facets of secondary cones. Returns height vectors.
 */
inline std::vector<Vec> triangulation_orbit_walk(int k, int n, std::size_t max_classes = 100000) {
    Polytope prod = Polytope::product(k, n);
    const int m = n - k;
    const std::size_t simplex = static_cast<std::size_t>(n - 1);
    auto is_triangulation = [&](const Subdivision& s) {
        return std::all_of(s.cells.begin(), s.cells.end(), [&](const Cell& c) { return c.size() == simplex; });
    };
    // A placing-like start: heights v_ij = (i * j)^2 scaled to break ties.
    Vec start(k * m);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) start[i * m + j] = Rational((i + 1) * (j + 1) * (i + 1) * (j + 1) + i * 7 + j * 3);
    Subdivision t0 = regular_subdivision(prod, start);
    if (!is_triangulation(t0)) throw std::logic_error("triangulation_orbit_walk: start is not a triangulation");

    std::set<std::vector<Cell>> seen{detail::canonical_cells(t0)};
    std::deque<std::pair<Subdivision, Vec>> queue{{t0, start}};
    std::vector<Vec> out;
    while (!queue.empty()) {
        auto [t, h] = queue.front();
        queue.pop_front();
        out.push_back(h);
        SecondaryCone sc = secondary_cone(t);
        RaySet rs = extreme_rays(sc.cone);
        for (const auto& f : cone_facets(sc.cone, rs)) {
            Vec mid(k * m);
            for (int r : f.rays) mid = mid + rs.rays[r];
            const Vec& normal = sc.cone.inequalities[f.inequality];
            Rational eps(1);
            for (int attempt = 0; attempt < 60; ++attempt, eps = eps / 2) {
                Vec beyond = mid - eps * normal;
                Subdivision next = regular_subdivision(prod, beyond);
                if (!is_triangulation(next) || !secondary_cone(next).cone.contains(mid)) continue;
                if (seen.insert(detail::canonical_cells(next)).second) {
                    if (seen.size() > max_classes) throw std::length_error("triangulation_orbit_walk: too many classes");
                    queue.emplace_back(std::move(next), std::move(beyond));
                }
                break;
            }
        }
    }
    return out;
}

/**
 * One canonical configuration per symmetry class of coarsest subdivisions of
 * Delta_{k-1} x Delta_{n-k-1}. Every ray of the secondary fan is a ray of the
 * secondary cone of some regular triangulation, so harvesting rays over one
 * triangulation per symmetry class finds every class.
 */
inline std::vector<PointConfig> enumerate_coarsest_product_subdivisions(int k, int n) {
    HypersimplexSpec spec(k, n);
    const int m = n - k;
    if ((k - 1) * (m - 1) > 8) throw std::invalid_argument("enumerate_coarsest_product_subdivisions: size guard exceeded");
    Polytope prod = Polytope::product(k, n);
    std::map<std::vector<Cell>, PointConfig> classes;
    for (const auto& h : triangulation_orbit_walk(k, n)) {
        SecondaryCone sc = secondary_cone(regular_subdivision(prod, h));
        RaySet rs = extreme_rays(sc.cone);
        for (const auto& r : rs.rays) {
            Subdivision s = regular_subdivision(prod, r);
            auto key = detail::canonical_cells(s);
            if (classes.count(key)) continue;
            if (!is_coarsest(s)) throw std::logic_error("enumerate_coarsest_product_subdivisions: ray is not coarsest");
            classes.emplace(std::move(key), canonical_form(PointConfig(k, n, detail::as_matrix(r, k, m))));
        }
    }
    std::vector<PointConfig> out;
    for (auto& [key, cfg] : classes) out.push_back(cfg);
    std::sort(out.begin(), out.end(), [](const PointConfig& a, const PointConfig& b) { return a.v < b.v; });
    return out;
}

/**
 * Canonical forms of the eleven classes of coarsest regular subdivisions of
 * Delta_2 x Delta_4, as returned by enumerate_coarsest_product_subdivisions(3, 8).
 */
inline std::vector<PointConfig> rigid_catalog_3x5() {
    static const std::vector<std::vector<std::vector<int>>> rows = {
        {{0, 0, 0, 0, 0}, {0, -2, -2, -1, -1}, {0, -2, -1, -1, 0}},
        {{0, 0, 0, 0, 0}, {0, -2, -2, -1, -1}, {0, -1, -1, -1, 0}},
        {{0, 0, 0, 0, 0}, {0, -2, -2, -1, -1}, {0, -1, 0, -1, 1}},
        {{0, 0, 0, 0, 0}, {0, -2, -1, -1, -1}, {0, -1, -1, -1, 0}},
        {{0, 0, 0, 0, 0}, {0, -2, -1, -1, -1}, {0, -1, -1, 0, 0}},
        {{0, 0, 0, 0, 0}, {0, -1, -1, -1, -1}, {0, -1, -1, -1, -1}},
        {{0, 0, 0, 0, 0}, {0, -1, -1, -1, -1}, {0, -1, -1, -1, 0}},
        {{0, 0, 0, 0, 0}, {0, -1, -1, -1, -1}, {0, -1, -1, 0, 0}},
        {{0, 0, 0, 0, 0}, {0, -1, -1, -1, -1}, {0, 0, 0, 0, 0}},
        {{0, 0, 0, 0, 0}, {0, -1, -1, -1, 0}, {0, -1, -1, -1, 0}},
        {{0, 0, 0, 0, 0}, {0, -1, -1, -1, 0}, {0, 0, 0, 0, 0}},
    };
    std::vector<PointConfig> out;
    for (const auto& m : rows) {
        Matrix v;
        for (const auto& r : m) v.emplace_back(r.begin(), r.end());
        out.push_back(PointConfig::from_matrix(v));
    }
    return out;
}

}  // namespace dressian
