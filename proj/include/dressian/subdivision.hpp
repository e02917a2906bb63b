/**
 * Polytopal subdivisions of hypersimplices, products of simplices and small
 * explicit point sets, stored as lists of maximal cells (point index sets).
 */
#pragma once

#include "dressian/lower_hull.hpp"
#include "dressian/matroid.hpp"
#include "dressian/polytope.hpp"
#include "dressian/simplex.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dressian {

class SubdivisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::vector<int>;

struct Subdivision {
    Polytope polytope;
    std::vector<Cell> cells;  ///< maximal cells, each sorted; list sorted

    Subdivision() = default;
    Subdivision(Polytope p, std::vector<Cell> c) : polytope(std::move(p)), cells(std::move(c)) { normalize(); }

    static Subdivision trivial(Polytope p) {
        Cell all(p.vertex_count());
        for (int i = 0; i < p.vertex_count(); ++i) all[i] = i;
        return Subdivision(std::move(p), {std::move(all)});
    }
    std::size_t spread() const { return cells.size(); }
    bool is_trivial() const { return cells.size() == 1; }

    /// Cells of a hypersimplex subdivision as lists of k-subsets.
    std::vector<std::vector<KSubset>> cell_subsets() const {
        if (polytope.kind != Polytope::Kind::hypersimplex)
            throw std::logic_error("cell_subsets: not a hypersimplex subdivision");
        std::vector<std::vector<KSubset>> out;
        for (const auto& c : cells) {
            std::vector<KSubset> s;
            for (int v : c) s.push_back(subset_unrank(v, polytope.n, polytope.k));
            out.push_back(std::move(s));
        }
        return out;
    }
    friend bool operator==(const Subdivision&, const Subdivision&) = default;

private:
    void normalize() {
        const int nv = polytope.vertex_count();
        for (auto& c : cells) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            if (c.empty() || c.front() < 0 || c.back() >= nv)
                throw SubdivisionError("Subdivision: cell with invalid vertex index");
        }
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        if (cells.empty()) throw SubdivisionError("Subdivision: no cells");
    }
};

inline std::vector<Vec> points_of(const PointConfiguration& pc, const Cell& c) {
    std::vector<Vec> pts;
    for (int i : c) pts.push_back(pc.points[i]);
    return pts;
}

/// A point set is interior iff it lies in no facet of the ambient polytope.
inline bool is_interior(const PointConfiguration& pc, const Cell& c) {
    for (const auto& f : pc.facets)
        if (std::includes(f.begin(), f.end(), c.begin(), c.end())) return false;
    return true;
}

/// Facets of a full-dimensional cell, as sorted global point index sets.
inline std::vector<Cell> cell_facets(const PointConfiguration& pc, const Cell& c) {
    const int d = pc.dim();
    std::vector<Cell> out;
    if (static_cast<int>(c.size()) == d + 1) {
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            Cell f;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) f.push_back(c[i]);
            out.push_back(std::move(f));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    for (const auto& local : compute_facets(points_of(pc, c))) {
        Cell f;
        for (int i : local) f.push_back(c[i]);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Interior walls: codimension-one faces shared by two maximal cells, with the indices of those cells.
inline std::map<Cell, std::vector<int>> interior_walls(const Subdivision& s, const PointConfiguration& pc) {
    std::map<Cell, std::vector<int>> walls;
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        for (auto& f : cell_facets(pc, s.cells[i]))
            if (is_interior(pc, f)) walls[f].push_back(static_cast<int>(i));
    return walls;
}

namespace detail {

/// Is there an affine functional that is 0 on the common points, < 0 on the rest of a and > 0 on the rest of b?
inline bool properly_separated(const PointConfiguration& pc, const Cell& a, const Cell& b) {
    const std::size_t d = static_cast<std::size_t>(pc.dim()), nv = d + 1;
    Cell common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    Matrix a_le, a_eq;
    Vec b_le;
    auto row_of = [&](int p, const Rational& sign) {
        Vec r = sign * pc.points[p];
        r.push_back(sign);
        return r;
    };
    for (int p : a)
        if (!std::binary_search(common.begin(), common.end(), p)) {
            a_le.push_back(row_of(p, 1));
            b_le.push_back(-1);
        }
    for (int p : b)
        if (!std::binary_search(common.begin(), common.end(), p)) {
            a_le.push_back(row_of(p, -1));
            b_le.push_back(-1);
        }
    for (int p : common) a_eq.push_back(row_of(p, 1));
    return maximize(Vec(nv), a_le, b_le, a_eq, Vec(a_eq.size())).status != LpStatus::infeasible;
}

}  // namespace detail

/**
 * Checks that the cells form a subdivision: each cell is full-dimensional, any
 * two cells meet in a common face, and every interior facet of a cell is
 * shared with exactly one other cell (so the cells cover the polytope).
 */
inline void validate_subdivision(const Subdivision& s) {
    const PointConfiguration pc = s.polytope.geometry();
    for (const auto& c : s.cells)
        if (affine_dimension(points_of(pc, c)) != pc.dim())
            throw SubdivisionError("Subdivision: a cell is not full-dimensional");
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        for (std::size_t j = i + 1; j < s.cells.size(); ++j)
            if (!detail::properly_separated(pc, s.cells[i], s.cells[j]))
                throw SubdivisionError("Subdivision: two cells do not meet in a common face");
    for (auto& [wall, owners] : interior_walls(s, pc))
        if (owners.size() != 2) throw SubdivisionError("Subdivision: interior facet not shared by exactly two cells");
}

/// The subdivision induced by lower faces of the lifted points (p_i, heights_i).
inline Subdivision regular_subdivision(const Polytope& p, const Vec& heights) {
    if (static_cast<int>(heights.size()) != p.vertex_count())
        throw std::invalid_argument("regular_subdivision: need one height per vertex");
    PointConfiguration pc = p.geometry();
    return Subdivision(p, lower_hull(pc.points, heights).cells);
}

/// The affine functional (a, c) with a.p + c = h(p) on the cell.
inline Vec cell_dual(const PointConfiguration& pc, const Cell& c, const Vec& heights) {
    const std::size_t d = static_cast<std::size_t>(pc.dim());
    Matrix a;
    Vec b;
    for (int i : c) {
        Vec row = pc.points[i];
        row.push_back(1);
        a.push_back(std::move(row));
        b.push_back(heights[i]);
    }
    auto y = solve(a, b, d + 1);
    if (!y) throw SubdivisionError("cell_dual: heights are not affine on the cell");
    return *y;
}

/// Every cell of a is contained in some cell of b.
inline bool refines(const Subdivision& a, const Subdivision& b) {
    if (!(a.polytope == b.polytope)) throw std::invalid_argument("refines: different polytopes");
    for (const auto& c : a.cells) {
        bool inside = std::any_of(b.cells.begin(), b.cells.end(), [&](const Cell& big) {
            return std::includes(big.begin(), big.end(), c.begin(), c.end());
        });
        if (!inside) return false;
    }
    return true;
}

/**
 * Closed cone of height functions inducing a coarsening of the subdivision:
 * heights affine on every maximal cell, and convex across every interior wall.
 */
struct SecondaryCone {
    PolyhedralCone cone;
    int lineality_dim = 0;  ///< affine functions: polytope dimension + 1
    int dim = 0;
};

inline SecondaryCone secondary_cone(const Subdivision& s) {
    const PointConfiguration pc = s.polytope.geometry();
    const std::size_t npts = pc.size();
    const int d = pc.dim();
    std::vector<bool> used(npts, false);
    for (const auto& c : s.cells)
        for (int v : c) used[v] = true;
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw SubdivisionError("secondary_cone: some point is used by no cell");

    auto affine_basis = [&](const Cell& c) {
        Cell basis;
        Matrix dirs;
        for (int v : c) {
            if (basis.empty()) {
                basis.push_back(v);
                continue;
            }
            Matrix trial = dirs;
            trial.push_back(pc.points[v] - pc.points[basis[0]]);
            if (rank(trial) > static_cast<int>(dirs.size())) {
                dirs = std::move(trial);
                basis.push_back(v);
            }
        }
        return basis;
    };
    // Row e_q - sum lambda_b e_b where q = sum lambda_b b is the affine expansion over the basis.
    auto expansion_row = [&](const Cell& basis, int q) {
        Matrix a;
        for (std::size_t r = 0; r <= static_cast<std::size_t>(d); ++r) {
            Vec row;
            for (int b : basis) row.push_back(r < static_cast<std::size_t>(d) ? pc.points[b][r] : Rational(1));
            a.push_back(std::move(row));
        }
        Vec rhs = pc.points[q];
        rhs.push_back(1);
        auto lambda = solve(a, rhs, basis.size());
        if (!lambda) throw std::logic_error("secondary_cone: point outside the affine span of a cell");
        Vec row(npts);
        row[q] += 1;
        for (std::size_t i = 0; i < basis.size(); ++i) row[basis[i]] -= (*lambda)[i];
        return row;
    };

    SecondaryCone out;
    out.cone.ambient_dim = npts;
    out.lineality_dim = d + 1;
    std::vector<Cell> bases;
    for (const auto& c : s.cells) {
        Cell basis = affine_basis(c);
        for (int v : c)
            if (!std::binary_search(basis.begin(), basis.end(), v)) out.cone.equalities.push_back(expansion_row(basis, v));
        bases.push_back(std::move(basis));
    }
    for (auto& [wall, owners] : interior_walls(s, pc)) {
        if (owners.size() != 2) throw SubdivisionError("secondary_cone: input is not a subdivision");
        const Cell& other = s.cells[owners[1]];
        for (int q : other)
            if (!std::binary_search(wall.begin(), wall.end(), q)) {
                out.cone.inequalities.push_back(expansion_row(bases[owners[0]], q));
                break;
            }
    }
    out.dim = cone_dim(out.cone);
    return out;
}

/// Heights inducing exactly this subdivision, if it is regular.
inline std::optional<Vec> regular_witness(const Subdivision& s) {
    SecondaryCone sc = secondary_cone(s);
    std::vector<AffineForm> eq, strict;
    for (const auto& e : sc.cone.equalities) eq.push_back({e, Rational(0)});
    for (const auto& g : sc.cone.inequalities) strict.push_back({g, Rational(0)});
    return relatively_open_feasible(sc.cone.ambient_dim, eq, strict);
}

inline bool is_regular(const Subdivision& s) { return regular_witness(s).has_value(); }

/// A regular, non-trivial subdivision whose secondary cone is a ray modulo lineality.
inline bool is_coarsest(const Subdivision& s) {
    if (s.is_trivial()) return false;
    SecondaryCone sc = secondary_cone(s);
    if (sc.dim != sc.lineality_dim + 1) return false;
    return is_regular(s);
}

/**
 * The subdivision restricted to conv(vertices): cells S intersected with that
 * polytope. New vertices may appear. The result lives on an explicit point set
 * whose first points are the given vertices (in order), followed by new points
 * in sorted order.
 */
inline Subdivision restrict_to_subpolytope(const Subdivision& s, const std::vector<int>& vertices) {
    const PointConfiguration pc = s.polytope.geometry();
    const std::size_t d = static_cast<std::size_t>(pc.dim());
    auto homogenized = [&](const Cell& c) {
        Matrix g;
        for (int v : c) {
            Vec p = pc.points[v];
            p.push_back(1);
            g.push_back(std::move(p));
        }
        return g;
    };
    Cell sub(vertices.begin(), vertices.end());
    std::sort(sub.begin(), sub.end());
    const PolyhedralCone target = cone_from_generators(d + 1, homogenized(sub), {});
    const int target_dim = affine_dimension(points_of(pc, sub));

    std::vector<std::vector<Vec>> pieces;
    for (const auto& c : s.cells) {
        PolyhedralCone cell = cone_from_generators(d + 1, homogenized(c), {});
        PolyhedralCone both{d + 1, target.equalities, target.inequalities};
        both.equalities.insert(both.equalities.end(), cell.equalities.begin(), cell.equalities.end());
        both.inequalities.insert(both.inequalities.end(), cell.inequalities.begin(), cell.inequalities.end());
        RaySet rs = extreme_rays(both);
        std::vector<Vec> pts;
        for (const auto& r : rs.rays) {
            if (r[d].sign() <= 0) continue;
            Vec p(r.begin(), r.end() - 1);
            pts.push_back(Rational(1) / r[d] * p);
        }
        if (!pts.empty() && affine_dimension(pts) == target_dim) pieces.push_back(std::move(pts));
    }

    std::vector<Vec> all;
    std::map<Vec, int> index;
    for (int v : vertices) {
        index.emplace(pc.points[v], static_cast<int>(all.size()));
        all.push_back(pc.points[v]);
    }
    std::set<Vec> fresh;
    for (const auto& piece : pieces)
        for (const auto& p : piece)
            if (!index.count(p)) fresh.insert(p);
    for (const auto& p : fresh) {
        index.emplace(p, static_cast<int>(all.size()));
        all.push_back(p);
    }
    std::vector<Cell> cells;
    for (const auto& piece : pieces) {
        Cell c;
        for (const auto& p : piece) c.push_back(index.at(p));
        cells.push_back(std::move(c));
    }
    return Subdivision(Polytope::points(std::move(all)), std::move(cells));
}

/**
 * Vertex figure of a matroid subdivision of Delta(k,n) at e_sigma, pulled back
 * to Delta_{k-1} x Delta_{n-k-1}: product vertex (i, j) corresponds to the
 * neighbor sigma - p(i) + p(k+j), where p is the order-preserving relabeling
 * sending [k] to sigma.
 */
inline Subdivision vertex_figure(const Subdivision& s, KSubset sigma) {
    if (s.polytope.kind != Polytope::Kind::hypersimplex)
        throw std::invalid_argument("vertex_figure: needs a hypersimplex subdivision");
    const int k = s.polytope.k, n = s.polytope.n;
    if (sigma.size() != k) throw std::invalid_argument("vertex_figure: sigma must have k elements");
    Polytope prod = Polytope::product(k, n);
    Permutation p = vertex_relabeling(sigma, n);
    std::map<std::int64_t, int> neighbor_to_product;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= n - k; ++j)
            neighbor_to_product[subset_rank(sigma.without(p(i)).with(p(k + j)), n)] = prod.product_index(i, j);
    const std::int64_t center = subset_rank(sigma, n);
    std::vector<Cell> cells;
    for (const auto& c : s.cells) {
        if (!std::binary_search(c.begin(), c.end(), static_cast<int>(center))) continue;
        std::vector<KSubset> bases;
        for (int v : c) bases.push_back(subset_unrank(v, n, k));
        if (!is_matroid(bases)) throw SubdivisionError("vertex_figure: subdivision is not matroidal");
        Cell f;
        for (int v : c) {
            auto it = neighbor_to_product.find(v);
            if (it != neighbor_to_product.end()) f.push_back(it->second);
        }
        cells.push_back(std::move(f));
    }
    if (cells.empty()) throw SubdivisionError("vertex_figure: no cell contains the vertex");
    return Subdivision(std::move(prod), std::move(cells));
}

/**
 * The matroid subdivision of Delta(k,n) whose maximal cells all contain
 * e_[k] and whose vertex figure there is the given subdivision of the
 * product: each cell is the principal transversal matroid of the bipartite
 * graph of a cell of the product subdivision.
 */
inline Subdivision cone_construction(const Subdivision& g) {
    if (g.polytope.kind != Polytope::Kind::product) throw std::invalid_argument("cone_construction: needs a product subdivision");
    const int k = g.polytope.k, n = g.polytope.n;
    std::vector<Cell> cells;
    for (const auto& c : g.cells) {
        std::vector<std::pair<int, int>> edges;
        for (int v : c) {
            auto [i, j] = g.polytope.product_pair(v);
            edges.emplace_back(i, k + j);
        }
        Matroid m = principal_transversal_matroid(k, n, edges);
        Cell cell;
        for (auto b : m.bases()) cell.push_back(static_cast<int>(subset_rank(b, n)));
        cells.push_back(std::move(cell));
    }
    return Subdivision(Polytope::hypersimplex(k, n), std::move(cells));
}

}  // namespace dressian
