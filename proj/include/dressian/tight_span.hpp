/**
 * Tight spans: the interior cells of a subdivision ordered by reverse
 * inclusion, with an optional geometric realization for regular inputs, plus
 * the 2-cell shape classification and the edge-collapse closure.
 */
#pragma once

#include "dressian/subdivision.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dressian {

struct TightSpan {
    struct Element {
        Cell points;             ///< the interior cell of the subdivision
        int cell_dim = 0;
        std::vector<int> cells;  ///< maximal cells containing it (its tight-span vertices)
    };

    int polytope_dim = 0;
    std::size_t vertex_count = 0;   ///< elements [0, vertex_count) are the maximal cells, in subdivision order
    std::vector<Element> elements;  ///< then by dimension, then by vertex set
    std::vector<Vec> realization;   ///< per maximal cell: the slope part of its dual functional (empty if none)

    /// Dimension of an element as a cell of the tight span.
    int dim_of(std::size_t e) const { return polytope_dim - elements[e].cell_dim; }
    /// Rank in the poset: one more than the tight-span dimension.
    int rank_of(std::size_t e) const { return dim_of(e) + 1; }
    int dim() const {
        int d = 0;
        for (std::size_t e = 0; e < elements.size(); ++e) d = std::max(d, dim_of(e));
        return d;
    }
    std::vector<int> elements_of_dim(int d) const {
        std::vector<int> out;
        for (std::size_t e = 0; e < elements.size(); ++e)
            if (dim_of(e) == d) out.push_back(static_cast<int>(e));
        return out;
    }
    std::vector<int> edges() const { return elements_of_dim(1); }
    std::vector<int> two_cells() const { return elements_of_dim(2); }
    /// f-vector of the tight span as a cell complex.
    std::vector<int> f_vector() const {
        std::vector<int> f(dim() + 1, 0);
        for (std::size_t e = 0; e < elements.size(); ++e) ++f[dim_of(e)];
        return f;
    }
    /// Does element a lie below element b (b is a face of a as cells, i.e. a's vertices include b's)?
    bool leq(std::size_t a, std::size_t b) const {
        const auto& ca = elements[a].cells;
        const auto& cb = elements[b].cells;
        return std::includes(cb.begin(), cb.end(), ca.begin(), ca.end());
    }
};

/**
 * Interior faces of the subdivision. Every interior face is the intersection
 * of the maximal cells containing it, so closing the maximal cells under
 * intersection and keeping the interior sets finds all of them.
 */
inline TightSpan tight_span(const Subdivision& s) {
    const PointConfiguration pc = s.polytope.geometry();
    TightSpan ts;
    ts.polytope_dim = pc.dim();
    ts.vertex_count = s.cells.size();

    std::set<Cell> seen(s.cells.begin(), s.cells.end());
    std::vector<Cell> frontier(s.cells.begin(), s.cells.end());
    while (!frontier.empty()) {
        std::vector<Cell> next;
        for (const auto& f : frontier)
            for (const auto& m : s.cells) {
                Cell x;
                std::set_intersection(f.begin(), f.end(), m.begin(), m.end(), std::back_inserter(x));
                if (x.empty() || !is_interior(pc, x)) continue;
                if (seen.insert(x).second) next.push_back(std::move(x));
            }
        frontier = std::move(next);
    }

    for (std::size_t m = 0; m < s.cells.size(); ++m) ts.elements.push_back({s.cells[m], ts.polytope_dim, {static_cast<int>(m)}});
    std::vector<TightSpan::Element> rest;
    for (const auto& x : seen) {
        if (std::binary_search(s.cells.begin(), s.cells.end(), x)) continue;
        TightSpan::Element e;
        e.points = x;
        e.cell_dim = affine_dimension(points_of(pc, x));
        for (std::size_t m = 0; m < s.cells.size(); ++m)
            if (std::includes(s.cells[m].begin(), s.cells[m].end(), x.begin(), x.end())) e.cells.push_back(static_cast<int>(m));
        rest.push_back(std::move(e));
    }
    std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
        if (a.cell_dim != b.cell_dim) return a.cell_dim > b.cell_dim;
        return a.points < b.points;
    });
    ts.elements.insert(ts.elements.end(), rest.begin(), rest.end());
    return ts;
}

/// Tight span with dual vertices: the slope a of the functional a.x + c certifying each maximal cell.
inline TightSpan tight_span(const Subdivision& s, const Vec& heights) {
    TightSpan ts = tight_span(s);
    const PointConfiguration pc = s.polytope.geometry();
    for (const auto& c : s.cells) {
        Vec y = cell_dual(pc, c, heights);
        y.pop_back();
        ts.realization.push_back(std::move(y));
    }
    return ts;
}

/**
 * Isomorphism of tight spans as graded posets. Each element is determined by
 * its set of tight-span vertices, so this searches for a bijection of
 * vertices mapping the family of (dimension, vertex set) pairs onto itself.
 */
inline bool tight_span_isomorphic(const TightSpan& a, const TightSpan& b) {
    if (a.vertex_count != b.vertex_count || a.elements.size() != b.elements.size()) return false;
    if (a.f_vector() != b.f_vector()) return false;
    const std::size_t m = a.vertex_count;
    const int top = a.dim() + 1;

    auto pair_profile = [&](const TightSpan& t) {
        std::vector<std::vector<std::vector<int>>> prof(m, std::vector<std::vector<int>>(m, std::vector<int>(top, 0)));
        for (std::size_t e = 0; e < t.elements.size(); ++e) {
            const auto& c = t.elements[e].cells;
            for (int u : c)
                for (int v : c) ++prof[u][v][t.dim_of(e)];
        }
        return prof;
    };
    auto pa = pair_profile(a), pb = pair_profile(b);
    auto family = [&](const TightSpan& t) {
        std::set<std::pair<int, std::vector<int>>> f;
        for (std::size_t e = 0; e < t.elements.size(); ++e) f.insert({t.dim_of(e), t.elements[e].cells});
        return f;
    };
    const auto fb = family(b);

    std::vector<int> img(m, -1);
    std::vector<bool> taken(m, false);
    auto rec = [&](auto&& self, std::size_t u) -> bool {
        if (u == m) {
            for (std::size_t e = 0; e < a.elements.size(); ++e) {
                std::vector<int> c;
                for (int v : a.elements[e].cells) c.push_back(img[v]);
                std::sort(c.begin(), c.end());
                if (!fb.count({a.dim_of(e), c})) return false;
            }
            return true;
        }
        for (std::size_t cand = 0; cand < m; ++cand) {
            if (taken[cand] || pa[u][u] != pb[cand][cand]) continue;
            bool ok = true;
            for (std::size_t v = 0; v < u && ok; ++v) ok = pa[u][v] == pb[cand][img[v]];
            if (!ok) continue;
            img[u] = static_cast<int>(cand);
            taken[cand] = true;
            if (self(self, u + 1)) return true;
            taken[cand] = false;
            img[u] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

enum class TwoCellShape { triangle, parallelogram, trapezoid, pentagon, hexagon };

inline std::string to_string(TwoCellShape s) {
    switch (s) {
        case TwoCellShape::triangle: return "triangle";
        case TwoCellShape::parallelogram: return "parallelogram";
        case TwoCellShape::trapezoid: return "trapezoid";
        case TwoCellShape::pentagon: return "pentagon";
        case TwoCellShape::hexagon: return "hexagon";
    }
    return {};
}

/// Boundary of a 2-cell: its tight-span vertices in cyclic order and the edge joining vertex i to vertex i+1.
struct Polygon {
    std::vector<int> vertices;
    std::vector<int> edges;
};

inline Polygon polygon_of(const TightSpan& ts, int two_cell) {
    if (ts.dim_of(two_cell) != 2) throw std::invalid_argument("polygon_of: not a 2-cell");
    std::vector<int> boundary;
    for (int e : ts.edges())
        if (ts.leq(e, two_cell)) boundary.push_back(e);
    std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge)
    for (int e : boundary) {
        const auto& c = ts.elements[e].cells;
        if (c.size() != 2) throw std::logic_error("polygon_of: edge without two endpoints");
        adj[c[0]].emplace_back(c[1], e);
        adj[c[1]].emplace_back(c[0], e);
    }
    Polygon p;
    if (adj.empty()) throw std::logic_error("polygon_of: empty boundary");
    int start = adj.begin()->first, prev = -1, cur = start;
    do {
        const auto& nb = adj.at(cur);
        if (nb.size() != 2) throw std::logic_error("polygon_of: boundary is not a cycle");
        auto step = (prev == -1 || nb[0].first != prev) ? nb[0] : nb[1];
        p.vertices.push_back(cur);
        p.edges.push_back(step.second);
        prev = cur;
        cur = step.first;
    } while (cur != start);
    if (p.vertices.size() != adj.size()) throw std::logic_error("polygon_of: boundary is not a single cycle");
    return p;
}

/// Shape of each 2-cell (in the order of TightSpan::two_cells) from the realized edge directions.
inline std::vector<TwoCellShape> classify_2cells(const TightSpan& ts) {
    if (ts.realization.size() != ts.vertex_count) throw std::invalid_argument("classify_2cells: tight span has no realization");
    std::vector<TwoCellShape> out;
    for (int c : ts.two_cells()) {
        Polygon p = polygon_of(ts, c);
        const std::size_t m = p.vertices.size();
        auto dir = [&](std::size_t i) { return ts.realization[p.vertices[(i + 1) % m]] - ts.realization[p.vertices[i]]; };
        auto parallel = [&](std::size_t i, std::size_t j) { return rank(Matrix{dir(i), dir(j)}) == 1; };
        switch (m) {
            case 3: out.push_back(TwoCellShape::triangle); break;
            case 4: {
                int pairs = (parallel(0, 2) ? 1 : 0) + (parallel(1, 3) ? 1 : 0);
                if (pairs == 2) out.push_back(TwoCellShape::parallelogram);
                else if (pairs == 1) out.push_back(TwoCellShape::trapezoid);
                else throw std::domain_error("classify_2cells: quadrilateral without parallel edges");
                break;
            }
            case 5: out.push_back(TwoCellShape::pentagon); break;
            case 6: out.push_back(TwoCellShape::hexagon); break;
            default: throw std::domain_error("classify_2cells: 2-cell with " + std::to_string(m) + " sides");
        }
    }
    return out;
}

/**
 * Smallest set of edges containing the seeds and closed under: a triangle
 * with a collapsed edge collapses entirely; a parallelogram with a collapsed
 * edge collapses the opposite edge. Edges are element indices.
 */
inline std::set<int> collapse_closure(const TightSpan& ts, const std::vector<TwoCellShape>& shapes, const std::set<int>& seeds) {
    const auto cells = ts.two_cells();
    if (shapes.size() != cells.size()) throw std::invalid_argument("collapse_closure: 2-cells are not classified");
    std::vector<Polygon> polys;
    for (int c : cells) polys.push_back(polygon_of(ts, c));
    std::set<int> closed = seeds;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& e = polys[i].edges;
            if (shapes[i] == TwoCellShape::triangle) {
                if (std::any_of(e.begin(), e.end(), [&](int x) { return closed.count(x) > 0; }))
                    for (int x : e) changed |= closed.insert(x).second;
            } else if (shapes[i] == TwoCellShape::parallelogram) {
                for (std::size_t j = 0; j < 4; ++j)
                    if (closed.count(e[j])) changed |= closed.insert(e[(j + 2) % 4]).second;
            }
        }
    }
    return closed;
}

/// Sufficient condition for coarsest: collapsing any single edge forces all edges to collapse.
inline bool collapse_certifies_coarsest(const TightSpan& ts, const std::vector<TwoCellShape>& shapes) {
    const auto edges = ts.edges();
    if (edges.empty()) return false;
    for (int e : edges)
        if (collapse_closure(ts, shapes, {e}).size() != edges.size()) return false;
    return true;
}

}  // namespace dressian
