/**
 * Regular subdivisions by lower hulls.
 *
 * For points p_1..p_N spanning R^D and heights h, the lower faces of the
 * lifted configuration are the vertices of the dual polyhedron
 *     P = {(a, c) in R^(D+1) : a.p_i + c <= h_i for all i}.
 * A vertex y of P is tight on exactly the points of one maximal cell, and
 * coplanar lifted points are merged automatically. Vertices are found by
 * walking the edge graph of P from one vertex, with the edge directions at a
 * vertex obtained as the extreme rays of its tangent cone.
 */
#pragma once

#include "dressian/cone.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <vector>

namespace dressian {

struct LowerHull {
    std::vector<std::vector<int>> cells;  ///< sorted point indices; cells sorted
    std::vector<Vec> duals;               ///< (a, c) certifying each cell
};

namespace detail {

inline std::vector<int> tight_rows(const Matrix& a, const Vec& h, const Vec& y) {
    std::vector<int> t;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (dot(a[i], y) == h[i]) t.push_back(static_cast<int>(i));
    return t;
}

}  // namespace detail

inline LowerHull lower_hull(const std::vector<Vec>& points, const Vec& heights) {
    if (points.empty()) throw std::invalid_argument("lower_hull: no points");
    if (points.size() != heights.size()) throw std::invalid_argument("lower_hull: heights size mismatch");
    const std::size_t dim = points[0].size();
    for (const auto& p : points)
        if (p.size() != dim) throw std::invalid_argument("lower_hull: points of mixed dimension");
    if (points.size() < dim + 1 || affine_dimension(points) != static_cast<int>(dim))
        throw std::invalid_argument("lower_hull: points do not affinely span their ambient space");

    const std::size_t nv = dim + 1;
    Matrix a;
    for (const auto& p : points) {
        Vec row = p;
        row.push_back(1);
        a.push_back(std::move(row));
    }

    // Initial vertex: start from a feasible point and move inside null(A_T) until T has full rank.
    Vec y(nv);
    Rational hmin = heights[0];
    for (const auto& h : heights) hmin = std::min(hmin, h);
    y[dim] = hmin;
    while (true) {
        auto t = detail::tight_rows(a, heights, y);
        Matrix at;
        for (int i : t) at.push_back(a[i]);
        Matrix null = nullspace(at, nv);
        if (null.empty()) break;
        Vec dir = null[0];
        // Pick the sign that makes some constraint approach tightness.
        bool any_pos = false;
        for (const auto& row : a)
            if (dot(row, dir).sign() > 0) any_pos = true;
        if (!any_pos) dir = Rational(-1) * dir;
        Rational step;
        bool have = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            Rational ad = dot(a[i], dir);
            if (ad.sign() <= 0) continue;
            Rational s = (heights[i] - dot(a[i], y)) / ad;
            if (!have || s < step) {
                step = s;
                have = true;
            }
        }
        if (!have) throw std::logic_error("lower_hull: dual polyhedron contains a line");
        y = y + step * dir;
    }

    LowerHull out;
    std::map<std::vector<int>, Vec> found;
    std::deque<Vec> queue{y};
    found.emplace(detail::tight_rows(a, heights, y), y);
    while (!queue.empty()) {
        Vec v = std::move(queue.front());
        queue.pop_front();
        auto t = detail::tight_rows(a, heights, v);
        PolyhedralCone tangent;
        tangent.ambient_dim = nv;
        for (int i : t) tangent.inequalities.push_back(Rational(-1) * a[i]);
        RaySet rs = extreme_rays(tangent);
        for (const auto& dir : rs.rays) {
            Rational step;
            bool have = false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                Rational ad = dot(a[i], dir);
                if (ad.sign() <= 0) continue;
                Rational s = (heights[i] - dot(a[i], v)) / ad;
                if (!have || s < step) {
                    step = s;
                    have = true;
                }
            }
            if (!have) continue;  // unbounded edge
            Vec w = v + step * dir;
            auto tw = detail::tight_rows(a, heights, w);
            if (found.emplace(tw, w).second) queue.push_back(std::move(w));
        }
    }
    for (auto& [cell, dual] : found) {
        out.cells.push_back(cell);
        out.duals.push_back(dual);
    }
    return out;
}

}  // namespace dressian
