/**
 * The point configurations subdivided in this library: hypersimplices
 * Delta(k,n), products of simplices Delta_{k-1} x Delta_{n-k-1}, and explicit
 * point sets. Each is given by full-dimensional coordinates plus the vertex
 * sets of its facets.
 */
#pragma once

#include "dressian/cone.hpp"
#include "dressian/combinat.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dressian {

struct PointConfiguration {
    std::vector<Vec> points;                  ///< affinely spanning coordinates
    std::vector<std::vector<int>> facets;     ///< sorted point indices on each facet (proper faces suffice)

    int dim() const { return points.empty() ? -1 : static_cast<int>(points[0].size()); }
    std::size_t size() const { return points.size(); }
};

/// Coordinates of points in their own affine hull (relative to an affine basis chosen greedily).
inline std::vector<Vec> affine_hull_coordinates(const std::vector<Vec>& pts) {
    if (pts.empty()) return {};
    Matrix basis;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Matrix trial = basis;
        trial.push_back(pts[i] - pts[0]);
        if (rank(trial) > static_cast<int>(basis.size())) basis.push_back(pts[i] - pts[0]);
    }
    const std::size_t d = pts[0].size();
    std::vector<Vec> out;
    Matrix bt = transpose(basis, d);
    for (const auto& p : pts) {
        auto c = solve(bt, p - pts[0], basis.size());
        if (!c) throw std::logic_error("affine_hull_coordinates: point outside affine hull");
        out.push_back(*c);
    }
    return out;
}

/// Facets of conv(points) for full-dimensional points, by double description on the homogenized cone.
inline std::vector<std::vector<int>> compute_facets(const std::vector<Vec>& pts) {
    const std::size_t d = pts[0].size();
    Matrix gens;
    for (const auto& p : pts) {
        Vec g = p;
        g.push_back(1);
        gens.push_back(std::move(g));
    }
    PolyhedralCone c = cone_from_generators(d + 1, gens, {});
    std::set<std::vector<int>> facets;
    for (const auto& ineq : c.inequalities) {
        std::vector<int> on;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (dot(ineq, gens[i]).is_zero()) on.push_back(static_cast<int>(i));
        facets.insert(on);
    }
    return {facets.begin(), facets.end()};
}

inline PointConfiguration generic_configuration(std::vector<Vec> pts) {
    if (pts.empty()) throw std::invalid_argument("generic_configuration: no points");
    if (affine_dimension(pts) != static_cast<int>(pts[0].size())) pts = affine_hull_coordinates(pts);
    PointConfiguration pc;
    pc.points = std::move(pts);
    pc.facets = pc.dim() > 0 ? compute_facets(pc.points) : std::vector<std::vector<int>>{};
    return pc;
}

/// Which polytope a subdivision lives on.
struct Polytope {
    enum class Kind { hypersimplex, product, points };
    Kind kind = Kind::hypersimplex;
    int k = 0;
    int n = 0;
    std::vector<Vec> custom;  ///< coordinates for Kind::points

    static Polytope hypersimplex(int k, int n) {
        HypersimplexSpec spec(k, n);
        return {Kind::hypersimplex, k, n, {}};
    }
    /// Delta_{k-1} x Delta_{n-k-1}, the vertex figure of Delta(k,n).
    static Polytope product(int k, int n) {
        HypersimplexSpec spec(k, n);
        return {Kind::product, k, n, {}};
    }
    static Polytope points(std::vector<Vec> pts) { return {Kind::points, 0, 0, std::move(pts)}; }

    int vertex_count() const {
        switch (kind) {
            case Kind::hypersimplex: return static_cast<int>(binomial(n, k));
            case Kind::product: return k * (n - k);
            case Kind::points: return static_cast<int>(custom.size());
        }
        return 0;
    }
    /// Product vertex (i, j), 1 <= i <= k, 1 <= j <= n - k.
    int product_index(int i, int j) const { return (i - 1) * (n - k) + (j - 1); }
    std::pair<int, int> product_pair(int idx) const { return {idx / (n - k) + 1, idx % (n - k) + 1}; }

    std::string vertex_label(int v) const {
        switch (kind) {
            case Kind::hypersimplex: return subset_unrank(v, n, k).label();
            case Kind::product: {
                auto [i, j] = product_pair(v);
                return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
            case Kind::points: return std::to_string(v);
        }
        return {};
    }

    PointConfiguration geometry() const {
        PointConfiguration pc;
        switch (kind) {
            case Kind::hypersimplex: {
                auto subs = enumerate_ksubsets(n, k);
                for (auto s : subs) {
                    Vec p(n - 1);
                    for (int e : s.elements())
                        if (e < n) p[e - 1] = 1;
                    pc.points.push_back(std::move(p));
                }
                for (int i = 1; i <= n; ++i)
                    for (bool in : {false, true}) {
                        std::vector<int> f;
                        for (std::size_t s = 0; s < subs.size(); ++s)
                            if (subs[s].contains(i) == in) f.push_back(static_cast<int>(s));
                        if (!f.empty() && f.size() < subs.size()) pc.facets.push_back(std::move(f));
                    }
                break;
            }
            case Kind::product: {
                const int m = n - k;
                for (int i = 1; i <= k; ++i)
                    for (int j = 1; j <= m; ++j) {
                        Vec p((k - 1) + (m - 1));
                        if (i > 1) p[i - 2] = 1;
                        if (j > 1) p[(k - 1) + j - 2] = 1;
                        pc.points.push_back(std::move(p));
                    }
                for (int i = 1; i <= k && k > 1; ++i) {
                    std::vector<int> f;
                    for (int v = 0; v < k * m; ++v)
                        if (product_pair(v).first != i) f.push_back(v);
                    pc.facets.push_back(std::move(f));
                }
                for (int j = 1; j <= m && m > 1; ++j) {
                    std::vector<int> f;
                    for (int v = 0; v < k * m; ++v)
                        if (product_pair(v).second != j) f.push_back(v);
                    pc.facets.push_back(std::move(f));
                }
                break;
            }
            case Kind::points: return generic_configuration(custom);
        }
        return pc;
    }
    friend bool operator==(const Polytope&, const Polytope&) = default;
};

}  // namespace dressian
