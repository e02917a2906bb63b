/**
 * Rays of Dressians through their tight spans: shape names, the twelve
 * symmetry classes of rays of Dr(3,8), and the sufficient criterion for
 * membership in the tropical Grassmannian via tau and Phi.
 */
#pragma once

#include "dressian/dressian.hpp"
#include "dressian/tight_span.hpp"
#include "dressian/tropical_polytope.hpp"

#include <sstream>

namespace dressian {

/// Tight span of the matroid subdivision induced by pi.
inline TightSpan ray_tight_span(const PluckerVector& pi) {
    return tight_span(regular_subdivision(Polytope::hypersimplex(pi.k(), pi.n()), pi.values()), pi.values());
}

/**
 * A name for small tight spans: "point", "segment", "path of m edges",
 * "tree with m edges", "triangle", "double-triangle", "three-triangle chain",
 * "three triangles sharing a common edge", "four-triangle complex"; anything
 * else is described by its f-vector.
 */
inline std::string tight_span_shape(const TightSpan& ts) {
    auto f = ts.f_vector();
    std::ostringstream desc;
    desc << "complex with f-vector (";
    for (std::size_t i = 0; i < f.size(); ++i) desc << (i ? "," : "") << f[i];
    desc << ")";
    const int dim = ts.dim();
    if (dim == 0) return "point";
    if (dim == 1) {
        if (f[0] == 2) return "segment";
        std::map<int, int> degree;
        for (int e : ts.edges())
            for (int c : ts.elements[e].cells) ++degree[c];
        int max_deg = 0;
        for (auto& [c, d] : degree) max_deg = std::max(max_deg, d);
        if (f[1] + 1 != f[0]) return desc.str();
        return (max_deg <= 2 ? "path of " : "tree with ") + std::to_string(f[1]) + " edges";
    }
    if (dim != 2) return desc.str();
    for (auto s : classify_2cells(ts))
        if (s != TwoCellShape::triangle) return desc.str();
    // Edges shared by several triangles.
    std::map<int, int> edge_use;
    for (int t : ts.two_cells())
        for (int e : ts.edges())
            if (ts.leq(e, t)) ++edge_use[e];
    int max_use = 0;
    for (auto& [e, u] : edge_use) max_use = std::max(max_use, u);
    const int triangles = f[2];
    // Only complexes whose vertices and edges all lie in triangles get a name.
    if (f[0] != triangles + 2 || f[1] != 2 * triangles + 1) {
        if (!(triangles == 4 && f[0] == 6 && f[1] == 9)) return desc.str();
    }
    switch (triangles) {
        case 1: return "triangle";
        case 2: return "double-triangle";
        case 3: return max_use == 3 ? "three triangles sharing a common edge" : "three-triangle chain";
        case 4: return "four-triangle complex";
    }
    return desc.str();
}

struct RayCatalogEntry {
    std::string name;
    PluckerVector witness;
    std::string shape;            ///< declared tight-span shape
    std::int64_t orbit_size = 0;  ///< declared Sym(n) orbit size
};

/// The 0/1 vector on Delta(3,8) vanishing exactly on 30 triples.
inline PluckerVector zero_one_ray_38() {
    static const char* zeros[] = {"123", "124", "126", "127", "128", "134", "136", "137", "138", "234",
                                  "235", "236", "237", "238", "245", "247", "248", "256", "257", "258",
                                  "267", "268", "345", "347", "348", "356", "357", "358", "367", "368"};
    PluckerVector pi(3, 8);
    for (auto& x : pi.values()) x = 1;
    for (const char* z : zeros) {
        std::uint32_t b = 0;
        for (const char* c = z; *c; ++c) b |= 1u << (*c - '1');
        pi.at(KSubset(b)) = 0;
    }
    return pi;
}

/**
 * Witnesses of the twelve Sym(8)-classes of rays of Dr(3,8): tau of the
 * eleven rigid 3x5 configurations, and the 0/1 vector.
 */
inline std::vector<RayCatalogEntry> dr38_ray_catalog() {
    // Shapes and orbit sizes, in the order of rigid_catalog_3x5().
    static const std::pair<const char*, std::int64_t> declared[] = {
        {"three-triangle chain", 5040},
        {"double-triangle", 1680},
        {"four-triangle complex", 5040},
        {"double-triangle", 840},
        {"double-triangle", 1260},
        {"segment", 28},
        {"triangle", 420},
        {"triangle", 560},
        {"segment", 56},
        {"segment", 56},
        {"segment", 70},
    };
    std::vector<RayCatalogEntry> out;
    auto cat = rigid_catalog_3x5();
    for (std::size_t i = 0; i < cat.size(); ++i) {
        PointConfig cfg(3, 8, cat[i].v);
        out.push_back({"tau of rigid configuration " + std::to_string(i + 1), tau(cfg), declared[i].first, declared[i].second});
    }
    out.push_back({"0/1 vector", zero_one_ray_38(), "three triangles sharing a common edge", 420});
    return out;
}

struct RayCheckReport {
    std::string name;
    bool plucker = false;
    bool coarsest = false;
    bool dressian_ray = false;  ///< its cone in the Plücker structure is a ray
    std::string shape;
    bool shape_ok = false;
    std::int64_t orbit_size = 0;
    bool orbit_ok = false;
    bool ok() const { return plucker && coarsest && dressian_ray && shape_ok && orbit_ok; }
};

/// Cone of the Plücker fan structure containing pi in its relative interior.
inline PolyhedralCone dressian_cone_of(const PluckerVector& pi) {
    ConeFromSequenceOptions opt;
    opt.zero_means_unsplit = true;
    return cone_from_sequence(splits_of_vector(pi), opt);
}

inline RayCheckReport check_ray(const RayCatalogEntry& e) {
    RayCheckReport r;
    r.name = e.name;
    r.plucker = check_plucker(e.witness).empty();
    if (!r.plucker) return r;
    Subdivision s = regular_subdivision(Polytope::hypersimplex(e.witness.k(), e.witness.n()), e.witness.values());
    r.coarsest = is_coarsest(s);
    r.dressian_ray = cone_dim(dressian_cone_of(e.witness)) == e.witness.n() + 1;
    r.shape = tight_span_shape(tight_span(s, e.witness.values()));
    r.shape_ok = r.shape == e.shape;
    r.orbit_size = lex_min_orbit_rep(splits_of_vector(e.witness)).orbit_size;
    r.orbit_ok = r.orbit_size == e.orbit_size;
    return r;
}

inline std::vector<RayCheckReport> ray_catalog_check(const std::vector<RayCatalogEntry>& catalog) {
    std::vector<RayCheckReport> out;
    for (const auto& e : catalog) out.push_back(check_ray(e));
    return out;
}

enum class GrassmannianVerdict { certified, inconclusive };

inline std::string to_string(GrassmannianVerdict v) {
    return v == GrassmannianVerdict::certified ? "certified" : "inconclusive";
}

struct GrassmannianResult {
    GrassmannianVerdict verdict = GrassmannianVerdict::inconclusive;
    std::optional<KSubset> sigma;  ///< vertex at which pi is recovered
};

/**
 * Certified when pi' = tau^sigma(Phi^sigma(pi')) for pi' = pi - pi(sigma) and
 * some k-subset sigma, so that pi comes from a point configuration and lies in the tropical
 * Grassmannian. Inconclusive otherwise; this is not a proof of non-membership.
 */
inline GrassmannianResult grassmannian_tau_criterion(const PluckerVector& pi) {
    if (!check_plucker(pi).empty()) throw PluckerViolation(enumerate_octahedra(pi.k(), pi.n())[check_plucker(pi)[0]],
                                                          "grassmannian_tau_criterion: not a tropical Plücker vector");
    for (KSubset sigma : enumerate_ksubsets(pi.n(), pi.k())) {
        PluckerVector shifted = pi;
        for (auto& x : shifted.values()) x -= pi.at(sigma);
        if (tau_at_vertex(phi_at_vertex(shifted, sigma), sigma) == shifted) return {GrassmannianVerdict::certified, sigma};
    }
    return {};
}

/// Minus the leaf distances of the snowflake tree on 6 leaves (cherries 12, 34, 56).
inline PluckerVector snowflake_vector() {
    PluckerVector pi(2, 6);
    for (KSubset s : enumerate_ksubsets(6, 2)) {
        auto e = s.elements();
        bool cherry = (e[0] + 1) / 2 == (e[1] + 1) / 2;
        pi.at(s) = cherry ? -2 : -4;
    }
    return pi;
}

}  // namespace dressian
