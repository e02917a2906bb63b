/**
 * Maximal cones of the Dressian Dr(k,n) in the fan structure given by the
 * 3-term Plücker relations: backtracking over octahedral splits with optional
 * pruning against Dr(k,n-1), then rays, faces and f-vectors.
 */
#pragma once

#include "dressian/split_sequence.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

namespace dressian {

class EnumerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A maximal cone with an exact point of its relative interior.
struct DressianCone {
    SplitSequence seq;
    PluckerVector witness;
    int dim = 0;  ///< dimension modulo the lineality space

    PolyhedralCone cone() const { return cone_from_sequence(seq); }
    friend bool operator==(const DressianCone&, const DressianCone&) = default;
};

/// All maximal cone sequences of Dr(k,n), used to prune the search for Dr(k,n+1).
struct BoundaryCache {
    int k = 0;
    int n = 0;
    std::vector<SplitSequence> sequences;
};

struct EnumerationStats {
    std::uint64_t nodes = 0;
    std::uint64_t lp_calls = 0;
    std::uint64_t boundary_prunes = 0;
    std::uint64_t infeasible_prunes = 0;
    std::uint64_t dimension_prunes = 0;
};

/// Completed prefix tasks of an interrupted run.
struct EnumerationCheckpoint {
    int k = 0;
    int n = 0;
    bool prune = false;
    bool symmetry_fix = false;
    int parallel_prefix_depth = 0;
    std::size_t task_count = 0;
    std::map<std::size_t, std::vector<DressianCone>> completed;
};

struct EnumerateOptions {
    bool prune = true;          ///< boundary pruning against Dr(k,n-1)
    bool symmetry_fix = false;  ///< fix the split of the first octahedron (one cone per orbit at least)
    int jobs = 1;
    int parallel_prefix_depth = 3;
    /// Backtrack once the partial cone has dimension (modulo lineality) below this bound.
    int min_dim = 0;
    std::uint64_t checkpoint_every = 0;  ///< nodes between checkpoints; 0 disables
    std::function<void(const EnumerationCheckpoint&)> on_checkpoint;
    const EnumerationCheckpoint* resume = nullptr;
};

/// Lineality space of every Dressian cone: pi(S) = sum_{i in S} a_i.
inline Matrix dressian_lineality(int k, int n) {
    auto subs = enumerate_ksubsets(n, k);
    Matrix rows(n, Vec(subs.size()));
    for (std::size_t s = 0; s < subs.size(); ++s)
        for (int e : subs[s].elements()) rows[e - 1][s] = 1;
    return rows;
}

namespace detail {

/// Shared read-only data of one enumeration.
struct SearchContext {
    int k = 0, n = 0;
    std::size_t ambient = 0;
    std::vector<OctahedronId> octs;
    std::vector<std::array<std::pair<int, int>, 3>> opp;  ///< subset indices of each opposite pair
    std::vector<AffineForm> normalization;                ///< pins the lineality
    std::vector<std::array<AffineForm, 4>> eq, strict;    ///< per octahedron and split label
    int lineality_dim = 0;
    const BoundaryCache* cache = nullptr;
    std::vector<FacetMap> deletion_facets;
    EnumerateOptions options;

    SearchContext(int k_, int n_, const BoundaryCache* cache_, EnumerateOptions opt)
        : k(k_), n(n_), cache(cache_), options(std::move(opt)) {
        HypersimplexSpec spec(k, n);
        ambient = static_cast<std::size_t>(binomial(n, k));
        octs = enumerate_octahedra(k, n);
        opp.resize(octs.size());
        eq.resize(octs.size());
        strict.resize(octs.size());
        for (std::size_t o = 0; o < octs.size(); ++o) {
            for (int t = 1; t <= 3; ++t) {
                auto [a, b] = octs[o].opposite_pair(t);
                opp[o][t - 1] = {static_cast<int>(subset_rank(a, n)), static_cast<int>(subset_rank(b, n))};
                int a2 = t % 3 + 1, b2 = (t + 1) % 3 + 1;
                eq[o][t] = {pair_sum_difference(octs[o], a2, b2, n), 0};
                strict[o][t] = {pair_sum_difference(octs[o], t, a2, n), 0};
            }
        }
        Matrix lin = dressian_lineality(k, n);
        lineality_dim = rank(lin);
        // Pin pi to zero on subsets whose coordinate functionals are independent on the lineality.
        Matrix chosen;
        for (std::size_t s = 0; s < ambient && static_cast<int>(chosen.size()) < lineality_dim; ++s) {
            Vec col(lin.size());
            for (std::size_t r = 0; r < lin.size(); ++r) col[r] = lin[r][s];
            chosen.push_back(col);
            if (rank(chosen) < static_cast<int>(chosen.size())) {
                chosen.pop_back();
                continue;
            }
            normalization.push_back({unit_vec(ambient, s), 0});
        }
        if (options.prune) {
            if (n - 1 > k + 1) {
                if (!cache || cache->k != k || cache->n != n - 1)
                    throw EnumerationError("enumerate_maximal_cones: pruning needs the Dr(" + std::to_string(k) + "," +
                                           std::to_string(n - 1) + ") boundary cache");
                for (auto& f : facet_maps(k, n))
                    if (f.kind == FacetKind::deletion && !f.simplex_facet) deletion_facets.push_back(std::move(f));
            }
        }
    }
    std::size_t size() const { return octs.size(); }
    int code_at(const Vec& w, std::size_t o) const {
        std::array<Rational, 3> s;
        for (int t = 0; t < 3; ++t) s[t] = w[opp[o][t].first] + w[opp[o][t].second];
        return split_code_of_sums(s);
    }
};

/// Depth-first search state; one per worker.
class Searcher {
public:
    explicit Searcher(const SearchContext& ctx) : ctx_(ctx), codes_(ctx.size(), 0) {
        equalities_ = ctx.normalization;
        witness_ = Vec(ctx.ambient);
        for (const auto& f : ctx.deletion_facets) {
            (void)f;
            std::vector<int> all(ctx.cache->sequences.size());
            std::iota(all.begin(), all.end(), 0);
            candidates_.push_back(std::move(all));
        }
    }

    EnumerationStats stats;

    /// Runs the search below the given prefix. Returns false when the prefix itself is infeasible.
    bool run(const std::vector<std::uint8_t>& prefix, std::size_t stop_depth,
             const std::function<void(const std::vector<std::uint8_t>&, const Vec&)>& emit) {
        std::size_t d = 0;
        for (; d < prefix.size(); ++d) {
            if (!push(d, prefix[d])) {
                while (d-- > 0) pop(d);
                return false;
            }
        }
        dfs(d, stop_depth, emit);
        while (d-- > 0) pop(d);
        return true;
    }

private:
    struct Frame {
        Vec witness;
        std::vector<std::pair<std::size_t, std::vector<int>>> saved_candidates;
    };

    bool boundary_ok(std::size_t o, int t, Frame& frame) {
        for (std::size_t f = 0; f < ctx_.deletion_facets.size(); ++f) {
            int p = ctx_.deletion_facets[f].octahedron_map[o];
            if (p < 0) continue;
            std::vector<int> kept;
            for (int c : candidates_[f])
                if (ctx_.cache->sequences[c].codes[p] == t) kept.push_back(c);
            frame.saved_candidates.emplace_back(f, std::move(candidates_[f]));
            candidates_[f] = std::move(kept);
            if (candidates_[f].empty()) return false;
        }
        return true;
    }

    void restore(Frame& frame) {
        for (auto it = frame.saved_candidates.rbegin(); it != frame.saved_candidates.rend(); ++it)
            candidates_[it->first] = std::move(it->second);
        frame.saved_candidates.clear();
    }

    /// Decides octahedron d with split t; on failure the state is unchanged.
    bool push(std::size_t d, int t) {
        ++stats.nodes;
        Frame frame;
        frame.witness = witness_;
        if (!ctx_.deletion_facets.empty() && !boundary_ok(d, t, frame)) {
            ++stats.boundary_prunes;
            restore(frame);
            return false;
        }
        equalities_.push_back(ctx_.eq[d][t]);
        strict_.push_back(ctx_.strict[d][t]);
        if (ctx_.options.min_dim > 0) {
            Matrix rows;
            for (std::size_t i = ctx_.normalization.size(); i < equalities_.size(); ++i) rows.push_back(equalities_[i].coeffs);
            int dim = static_cast<int>(ctx_.ambient) - ctx_.lineality_dim - rank(rows);
            if (dim < ctx_.options.min_dim) {
                ++stats.dimension_prunes;
                equalities_.pop_back();
                strict_.pop_back();
                restore(frame);
                return false;
            }
        }
        if (ctx_.code_at(witness_, d) != t) {
            ++stats.lp_calls;
            auto w = relatively_open_feasible(ctx_.ambient, equalities_, strict_);
            if (!w) {
                ++stats.infeasible_prunes;
                equalities_.pop_back();
                strict_.pop_back();
                restore(frame);
                return false;
            }
            witness_ = std::move(*w);
        }
        codes_[d] = static_cast<std::uint8_t>(t);
        frames_.push_back(std::move(frame));
        return true;
    }

    void pop(std::size_t d) {
        Frame& frame = frames_.back();
        restore(frame);
        witness_ = std::move(frame.witness);
        frames_.pop_back();
        equalities_.pop_back();
        strict_.pop_back();
        codes_[d] = 0;
    }

    void dfs(std::size_t d, std::size_t stop_depth,
             const std::function<void(const std::vector<std::uint8_t>&, const Vec&)>& emit) {
        if (d == stop_depth) {
            emit(std::vector<std::uint8_t>(codes_.begin(), codes_.begin() + static_cast<std::ptrdiff_t>(d)), witness_);
            return;
        }
        const int last = (ctx_.options.symmetry_fix && d == 0) ? 1 : 3;
        for (int t = 1; t <= last; ++t) {
            if (!push(d, t)) continue;
            dfs(d + 1, stop_depth, emit);
            pop(d);
        }
    }

    const SearchContext& ctx_;
    std::vector<std::uint8_t> codes_;
    std::vector<AffineForm> equalities_, strict_;
    Vec witness_;
    std::vector<std::vector<int>> candidates_;
    std::vector<Frame> frames_;
};

inline int sequence_dim(const SearchContext& ctx, const SplitSequence& seq) {
    Matrix rows;
    for (std::size_t o = 0; o < seq.size(); ++o)
        if (seq.codes[o]) rows.push_back(ctx.eq[o][seq.codes[o]].coeffs);
    return static_cast<int>(ctx.ambient) - ctx.lineality_dim - (rows.empty() ? 0 : rank(rows));
}

}  // namespace detail

/**
 * Every maximal cone in which all octahedra are split, each exactly once
 * (or at least once per Sym(n)-orbit with symmetry_fix), in canonical
 * depth-first order. The search is split into prefix tasks which workers run
 * independently; the result does not depend on the number of workers.
 */
inline std::vector<DressianCone> enumerate_maximal_cones(int k, int n, const BoundaryCache* cache,
                                                         const EnumerateOptions& options = {},
                                                         EnumerationStats* stats_out = nullptr) {
    detail::SearchContext ctx(k, n, cache, options);
    EnumerationStats total;
    std::vector<DressianCone> out;
    if (ctx.size() == 0) {
        // No 3-term relations: the Dressian is the whole space.
        DressianCone c{SplitSequence(k, n), PluckerVector(k, n), static_cast<int>(ctx.ambient) - ctx.lineality_dim};
        out.push_back(std::move(c));
        return out;
    }
    const std::size_t depth = std::min<std::size_t>(static_cast<std::size_t>(std::max(0, options.parallel_prefix_depth)), ctx.size());

    std::vector<std::vector<std::uint8_t>> tasks;
    {
        detail::Searcher s(ctx);
        s.run({}, depth, [&](const std::vector<std::uint8_t>& prefix, const Vec&) { tasks.push_back(prefix); });
        total.nodes += s.stats.nodes;
        total.lp_calls += s.stats.lp_calls;
    }

    std::map<std::size_t, std::vector<DressianCone>> results;
    if (options.resume) {
        const auto& r = *options.resume;
        if (r.k != k || r.n != n || r.prune != options.prune || r.symmetry_fix != options.symmetry_fix ||
            r.parallel_prefix_depth != options.parallel_prefix_depth || r.task_count != tasks.size())
            throw EnumerationError("enumerate_maximal_cones: checkpoint does not match this run");
        results = r.completed;
    }

    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::uint64_t nodes_since_checkpoint = 0;
    std::exception_ptr failure;

    auto checkpoint_locked = [&]() {
        if (!options.on_checkpoint) return;
        EnumerationCheckpoint cp{k, n, options.prune, options.symmetry_fix, options.parallel_prefix_depth, tasks.size(), results};
        options.on_checkpoint(cp);
    };

    auto worker = [&]() {
        try {
            detail::Searcher s(ctx);
            while (true) {
                std::size_t t = next.fetch_add(1);
                if (t >= tasks.size()) break;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (results.count(t)) continue;
                }
                std::vector<DressianCone> found;
                std::uint64_t before = s.stats.nodes;
                s.run(tasks[t], ctx.size(), [&](const std::vector<std::uint8_t>& codes, const Vec& w) {
                    SplitSequence seq(k, n, codes);
                    found.push_back({seq, PluckerVector(k, n, w), detail::sequence_dim(ctx, seq)});
                });
                std::lock_guard<std::mutex> lock(mu);
                results[t] = std::move(found);
                nodes_since_checkpoint += s.stats.nodes - before;
                if (options.checkpoint_every && nodes_since_checkpoint >= options.checkpoint_every) {
                    nodes_since_checkpoint = 0;
                    checkpoint_locked();
                }
            }
            std::lock_guard<std::mutex> lock(mu);
            total.nodes += s.stats.nodes;
            total.lp_calls += s.stats.lp_calls;
            total.boundary_prunes += s.stats.boundary_prunes;
            total.infeasible_prunes += s.stats.infeasible_prunes;
            total.dimension_prunes += s.stats.dimension_prunes;
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure) failure = std::current_exception();
            next = tasks.size();
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    if (options.checkpoint_every) checkpoint_locked();

    for (auto& [t, cones] : results)
        for (auto& c : cones) out.push_back(std::move(c));
    if (stats_out) *stats_out = total;
    return out;
}

/// Maximal cones of Dr(k,n), pruning recursively through Dr(k,n-1), Dr(k,n-2), ...
inline BoundaryCache boundary_cache(int k, int n, int jobs = 1) {
    BoundaryCache cache{k, n, {}};
    if (n < k + 2) {
        cache.sequences.push_back(SplitSequence(k, n));
        return cache;
    }
    EnumerateOptions opt;
    opt.jobs = jobs;
    BoundaryCache below;
    if (n - 1 > k + 1) below = boundary_cache(k, n - 1, jobs);
    else opt.prune = false;
    for (auto& c : enumerate_maximal_cones(k, n, opt.prune ? &below : nullptr, opt)) cache.sequences.push_back(std::move(c.seq));
    return cache;
}

/// The full enumeration with pruning caches built on the way.
inline std::vector<DressianCone> dressian_maximal_cones(int k, int n, EnumerateOptions options = {},
                                                        EnumerationStats* stats = nullptr) {
    BoundaryCache below;
    if (options.prune && n - 1 > k + 1) below = boundary_cache(k, n - 1, options.jobs);
    else options.prune = false;
    return enumerate_maximal_cones(k, n, options.prune ? &below : nullptr, options, stats);
}

// ---------------------------------------------------------------------------
// Rays, faces and f-vectors

/**
 * A fan of Dressian cones: maximal cone sequences, global rays (primitive
 * integer representatives modulo the lineality space), and the rays of
 * every maximal cone.
 */
struct DressianFan {
    int k = 0;
    int n = 0;
    int lineality_dim = 0;
    std::vector<SplitSequence> cones;
    std::vector<Vec> rays;
    std::vector<std::vector<int>> cone_rays;
    std::vector<int> cone_dims;

    friend bool operator==(const DressianFan&, const DressianFan&) = default;
};

/// Canonical ray representatives modulo the Dressian lineality space.
class RayCanonicalizer {
public:
    RayCanonicalizer(int k, int n) {
        Echelon e = rref(dressian_lineality(k, n), static_cast<std::size_t>(binomial(n, k)));
        set_.lineality_basis = e.rows;
        set_.lineality_pivots = e.pivots;
    }
    Vec operator()(const Vec& v) const { return set_.canonical(v); }
    const RaySet& basis() const { return set_; }

private:
    RaySet set_;
};

inline int ray_index(const std::vector<Vec>& rays, const Vec& r) {
    auto it = std::lower_bound(rays.begin(), rays.end(), r);
    if (it == rays.end() || *it != r) return -1;
    return static_cast<int>(it - rays.begin());
}

/**
 * Rays of every maximal cone. Throws when some cone has a lineality space
 * other than the Dressian's n-dimensional one.
 */
inline DressianFan build_fan(int k, int n, std::vector<SplitSequence> cones) {
    std::sort(cones.begin(), cones.end());
    DressianFan fan;
    fan.k = k;
    fan.n = n;
    RayCanonicalizer canon(k, n);
    fan.lineality_dim = static_cast<int>(canon.basis().lineality_basis.size());
    std::vector<std::vector<Vec>> local;
    std::set<Vec> all;
    for (const auto& seq : cones) {
        RaySet rs = extreme_rays(cone_from_sequence(seq));
        if (rs.lineality_basis != canon.basis().lineality_basis)
            throw EnumerationError("build_fan: cone " + seq.to_string() + " has an unexpected lineality space");
        std::vector<Vec> rays;
        for (const auto& r : rs.rays) rays.push_back(canon(r));
        fan.cone_dims.push_back(rays.empty() ? 0 : rank(rays));
        all.insert(rays.begin(), rays.end());
        local.push_back(std::move(rays));
    }
    fan.rays.assign(all.begin(), all.end());
    for (const auto& rays : local) {
        std::vector<int> idx;
        for (const auto& r : rays) idx.push_back(ray_index(fan.rays, r));
        std::sort(idx.begin(), idx.end());
        fan.cone_rays.push_back(std::move(idx));
    }
    fan.cones = std::move(cones);
    return fan;
}

/**
 * All faces of all maximal cones, as sorted global ray-index sets, grouped by
 * dimension modulo lineality (index 0 holds the lineality space itself).
 */
inline std::vector<std::set<std::vector<int>>> fan_faces(const DressianFan& fan) {
    std::vector<std::set<std::vector<int>>> by_dim(1);
    by_dim[0].insert(std::vector<int>{});
    for (std::size_t c = 0; c < fan.cones.size(); ++c) {
        const auto& idx = fan.cone_rays[c];
        const int top = fan.cone_dims[c];
        if (static_cast<int>(by_dim.size()) <= top) by_dim.resize(top + 1);
        // Facets of the cone as ray-index sets.
        PolyhedralCone pc = cone_from_sequence(fan.cones[c]);
        RaySet rs = extreme_rays(pc);
        RayCanonicalizer canon(fan.k, fan.n);
        std::vector<int> local_to_global;
        for (const auto& r : rs.rays) local_to_global.push_back(ray_index(fan.rays, canon(r)));
        std::vector<std::vector<int>> facets;
        for (const auto& f : cone_facets(pc, rs)) {
            std::vector<int> g;
            for (int i : f.rays) g.push_back(local_to_global[i]);
            std::sort(g.begin(), g.end());
            facets.push_back(std::move(g));
        }
        auto dim_of = [&](const std::vector<int>& face) {
            if (face.empty()) return 0;
            Matrix m;
            for (int i : face) m.push_back(fan.rays[i]);
            return rank(m);
        };
        // Walk down the face lattice: faces of codimension one in F are maximal intersections with facets.
        std::set<std::vector<int>> level{idx};
        for (int d = top; d >= 1 && !level.empty(); --d) {
            std::set<std::vector<int>> next;
            for (const auto& face : level) {
                by_dim[d].insert(face);
                for (const auto& fc : facets) {
                    std::vector<int> inter;
                    std::set_intersection(face.begin(), face.end(), fc.begin(), fc.end(), std::back_inserter(inter));
                    if (dim_of(inter) == d - 1) next.insert(std::move(inter));
                }
            }
            level = std::move(next);
        }
    }
    return by_dim;
}

/// Raw f-vector (f_0 = 1 for the lineality space, f_1 = number of rays, ...).
inline std::vector<std::int64_t> f_vector(const std::vector<std::set<std::vector<int>>>& faces) {
    std::vector<std::int64_t> f;
    for (const auto& level : faces) f.push_back(static_cast<std::int64_t>(level.size()));
    return f;
}

/// The Sym(n) action on the global rays: image[p][r] is the index of p applied to ray r.
inline std::vector<std::vector<int>> ray_permutation_images(const DressianFan& fan) {
    RayCanonicalizer canon(fan.k, fan.n);
    std::vector<std::vector<int>> out;
    for_each_permutation(fan.n, [&](const Permutation& p) {
        std::vector<int> img;
        for (const auto& r : fan.rays) {
            int j = ray_index(fan.rays, canon(apply_perm(p, PluckerVector(fan.k, fan.n, r)).values()));
            if (j < 0) throw EnumerationError("ray_permutation_images: fan is not Sym(n)-invariant");
            img.push_back(j);
        }
        out.push_back(std::move(img));
    });
    return out;
}

/// Orbit representatives (lexicographically smallest image) of ray-index sets under the given action.
inline std::map<std::vector<int>, std::int64_t> face_orbits(const std::set<std::vector<int>>& faces,
                                                           const std::vector<std::vector<int>>& action) {
    std::map<std::vector<int>, std::int64_t> orbits;
    for (const auto& face : faces) {
        std::vector<int> best;
        bool first = true;
        for (const auto& img : action) {
            std::vector<int> g;
            for (int i : face) g.push_back(img[i]);
            std::sort(g.begin(), g.end());
            if (first || g < best) best = std::move(g);
            first = false;
        }
        ++orbits[best];
    }
    return orbits;
}

struct FVectors {
    std::vector<std::int64_t> raw;
    std::vector<std::int64_t> modulo_symmetry;
};

inline FVectors fan_f_vectors(const DressianFan& fan) {
    auto faces = fan_faces(fan);
    auto action = ray_permutation_images(fan);
    FVectors out;
    out.raw = f_vector(faces);
    for (const auto& level : faces) out.modulo_symmetry.push_back(static_cast<std::int64_t>(face_orbits(level, action).size()));
    return out;
}

/// Sym(n)-orbits of maximal cones: lex-min representatives with orbit sizes.
inline std::vector<OrbitRep> cone_orbits(const std::vector<SplitSequence>& cones) {
    std::map<SplitSequence, std::int64_t> reps;
    for (const auto& s : cones) {
        OrbitRep r = lex_min_orbit_rep(s);
        reps.emplace(r.rep, r.orbit_size);
    }
    std::vector<OrbitRep> out;
    for (auto& [s, size] : reps) out.push_back({s, size});
    return out;
}

}  // namespace dressian
