/**
 * The command-line interface. run() parses arguments, dispatches to the
 * subcommand and writes JSON (or a plain table with --table) to out and
 * diagnostics to err. Exit codes: 0 success, 1 domain error, 2 usage error.
 */
#pragma once

#include "dressian/fan_store.hpp"
#include "dressian/matroid.hpp"
#include "dressian/ray_catalog.hpp"

#include <CLI11.hpp>

#include <filesystem>

namespace dressian::cli {

/// Raised for invalid input that parses but cannot be acted on.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Subcommand-level domain failure that has already produced its report (exit code 1).
class DomainFailure : public std::runtime_error {
public:
    explicit DomainFailure(Json report) : std::runtime_error("domain failure"), report(std::move(report)) {}
    Json report;
};

namespace detail {

inline std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

inline bool is_flat_array(const Json& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j)
        if (x.is_array() || x.is_object()) return false;
    return true;
}

inline void render_table(const Json& j, std::ostream& out, const std::string& indent = "") {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const Json& v = it.value();
            if (v.is_object() || (v.is_array() && !is_flat_array(v))) {
                out << indent << it.key() << ":\n";
                render_table(v, out, indent + "  ");
            } else if (v.is_array()) {
                out << indent << it.key() << ":";
                for (const auto& x : v) out << ' ' << scalar_text(x);
                out << '\n';
            } else {
                out << indent << it.key() << ": " << scalar_text(v) << '\n';
            }
        }
    } else if (j.is_array()) {
        for (const auto& x : j) {
            if (is_flat_array(x)) {
                out << indent;
                for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << scalar_text(x[i]);
                out << '\n';
            } else if (x.is_object() || x.is_array()) {
                out << indent << "-\n";
                render_table(x, out, indent + "  ");
            } else {
                out << indent << scalar_text(x) << '\n';
            }
        }
    } else {
        out << indent << scalar_text(j) << '\n';
    }
}

inline Json subset_labels(int k, int n) {
    Json a = Json::array();
    for (KSubset s : enumerate_ksubsets(n, k)) a.push_back(s.label());
    return a;
}

inline Json plucker_json(const PluckerVector& pi) {
    Json j = to_json(pi);
    if (pi.n() <= 9) j["subsets"] = subset_labels(pi.k(), pi.n());
    return j;
}

inline TropicalMatrix tropical_matrix_from_json(const Json& j) {
    if (!j.contains("matrix")) throw IoError("tdet: missing \"matrix\"");
    TropicalMatrix m;
    for (const auto& row : j.at("matrix")) {
        std::vector<Trop> r;
        for (const auto& x : row) {
            if (x.is_string() && (x.get<std::string>() == "inf" || x.get<std::string>() == "infinity"))
                r.push_back(Trop::infinity());
            else
                r.push_back(Trop(rational_from_json(x)));
        }
        m.push_back(std::move(r));
    }
    for (const auto& r : m)
        if (r.size() != m.size()) throw IoError("tdet: matrix must be square");
    return m;
}

inline Json tight_span_report(const TightSpan& ts) {
    Json j = to_json(ts);
    j["shape"] = tight_span_shape(ts);
    if (ts.dim() == 2) {
        Json shapes = Json::array();
        for (auto s : classify_2cells(ts)) shapes.push_back(to_string(s));
        j["two_cell_shapes"] = shapes;
    }
    return j;
}

/// The subdivision given by --vector (of Delta(k,n)) or --config (of the product of simplices).
struct SubdivisionInput {
    Subdivision subdivision;
    Vec heights;
};

inline SubdivisionInput subdivision_input(const std::string& vector_file, const std::string& config_file) {
    if (vector_file.empty() == config_file.empty())
        throw UsageError("give exactly one of --vector (Plücker vector) or --config (point configuration)");
    if (!vector_file.empty()) {
        PluckerVector pi = plucker_vector_from_json(read_json_file(vector_file));
        return {regular_subdivision(Polytope::hypersimplex(pi.k(), pi.n()), pi.values()), pi.values()};
    }
    PointConfig cfg = point_config_from_json(read_json_file(config_file));
    return {product_subdivision(cfg), product_heights(cfg)};
}

inline void check_size_guard(int k, int n, bool long_run) {
    if (k < 1 || n <= k) throw UsageError("need 1 <= k < n");
    if (n > 12) throw UsageError("n > 12 is not supported");
    if (enumerate_octahedra(k, n).size() > 150 && !long_run)
        throw UsageError("Dr(" + std::to_string(k) + "," + std::to_string(n) +
                         ") is a long-running enumeration; pass --long-run to start it");
}

struct EnumerateRequest {
    int k = 0, n = 0;
    bool prune = true;
    bool sym_fix = false;
    bool long_run = false;
    int jobs = 1;
    std::uint64_t checkpoint_every = 0;
    std::string store;
};

inline std::string boundary_cache_path(const std::string& dir, int k, int n) {
    return (std::filesystem::path(dir) / ("boundary-" + std::to_string(k) + "-" + std::to_string(n) + ".bin")).string();
}

/// Runs (or resumes) an enumeration and returns the full cone list and search statistics.
inline std::vector<SplitSequence> run_enumeration(const EnumerateRequest& req, EnumerationStats& stats) {
    check_size_guard(req.k, req.n, req.long_run);
    EnumerateOptions opt;
    opt.prune = req.prune && req.n - 1 > req.k + 1;
    opt.symmetry_fix = req.sym_fix;
    opt.jobs = req.jobs;
    BoundaryCache below;
    if (opt.prune) {
        std::string cached = req.store.empty() ? "" : boundary_cache_path(req.store, req.k, req.n - 1);
        if (!cached.empty() && std::filesystem::exists(cached)) below = load_boundary_cache(cached);
        else below = boundary_cache(req.k, req.n - 1, req.jobs);
    }
    std::optional<EnumerationCheckpoint> resume;
    std::string cp_path;
    if (!req.store.empty()) {
        std::filesystem::create_directories(req.store);
        cp_path = (std::filesystem::path(req.store) / "checkpoint.json").string();
        if (std::filesystem::exists(cp_path)) {
            resume = checkpoint_from_json(read_json_file(cp_path));
            opt.resume = &*resume;
        }
        if (req.checkpoint_every) {
            opt.checkpoint_every = req.checkpoint_every;
            opt.on_checkpoint = [cp_path](const EnumerationCheckpoint& cp) { write_text_file(cp_path, to_json(cp).dump() + "\n"); };
        }
    }
    auto cones = enumerate_maximal_cones(req.k, req.n, opt.prune ? &below : nullptr, opt, &stats);
    std::vector<SplitSequence> seqs;
    for (auto& c : cones) seqs.push_back(std::move(c.seq));
    if (req.sym_fix) {
        // Expand the orbit representatives to the full fan.
        OctahedronAction act(req.k, req.n);
        std::set<SplitSequence> all;
        for (const auto& o : cone_orbits(seqs))
            for_each_permutation(req.n, [&](const Permutation& p) {
                all.insert(SplitSequence(req.k, req.n, OctahedronAction::apply(act.image(p), o.rep.codes)));
            });
        seqs.assign(all.begin(), all.end());
    }
    if (!cp_path.empty() && std::filesystem::exists(cp_path)) std::filesystem::remove(cp_path);
    return seqs;
}

inline Json fan_summary(const FanStore& s) {
    std::map<std::string, int> dims;
    for (std::size_t c = 0; c < s.cones.size(); ++c) {
        Matrix m;
        for (int r : s.cone_rays[c]) m.push_back(s.rays[r]);
        ++dims[std::to_string(m.empty() ? 0 : rank(m))];
    }
    Json orbit_sizes = Json::array();
    for (const auto& o : s.orbits) orbit_sizes.push_back(o.orbit_size);
    return {{"k", s.k},
            {"n", s.n},
            {"lineality_dim", s.lineality_dim},
            {"maximal_cones", s.cones.size()},
            {"maximal_cone_dims", dims},
            {"orbits", s.orbits.size()},
            {"orbit_sizes", orbit_sizes},
            {"rays", s.rays.size()},
            {"f_vector", s.f_vectors.raw},
            {"f_vector_modulo_symmetry", s.f_vectors.modulo_symmetry}};
}

/// Loads the store for (k, n) if present, otherwise enumerates (and saves when a store directory is given).
inline FanStore obtain_fan(const EnumerateRequest& req) {
    if (!req.store.empty() && std::filesystem::exists(std::filesystem::path(req.store) / "manifest.json")) {
        FanStore s = load_fan_store(req.store);
        if (s.k != req.k || s.n != req.n) throw UsageError("--store holds Dr(" + std::to_string(s.k) + "," + std::to_string(s.n) + ")");
        return s;
    }
    EnumerationStats stats;
    FanStore s = analyze_fan(req.k, req.n, run_enumeration(req, stats));
    if (!req.store.empty()) save_fan_store(req.store, s);
    return s;
}

}  // namespace detail

/**
 * Runs one command. args excludes the program name.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tropical Plücker vectors, matroid subdivisions and Dressians", "dressian"};
    app.require_subcommand(1);
    app.fallthrough();
    bool table = false;
    app.add_flag("--table", table, "plain-text output instead of JSON");

    std::string config, vector_file, store;
    int k = 0, n = 0, jobs = 1, dim = -1;
    bool prune = true, sym_fix = false, long_run = false;
    std::uint64_t checkpoint_every = 0;

    auto add_k_n = [&](CLI::App* c) {
        c->add_option("--k", k, "rank k")->required();
        c->add_option("--n", n, "ground set size n")->required();
    };
    auto add_enumeration_flags = [&](CLI::App* c) {
        add_k_n(c);
        c->add_flag("--prune,!--no-prune", prune, "prune against Dr(k,n-1) (default on)");
        c->add_flag("--sym-fix", sym_fix, "fix the first octahedral split (symmetry reduction)");
        c->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        c->add_option("--store", store, "fan store directory (read if present, written otherwise)");
        c->add_option("--checkpoint-every", checkpoint_every, "nodes between checkpoints (needs --store)");
        c->add_flag("--long-run", long_run, "allow enumerations beyond desk scale");
    };

    auto* c_tau = app.add_subcommand("tau", "Plücker vector tau_V of a point configuration");
    c_tau->add_option("--config", config, "point configuration JSON")->required();
    auto* c_phi = app.add_subcommand("phi", "point configuration Phi(pi) of a Plücker vector");
    c_phi->add_option("--vector", vector_file, "Plücker vector JSON")->required();
    auto* c_check = app.add_subcommand("check-plucker", "check the 3-term tropical Plücker relations");
    c_check->add_option("--vector", vector_file, "Plücker vector JSON")->required();
    auto* c_tdet = app.add_subcommand("tdet", "tropical determinant of a square matrix");
    c_tdet->add_option("--config", config, "JSON {\"matrix\": [[...]]}, entries may be \"inf\"")->required();

    auto* c_sub = app.add_subcommand("subdivision", "regular subdivisions and their tight spans");
    c_sub->require_subcommand(1);
    std::vector<CLI::App*> sub_cmds;
    for (const char* name : {"compute", "tight-span", "classify", "collapse"}) {
        auto* c = c_sub->add_subcommand(name, std::string("subdivision ") + name);
        c->add_option("--vector", vector_file, "Plücker vector JSON (subdivision of the hypersimplex)");
        c->add_option("--config", config, "point configuration JSON (subdivision of the product of simplices)");
        sub_cmds.push_back(c);
    }

    auto* c_rigid = app.add_subcommand("rigid", "tropically rigid point configurations");
    c_rigid->require_subcommand(1);
    auto* c_rigid_check = c_rigid->add_subcommand("check", "is the configuration rigid");
    c_rigid_check->add_option("--config", config, "point configuration JSON")->required();
    auto* c_rigid_catalog = c_rigid->add_subcommand("catalog", "the rigid 3x5 configurations");
    auto* c_rigid_enum = c_rigid->add_subcommand("enumerate", "coarsest subdivisions of the product of simplices");
    add_k_n(c_rigid_enum);

    auto* c_dr = app.add_subcommand("dressian", "Dressian fans");
    c_dr->require_subcommand(1);
    auto* c_dr_enum = c_dr->add_subcommand("enumerate", "enumerate maximal cones");
    add_enumeration_flags(c_dr_enum);
    auto* c_dr_rays = c_dr->add_subcommand("rays", "rays modulo lineality");
    add_enumeration_flags(c_dr_rays);
    auto* c_dr_faces = c_dr->add_subcommand("faces", "faces of one dimension, as ray index sets");
    add_enumeration_flags(c_dr_faces);
    c_dr_faces->add_option("--dim", dim, "dimension modulo lineality")->required();
    auto* c_dr_fvec = c_dr->add_subcommand("fvector", "raw and symmetry-reduced f-vectors");
    add_enumeration_flags(c_dr_fvec);
    auto* c_dr_orbit = c_dr->add_subcommand("orbit", "orbit of the cone of a vector, or the orbits of a stored fan");
    c_dr_orbit->add_option("--vector", vector_file, "Plücker vector JSON");
    c_dr_orbit->add_option("--store", store, "fan store directory");
    auto* c_dr_cache = c_dr->add_subcommand("boundary-cache", "write the maximal cones of Dr(k,n) for pruning Dr(k,n+1)");
    add_k_n(c_dr_cache);
    c_dr_cache->add_option("--store", store, "directory")->required();
    c_dr_cache->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* c_dr_catalog = c_dr->add_subcommand("catalog", "verify the twelve ray classes of Dr(3,8)");

    auto* c_splits = app.add_subcommand("splits", "splits of the hypersimplex");
    c_splits->require_subcommand(1);
    auto* c_splits_count = c_splits->add_subcommand("count", "number of splits of Delta(k,n)");
    add_k_n(c_splits_count);

    auto* c_gr = app.add_subcommand("gr-check", "sufficient criterion for membership in the tropical Grassmannian");
    c_gr->add_option("--vector", vector_file, "Plücker vector JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    auto emit = [&](const Json& j) {
        if (table) detail::render_table(j, out);
        else out << j.dump(2) << '\n';
    };
    detail::EnumerateRequest req{k, n, prune, sym_fix, long_run, jobs, checkpoint_every, store};

    try {
        if (*c_tau) {
            emit(detail::plucker_json(tau(point_config_from_json(read_json_file(config)))));
        } else if (*c_phi) {
            emit(to_json(phi(plucker_vector_from_json(read_json_file(vector_file)))));
        } else if (*c_check) {
            PluckerVector pi = plucker_vector_from_json(read_json_file(vector_file));
            auto bad = check_plucker(pi);
            if (bad.empty()) {
                emit({{"ok", true}});
            } else {
                Json v = Json::array();
                auto octs = enumerate_octahedra(pi.k(), pi.n());
                for (int o : bad) v.push_back({{"octahedron", o}, {"rho", octs[o].rho.label()}, {"quad", octs[o].quad.label()}});
                throw DomainFailure({{"ok", false}, {"violations", v}});
            }
        } else if (*c_tdet) {
            emit({{"tdet", tdet(detail::tropical_matrix_from_json(read_json_file(config))).to_string()}});
        } else if (*c_sub) {
            auto input = detail::subdivision_input(vector_file, config);
            const Subdivision& s = input.subdivision;
            if (*sub_cmds[0]) {
                Json j = to_json(s);
                j["spread"] = s.spread();
                if (s.polytope.kind == Polytope::Kind::hypersimplex) j["matroidal"] = is_matroid_subdivision(s.cell_subsets());
                emit(j);
            } else {
                TightSpan ts = tight_span(s, input.heights);
                if (*sub_cmds[1]) {
                    emit(detail::tight_span_report(ts));
                } else if (*sub_cmds[2]) {
                    Json shapes = Json::array();
                    if (ts.dim() == 2)
                        for (auto sh : classify_2cells(ts)) shapes.push_back(to_string(sh));
                    emit({{"shape", tight_span_shape(ts)}, {"two_cell_shapes", shapes}, {"f_vector", ts.f_vector()}});
                } else {
                    std::vector<TwoCellShape> shapes;
                    if (ts.dim() == 2) shapes = classify_2cells(ts);
                    emit({{"certifies_coarsest", collapse_certifies_coarsest(ts, shapes)}, {"f_vector", ts.f_vector()}});
                }
            }
        } else if (*c_rigid) {
            if (*c_rigid_check) {
                PointConfig cfg = point_config_from_json(read_json_file(config));
                emit({{"rigid", is_tropically_rigid(cfg)},
                      {"generic", is_generic(cfg)},
                      {"spread", product_subdivision(cfg).spread()},
                      {"canonical_form", to_json(canonical_form(cfg).v)}});
            } else if (*c_rigid_catalog) {
                Json list = Json::array();
                for (const auto& cfg : rigid_catalog_3x5())
                    list.push_back({{"matrix", to_json(cfg.v)},
                                    {"spread", product_subdivision(cfg).spread()},
                                    {"multiple_points", has_multiple_points(cfg)}});
                emit({{"k", 3}, {"n", 8}, {"configurations", list}});
            } else {
                if (k < 2 || n < k + 2) throw UsageError("rigid enumerate needs k >= 2 and n >= k + 2");
                Json list = Json::array();
                for (const auto& cfg : enumerate_coarsest_product_subdivisions(k, n))
                    list.push_back({{"matrix", to_json(cfg.v)}, {"spread", product_subdivision(cfg).spread()}});
                emit({{"k", k}, {"n", n}, {"classes", list.size()}, {"configurations", list}});
            }
        } else if (*c_dr) {
            if (*c_dr_enum) {
                EnumerationStats stats;
                FanStore s = analyze_fan(k, n, detail::run_enumeration(req, stats));
                if (!store.empty()) save_fan_store(store, s);
                Json j = detail::fan_summary(s);
                j["search"] = {{"nodes", stats.nodes},
                               {"lp_calls", stats.lp_calls},
                               {"boundary_prunes", stats.boundary_prunes},
                               {"infeasible_prunes", stats.infeasible_prunes}};
                emit(j);
            } else if (*c_dr_rays) {
                FanStore s = detail::obtain_fan(req);
                emit({{"k", k}, {"n", n}, {"lineality_dim", s.lineality_dim}, {"rays", to_json(s.rays)}});
            } else if (*c_dr_faces) {
                FanStore s = detail::obtain_fan(req);
                if (dim < 0 || dim >= static_cast<int>(s.faces.size())) throw UsageError("--dim out of range");
                emit({{"k", k}, {"n", n}, {"dim", dim}, {"faces", s.faces[dim]}});
            } else if (*c_dr_fvec) {
                FanStore s = detail::obtain_fan(req);
                emit({{"k", k}, {"n", n}, {"raw", s.f_vectors.raw}, {"modulo_symmetry", s.f_vectors.modulo_symmetry}});
            } else if (*c_dr_orbit) {
                if (vector_file.empty() == store.empty()) throw UsageError("give exactly one of --vector or --store");
                if (!vector_file.empty()) {
                    PluckerVector pi = plucker_vector_from_json(read_json_file(vector_file));
                    SplitSequence seq = splits_of_vector(pi);
                    OrbitRep r = lex_min_orbit_rep(seq);
                    emit({{"sequence", to_json(seq)}, {"representative", to_json(r.rep)}, {"orbit_size", r.orbit_size}});
                } else {
                    FanStore s = load_fan_store(store);
                    Json list = Json::array();
                    for (const auto& o : s.orbits) list.push_back({{"representative", o.rep.to_string()}, {"orbit_size", o.orbit_size}});
                    emit({{"k", s.k}, {"n", s.n}, {"orbits", list}});
                }
            } else if (*c_dr_cache) {
                detail::check_size_guard(k, n, false);
                BoundaryCache c = boundary_cache(k, n, jobs);
                std::filesystem::create_directories(store);
                std::string path = detail::boundary_cache_path(store, k, n);
                save_boundary_cache(path, c);
                emit({{"k", k}, {"n", n}, {"sequences", c.sequences.size()}, {"path", path}});
            } else if (*c_dr_catalog) {
                Json list = Json::array();
                bool all_ok = true;
                std::int64_t total = 0;
                for (const auto& r : ray_catalog_check(dr38_ray_catalog())) {
                    all_ok = all_ok && r.ok();
                    total += r.orbit_size;
                    list.push_back({{"name", r.name},
                                    {"plucker", r.plucker},
                                    {"coarsest", r.coarsest},
                                    {"dressian_ray", r.dressian_ray},
                                    {"shape", r.shape},
                                    {"orbit_size", r.orbit_size},
                                    {"ok", r.ok()}});
                }
                Json j = {{"entries", list}, {"total_rays", total}, {"ok", all_ok}};
                if (!all_ok) throw DomainFailure(j);
                emit(j);
            }
        } else if (*c_splits) {
            emit({{"k", k}, {"n", n}, {"splits", split_count_formula(k, n)}});
        } else if (*c_gr) {
            PluckerVector pi = plucker_vector_from_json(read_json_file(vector_file));
            GrassmannianResult r = grassmannian_tau_criterion(pi);
            Json j = {{"verdict", to_string(r.verdict)}};
            if (r.sigma) j["sigma"] = r.sigma->label();
            emit(j);
        }
    } catch (const DomainFailure& f) {
        emit(f.report);
        return 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace dressian::cli
