/**
 * JSON encodings of the library's values. Rationals are written as JSON
 * integers when they are integral and fit into 64 bits, and as "p/q"
 * strings otherwise; readers accept both.
 */
#pragma once

#include "dressian/dressian.hpp"
#include "dressian/tight_span.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dressian {

using Json = nlohmann::json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Json to_json(const Rational& r) {
    if (r.is_integer()) {
        mpz_class num = r.numerator();
        if (num.fits_slong_p()) return Json(static_cast<std::int64_t>(num.get_si()));
    }
    return Json(r.to_string());
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw IoError("expected an integer or a rational string, got " + j.dump());
}

inline Json to_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw IoError("expected an array of rationals");
    Vec v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline Json to_json(const Matrix& m) {
    Json a = Json::array();
    for (const auto& row : m) a.push_back(to_json(row));
    return a;
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw IoError("expected an array of rows");
    Matrix m;
    for (const auto& row : j) m.push_back(vec_from_json(row));
    return m;
}

/// {"k", "n", "matrix"}: k rows of n - k entries, one column per point.
inline Json to_json(const PointConfig& cfg) { return {{"k", cfg.k}, {"n", cfg.n}, {"matrix", to_json(cfg.v)}}; }

inline PointConfig point_config_from_json(const Json& j) {
    if (!j.contains("matrix")) throw IoError("point configuration: missing \"matrix\"");
    Matrix m = matrix_from_json(j.at("matrix"));
    if (m.empty()) throw IoError("point configuration: empty matrix");
    for (const auto& row : m)
        if (row.size() != m[0].size()) throw IoError("point configuration: ragged matrix");
    const int k = static_cast<int>(m.size());
    const int n = k + static_cast<int>(m[0].size());
    if (j.contains("k") && j.at("k").get<int>() != k) throw IoError("point configuration: k disagrees with the matrix");
    if (j.contains("n") && j.at("n").get<int>() != n) throw IoError("point configuration: n disagrees with the matrix");
    return PointConfig(k, n, std::move(m));
}

/// {"k", "n", "values"} with values in lexicographic order of the k-subsets.
inline Json to_json(const PluckerVector& pi) { return {{"k", pi.k()}, {"n", pi.n()}, {"values", to_json(pi.values())}}; }

/**
 * Accepts "values" as an array in lexicographic order, or as an object keyed
 * by subset labels such as "134" (n <= 9; missing subsets are an error).
 */
inline PluckerVector plucker_vector_from_json(const Json& j) {
    for (const char* key : {"k", "n", "values"})
        if (!j.contains(key)) throw IoError(std::string("Plücker vector: missing \"") + key + "\"");
    const int k = j.at("k").get<int>(), n = j.at("n").get<int>();
    const Json& vals = j.at("values");
    if (vals.is_array()) return PluckerVector(k, n, vec_from_json(vals));
    if (!vals.is_object()) throw IoError("Plücker vector: \"values\" must be an array or an object");
    PluckerVector pi(k, n);
    std::vector<bool> seen(pi.size(), false);
    for (auto it = vals.begin(); it != vals.end(); ++it) {
        KSubset s = KSubset::from_label(it.key());
        pi.at(s) = rational_from_json(it.value());
        seen[subset_rank(s, n)] = true;
    }
    for (bool b : seen)
        if (!b) throw IoError("Plücker vector: some subsets have no value");
    return pi;
}

inline Json to_json(const SplitSequence& s) { return {{"k", s.k}, {"n", s.n}, {"codes", s.to_string()}}; }

inline SplitSequence split_sequence_from_json(const Json& j) {
    return SplitSequence::from_string(j.at("k").get<int>(), j.at("n").get<int>(), j.at("codes").get<std::string>());
}

inline Json to_json(const Polytope& p) {
    switch (p.kind) {
        case Polytope::Kind::hypersimplex: return {{"kind", "hypersimplex"}, {"k", p.k}, {"n", p.n}};
        case Polytope::Kind::product: return {{"kind", "product"}, {"k", p.k}, {"n", p.n}};
        case Polytope::Kind::points: return {{"kind", "points"}, {"points", to_json(p.custom)}};
    }
    return {};
}

inline Polytope polytope_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "hypersimplex") return Polytope::hypersimplex(j.at("k").get<int>(), j.at("n").get<int>());
    if (kind == "product") return Polytope::product(j.at("k").get<int>(), j.at("n").get<int>());
    if (kind == "points") return Polytope::points(matrix_from_json(j.at("points")));
    throw IoError("polytope: unknown kind \"" + kind + "\"");
}

/// Cells as vertex indices; "cell_labels" repeats them with vertex labels for reading.
inline Json to_json(const Subdivision& s) {
    Json cells = Json::array(), labels = Json::array();
    for (const auto& c : s.cells) {
        cells.push_back(c);
        Json l = Json::array();
        for (int v : c) l.push_back(s.polytope.vertex_label(v));
        labels.push_back(std::move(l));
    }
    return {{"polytope", to_json(s.polytope)}, {"cells", cells}, {"cell_labels", labels}};
}

inline Subdivision subdivision_from_json(const Json& j) {
    std::vector<Cell> cells;
    for (const auto& c : j.at("cells")) cells.push_back(c.get<Cell>());
    return Subdivision(polytope_from_json(j.at("polytope")), std::move(cells));
}

inline Json to_json(const TightSpan& ts) {
    Json vertices = Json::array();
    for (std::size_t v = 0; v < ts.vertex_count; ++v) {
        Json e = {{"cell", ts.elements[v].points}};
        if (v < ts.realization.size() && !ts.realization[v].empty()) e["coordinates"] = to_json(ts.realization[v]);
        vertices.push_back(std::move(e));
    }
    Json faces = Json::object();
    for (int d = 1; d <= ts.dim(); ++d) {
        Json list = Json::array();
        for (int e : ts.elements_of_dim(d)) list.push_back(ts.elements[e].cells);
        faces[std::to_string(d)] = std::move(list);
    }
    return {{"dim", ts.dim()}, {"f_vector", ts.f_vector()}, {"vertices", vertices}, {"faces", faces}};
}

inline Json to_json(const DressianCone& c) {
    return {{"codes", c.seq.to_string()}, {"dim", c.dim}, {"witness", to_json(c.witness.values())}};
}

inline DressianCone dressian_cone_from_json(const Json& j, int k, int n) {
    DressianCone c;
    c.seq = SplitSequence::from_string(k, n, j.at("codes").get<std::string>());
    c.witness = PluckerVector(k, n, vec_from_json(j.at("witness")));
    c.dim = j.at("dim").get<int>();
    return c;
}

inline Json to_json(const EnumerationCheckpoint& cp) {
    Json done = Json::object();
    for (const auto& [t, cones] : cp.completed) {
        Json list = Json::array();
        for (const auto& c : cones) list.push_back(to_json(c));
        done[std::to_string(t)] = std::move(list);
    }
    return {{"k", cp.k},
            {"n", cp.n},
            {"prune", cp.prune},
            {"symmetry_fix", cp.symmetry_fix},
            {"parallel_prefix_depth", cp.parallel_prefix_depth},
            {"task_count", cp.task_count},
            {"completed", done}};
}

inline EnumerationCheckpoint checkpoint_from_json(const Json& j) {
    EnumerationCheckpoint cp;
    cp.k = j.at("k").get<int>();
    cp.n = j.at("n").get<int>();
    cp.prune = j.at("prune").get<bool>();
    cp.symmetry_fix = j.at("symmetry_fix").get<bool>();
    cp.parallel_prefix_depth = j.at("parallel_prefix_depth").get<int>();
    cp.task_count = j.at("task_count").get<std::size_t>();
    for (auto it = j.at("completed").begin(); it != j.at("completed").end(); ++it) {
        std::vector<DressianCone> cones;
        for (const auto& c : it.value()) cones.push_back(dressian_cone_from_json(c, cp.k, cp.n));
        cp.completed[std::stoul(it.key())] = std::move(cones);
    }
    return cp;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

/// Writes to a temporary file and renames it, so readers never see partial files.
inline void write_text_file(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp);
        out << text;
        if (!out) throw IoError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IoError("cannot rename " + tmp + " to " + path);
}

}  // namespace dressian
