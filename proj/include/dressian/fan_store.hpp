/**
 * On-disk store of a computed Dressian fan. A store is a directory with
 *   manifest.json  parameters, counts, f-vectors and FNV-1a checksums of the other files
 *   cones.bin      maximal cone sequences (binary split-sequence records)
 *   orbits.bin     orbit representatives (binary split-sequence records)
 *   fan.json       orbit sizes, rays, cone-ray incidences, faces by dimension
 */
#pragma once

#include "dressian/io.hpp"

#include <filesystem>

namespace dressian {

class FanStoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FanStore {
    int k = 0;
    int n = 0;
    int lineality_dim = 0;
    std::vector<SplitSequence> cones;
    std::vector<OrbitRep> orbits;
    std::vector<Vec> rays;
    std::vector<std::vector<int>> cone_rays;
    std::vector<std::vector<std::vector<int>>> faces;  ///< by dimension modulo lineality
    FVectors f_vectors;

    friend bool operator==(const FanStore& a, const FanStore& b) {
        auto same_orbits = [](const std::vector<OrbitRep>& x, const std::vector<OrbitRep>& y) {
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (!(x[i].rep == y[i].rep) || x[i].orbit_size != y[i].orbit_size) return false;
            return true;
        };
        return a.k == b.k && a.n == b.n && a.lineality_dim == b.lineality_dim && a.cones == b.cones &&
               same_orbits(a.orbits, b.orbits) && a.rays == b.rays && a.cone_rays == b.cone_rays &&
               a.faces == b.faces && a.f_vectors.raw == b.f_vectors.raw &&
               a.f_vectors.modulo_symmetry == b.f_vectors.modulo_symmetry;
    }
};

/// Full post-processing of a list of maximal cones: orbits, rays, faces, f-vectors.
inline FanStore analyze_fan(int k, int n, std::vector<SplitSequence> cones) {
    DressianFan fan = build_fan(k, n, std::move(cones));
    FanStore s;
    s.k = k;
    s.n = n;
    s.lineality_dim = fan.lineality_dim;
    s.orbits = cone_orbits(fan.cones);
    auto faces = fan_faces(fan);
    auto action = ray_permutation_images(fan);
    for (const auto& level : faces) {
        s.faces.emplace_back(level.begin(), level.end());
        s.f_vectors.raw.push_back(static_cast<std::int64_t>(level.size()));
        s.f_vectors.modulo_symmetry.push_back(static_cast<std::int64_t>(face_orbits(level, action).size()));
    }
    s.cones = std::move(fan.cones);
    s.rays = std::move(fan.rays);
    s.cone_rays = std::move(fan.cone_rays);
    return s;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 15];
    return s;
}

namespace detail {

inline std::string sequences_blob(const std::vector<SplitSequence>& seqs) {
    std::ostringstream out(std::ios::binary);
    for (const auto& s : seqs) write_binary(out, s);
    return out.str();
}

inline std::vector<SplitSequence> sequences_from_blob(const std::string& blob) {
    std::istringstream in(blob, std::ios::binary);
    std::vector<SplitSequence> out;
    while (in.peek() != EOF) out.push_back(read_binary(in));
    return out;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FanStoreError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

inline void save_fan_store(const std::string& dir, const FanStore& s) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<SplitSequence> reps;
    Json sizes = Json::array();
    for (const auto& o : s.orbits) {
        reps.push_back(o.rep);
        sizes.push_back(o.orbit_size);
    }
    Json faces = Json::array();
    for (const auto& level : s.faces) faces.push_back(level);
    Json fan = {{"orbit_sizes", sizes}, {"rays", to_json(s.rays)}, {"cone_rays", s.cone_rays}, {"faces", faces}};
    const std::map<std::string, std::string> files = {{"cones.bin", detail::sequences_blob(s.cones)},
                                                      {"orbits.bin", detail::sequences_blob(reps)},
                                                      {"fan.json", fan.dump() + "\n"}};
    Json checksums = Json::object();
    for (const auto& [name, bytes] : files) {
        write_text_file((fs::path(dir) / name).string(), bytes);
        checksums[name] = "fnv1a64:" + hex64(fnv1a64(bytes));
    }
    Json manifest = {{"format", "dressian-fan-store"},
                     {"version", 1},
                     {"k", s.k},
                     {"n", s.n},
                     {"lineality_dim", s.lineality_dim},
                     {"counts",
                      {{"maximal_cones", s.cones.size()}, {"orbits", s.orbits.size()}, {"rays", s.rays.size()}}},
                     {"f_vector", s.f_vectors.raw},
                     {"f_vector_modulo_symmetry", s.f_vectors.modulo_symmetry},
                     {"checksums", checksums}};
    write_text_file((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

/// Loads a store, verifying every checksum.
inline FanStore load_fan_store(const std::string& dir) {
    namespace fs = std::filesystem;
    Json manifest;
    try {
        manifest = Json::parse(detail::read_file(fs::path(dir) / "manifest.json"));
    } catch (const Json::exception& e) {
        throw FanStoreError("manifest.json: " + std::string(e.what()));
    }
    if (manifest.value("format", "") != "dressian-fan-store") throw FanStoreError(dir + ": not a fan store");
    std::map<std::string, std::string> files;
    for (const char* name : {"cones.bin", "orbits.bin", "fan.json"}) {
        std::string bytes = detail::read_file(fs::path(dir) / name);
        std::string expected = manifest.at("checksums").at(name).get<std::string>();
        if (expected != "fnv1a64:" + hex64(fnv1a64(bytes))) throw FanStoreError(dir + "/" + name + ": checksum mismatch");
        files[name] = std::move(bytes);
    }
    FanStore s;
    try {
        s.k = manifest.at("k").get<int>();
        s.n = manifest.at("n").get<int>();
        s.lineality_dim = manifest.at("lineality_dim").get<int>();
        s.f_vectors.raw = manifest.at("f_vector").get<std::vector<std::int64_t>>();
        s.f_vectors.modulo_symmetry = manifest.at("f_vector_modulo_symmetry").get<std::vector<std::int64_t>>();
        s.cones = detail::sequences_from_blob(files["cones.bin"]);
        auto reps = detail::sequences_from_blob(files["orbits.bin"]);
        Json fan = Json::parse(files["fan.json"]);
        auto sizes = fan.at("orbit_sizes").get<std::vector<std::int64_t>>();
        if (sizes.size() != reps.size()) throw FanStoreError(dir + ": orbit list size mismatch");
        for (std::size_t i = 0; i < reps.size(); ++i) s.orbits.push_back({reps[i], sizes[i]});
        s.rays = matrix_from_json(fan.at("rays"));
        s.cone_rays = fan.at("cone_rays").get<std::vector<std::vector<int>>>();
        s.faces = fan.at("faces").get<std::vector<std::vector<std::vector<int>>>>();
    } catch (const Json::exception& e) {
        throw FanStoreError(dir + ": " + e.what());
    } catch (const SplitSequenceError& e) {
        throw FanStoreError(dir + ": " + e.what());
    }
    return s;
}

/// Checksum of the whole store (over the manifest), for comparing runs.
inline std::string fan_store_checksum(const std::string& dir) {
    return hex64(fnv1a64(detail::read_file(std::filesystem::path(dir) / "manifest.json")));
}

/// Boundary cache files hold the maximal cone sequences only.
inline void save_boundary_cache(const std::string& path, const BoundaryCache& c) {
    write_text_file(path, detail::sequences_blob(c.sequences));
}

inline BoundaryCache load_boundary_cache(const std::string& path) {
    BoundaryCache c;
    c.sequences = detail::sequences_from_blob(detail::read_file(path));
    if (c.sequences.empty()) throw FanStoreError(path + ": empty boundary cache");
    c.k = c.sequences.front().k;
    c.n = c.sequences.front().n;
    return c;
}

}  // namespace dressian
