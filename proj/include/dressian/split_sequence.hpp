/**
 * Octahedral split sequences: one 2-bit code per octahedral 3-face of
 * Delta(k,n), the cone of Plücker vectors they describe, their binary
 * encoding, restriction to facets and the Sym(n) action.
 */
#pragma once

#include "dressian/cone.hpp"
#include "dressian/tropical.hpp"

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dressian {

class SplitSequenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Codes in canonical octahedron order: 0 means no split (all three pair sums
 * equal), t in {1,2,3} means pair sum t is the strict maximum.
 */
struct SplitSequence {
    int k = 0;
    int n = 0;
    std::vector<std::uint8_t> codes;

    SplitSequence() = default;
    SplitSequence(int k_, int n_) : k(k_), n(n_) {
        HypersimplexSpec spec(k_, n_);
        codes.assign(enumerate_octahedra(k_, n_).size(), 0);
    }
    SplitSequence(int k_, int n_, std::vector<std::uint8_t> c) : SplitSequence(k_, n_) {
        if (c.size() != codes.size()) throw SplitSequenceError("SplitSequence: wrong number of codes");
        for (auto x : c)
            if (x > 3) throw SplitSequenceError("SplitSequence: code out of range");
        codes = std::move(c);
    }
    std::size_t size() const { return codes.size(); }
    bool fully_split() const {
        for (auto c : codes)
            if (c == 0) return false;
        return true;
    }
    /// Codes as a string of digits, e.g. "1320".
    std::string to_string() const {
        std::string s;
        for (auto c : codes) s.push_back(static_cast<char>('0' + c));
        return s;
    }
    static SplitSequence from_string(int k, int n, const std::string& s) {
        std::vector<std::uint8_t> c;
        for (char ch : s) {
            if (ch < '0' || ch > '3') throw SplitSequenceError("SplitSequence: invalid code character");
            c.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        return SplitSequence(k, n, std::move(c));
    }
    friend bool operator==(const SplitSequence&, const SplitSequence&) = default;
    friend auto operator<=>(const SplitSequence& a, const SplitSequence& b) {
        if (auto c = a.k <=> b.k; c != 0) return c;
        if (auto c = a.n <=> b.n; c != 0) return c;
        return a.codes <=> b.codes;
    }
};

inline constexpr char kSplitSequenceMagic[8] = {'D', 'R', 'S', 'N', 'F', 'A', 'N', '1'};

/// Packed codes: 2 bits each, little-endian within each byte.
inline std::vector<std::uint8_t> pack_codes(const std::vector<std::uint8_t>& codes) {
    std::vector<std::uint8_t> out((2 * codes.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < codes.size(); ++i) out[i / 4] |= static_cast<std::uint8_t>(codes[i] << (2 * (i % 4)));
    return out;
}

inline std::vector<std::uint8_t> unpack_codes(const std::uint8_t* bytes, std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = (bytes[i / 4] >> (2 * (i % 4))) & 3u;
    return out;
}

/// Header (magic, k u16, n u16, count u32) followed by the packed codes.
inline void write_binary(std::ostream& out, const SplitSequence& s) {
    out.write(kSplitSequenceMagic, 8);
    auto put = [&out](std::uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    put(static_cast<std::uint64_t>(s.k), 2);
    put(static_cast<std::uint64_t>(s.n), 2);
    put(s.codes.size(), 4);
    auto packed = pack_codes(s.codes);
    out.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
}

inline SplitSequence read_binary(std::istream& in) {
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kSplitSequenceMagic, 8) != 0)
        throw SplitSequenceError("read_binary: bad magic");
    auto get = [&in](int bytes) {
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i) {
            int c = in.get();
            if (c == EOF) throw SplitSequenceError("read_binary: truncated header");
            v |= static_cast<std::uint64_t>(c) << (8 * i);
        }
        return v;
    };
    int k = static_cast<int>(get(2));
    int n = static_cast<int>(get(2));
    std::size_t count = get(4);
    std::vector<std::uint8_t> packed((2 * count + 7) / 8);
    if (!in.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size())))
        throw SplitSequenceError("read_binary: truncated codes");
    return SplitSequence(k, n, unpack_codes(packed.data(), count));
}

/// Per-octahedron split codes of a tropical Plücker vector.
inline SplitSequence splits_of_vector(const PluckerVector& pi) {
    SplitSequence s(pi.k(), pi.n());
    auto octs = enumerate_octahedra(pi.k(), pi.n());
    for (std::size_t i = 0; i < octs.size(); ++i) s.codes[i] = static_cast<std::uint8_t>(octahedral_split_of(pi, octs[i]));
    return s;
}

/// Linear form pi -> (pair sum a) - (pair sum b) on one octahedron.
inline Vec pair_sum_difference(const OctahedronId& o, int a, int b, int n) {
    const int k = o.rho.size() + 2;
    Vec f(static_cast<std::size_t>(binomial(n, k)));
    auto [a1, a2] = o.opposite_pair(a);
    auto [b1, b2] = o.opposite_pair(b);
    f[subset_rank(a1, n)] += 1;
    f[subset_rank(a2, n)] += 1;
    f[subset_rank(b1, n)] -= 1;
    f[subset_rank(b2, n)] -= 1;
    return f;
}

struct ConeFromSequenceOptions {
    /// Treat code 0 as "all three pair sums equal" instead of "no constraint".
    bool zero_means_unsplit = false;
};

/**
 * The closed cone of Plücker vectors compatible with the sequence. Code t
 * contributes the equality of the two other pair sums and the inequality
 * (sum t) >= (either other sum).
 */
inline PolyhedralCone cone_from_sequence(const SplitSequence& seq, ConeFromSequenceOptions opt = {}) {
    PolyhedralCone c;
    c.ambient_dim = static_cast<std::size_t>(binomial(seq.n, seq.k));
    auto octs = enumerate_octahedra(seq.k, seq.n);
    for (std::size_t i = 0; i < octs.size(); ++i) {
        int t = seq.codes[i];
        if (t == 0) {
            if (opt.zero_means_unsplit) {
                c.equalities.push_back(pair_sum_difference(octs[i], 1, 2, seq.n));
                c.equalities.push_back(pair_sum_difference(octs[i], 1, 3, seq.n));
            }
            continue;
        }
        int a = t % 3 + 1, b = (t + 1) % 3 + 1;
        c.equalities.push_back(pair_sum_difference(octs[i], a, b, seq.n));
        c.inequalities.push_back(pair_sum_difference(octs[i], t, a, seq.n));
    }
    return c;
}

/// Restriction to a facet of Delta(k,n) through the facet's octahedron injection.
inline SplitSequence induced_boundary_sequence(const SplitSequence& seq, const FacetMap& f) {
    if (f.octahedron_map.size() != seq.size()) throw SplitSequenceError("induced_boundary_sequence: facet map mismatch");
    if (f.simplex_facet) return SplitSequence{};
    SplitSequence out(f.target_k, f.target_n);
    for (std::size_t o = 0; o < seq.size(); ++o)
        if (f.octahedron_map[o] >= 0) out.codes[f.octahedron_map[o]] = seq.codes[o];
    return out;
}

/// Restriction of a vector on Delta(k,n) to a facet, relabeled as a vector on the facet.
inline PluckerVector restrict_to_facet(const PluckerVector& pi, const FacetMap& f) {
    PluckerVector out(f.target_k, f.target_n);
    for (std::size_t s = 0; s < f.subset_map.size(); ++s)
        if (f.subset_map[s] >= 0) out[f.subset_map[s]] = pi[s];
    return out;
}

/**
 * The Sym(n) action on octahedra and split labels, precomputed per
 * permutation as (target octahedron, label map).
 */
class OctahedronAction {
public:
    OctahedronAction(int k, int n) : k_(k), n_(n), index_(k, n) {}

    struct Image {
        std::vector<int> target;                 ///< octahedron o goes to target[o]
        std::vector<std::array<std::uint8_t, 4>> label;  ///< label[o][t] is the image of split t
    };
    Image image(const Permutation& p) const {
        Image img;
        const auto& octs = index_.octahedra();
        img.target.resize(octs.size());
        img.label.resize(octs.size());
        for (std::size_t o = 0; o < octs.size(); ++o) {
            img.target[o] = index_.index_of(apply_perm(p, octs[o]));
            img.label[o][0] = 0;
            for (int t = 1; t <= 3; ++t) img.label[o][t] = static_cast<std::uint8_t>(apply_perm_to_split(p, octs[o], t));
        }
        return img;
    }
    static std::vector<std::uint8_t> apply(const Image& img, const std::vector<std::uint8_t>& codes) {
        std::vector<std::uint8_t> out(codes.size());
        for (std::size_t o = 0; o < codes.size(); ++o) out[img.target[o]] = img.label[o][codes[o]];
        return out;
    }
    int k() const { return k_; }
    int n() const { return n_; }
    const OctahedronIndex& index() const { return index_; }

private:
    int k_, n_;
    OctahedronIndex index_;
};

inline SplitSequence apply_perm(const Permutation& p, const SplitSequence& seq) {
    OctahedronAction act(seq.k, seq.n);
    return SplitSequence(seq.k, seq.n, OctahedronAction::apply(act.image(p), seq.codes));
}

struct OrbitRep {
    SplitSequence rep;
    std::int64_t orbit_size = 1;
};

/// Lexicographically smallest image under Sym(n) together with the orbit size n!/|stabilizer|.
inline OrbitRep lex_min_orbit_rep(const SplitSequence& seq) {
    OctahedronAction act(seq.k, seq.n);
    OrbitRep r{seq, 0};
    std::int64_t stabilizer = 0;
    for_each_permutation(seq.n, [&](const Permutation& p) {
        auto img = OctahedronAction::apply(act.image(p), seq.codes);
        if (img == seq.codes) ++stabilizer;
        if (img < r.rep.codes) r.rep.codes = std::move(img);
    });
    r.orbit_size = factorial(seq.n) / stabilizer;
    return r;
}

/**
 * Number of splits of Delta(k,n):
 * (k-1)(2^(n-1) - (n+1)) - sum_{i=2}^{k-1} (k-i) C(n,i).
 */
inline std::int64_t split_count_formula(int k, int n) {
    if (k < 1 || n < 2 * k) throw std::invalid_argument("split_count_formula: requires 1 <= k and n >= 2k");
    if (n > 62) throw std::invalid_argument("split_count_formula: n too large");
    std::int64_t total = (k - 1) * ((std::int64_t{1} << (n - 1)) - (n + 1));
    for (int i = 2; i <= k - 1; ++i) total -= (k - i) * binomial(n, i);
    return total;
}

}  // namespace dressian
