/**
 * Index arithmetic on the hypersimplex Delta(k,n): k-subsets of [n] = {1..n},
 * their lexicographic ranks, edges, octahedral 3-faces, facets, and the action
 * of Sym(n).
 *
 * Elements are 1-based everywhere in the public interface. A subset is stored
 * as a bit pattern where element e occupies bit e-1.
 */
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dressian {

inline constexpr int kMaxGroundSet = 20;

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct HypersimplexSpec {
    int k = 0;
    int n = 0;

    HypersimplexSpec() = default;
    HypersimplexSpec(int k_, int n_) : k(k_), n(n_) {
        if (!(n > k && k > 0)) throw std::invalid_argument("HypersimplexSpec: need n > k > 0");
        if (n > kMaxGroundSet) throw std::invalid_argument("HypersimplexSpec: n too large");
    }
    friend bool operator==(const HypersimplexSpec&, const HypersimplexSpec&) = default;
};

class KSubset {
public:
    KSubset() = default;
    explicit KSubset(std::uint32_t bits) : bits_(bits) {}

    static KSubset from_elements(const std::vector<int>& elems, int n) {
        std::uint32_t b = 0;
        for (int e : elems) {
            if (e < 1 || e > n) throw std::invalid_argument("KSubset: element out of range");
            if (b & (1u << (e - 1))) throw std::invalid_argument("KSubset: repeated element");
            b |= 1u << (e - 1);
        }
        return KSubset(b);
    }
    /// Parses compact labels such as "123" (only for n <= 9).
    static KSubset from_label(const std::string& label) {
        std::uint32_t b = 0;
        for (char c : label) {
            if (c < '1' || c > '9') throw std::invalid_argument("KSubset: bad label " + label);
            b |= 1u << (c - '1');
        }
        return KSubset(b);
    }

    std::uint32_t bits() const { return bits_; }
    int size() const { return std::popcount(bits_); }
    bool contains(int e) const { return (bits_ >> (e - 1)) & 1u; }
    bool empty() const { return bits_ == 0; }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }
    std::string label() const {
        std::string s;
        for (int e : elements()) s += std::to_string(e);
        return s;
    }

    KSubset with(int e) const { return KSubset(bits_ | (1u << (e - 1))); }
    KSubset without(int e) const { return KSubset(bits_ & ~(1u << (e - 1))); }
    KSubset operator|(KSubset o) const { return KSubset(bits_ | o.bits_); }
    KSubset operator&(KSubset o) const { return KSubset(bits_ & o.bits_); }
    int symmetric_difference_size(KSubset o) const { return std::popcount(bits_ ^ o.bits_); }

    friend bool operator==(KSubset a, KSubset b) { return a.bits_ == b.bits_; }
    /// Lexicographic order of the sorted element lists.
    friend bool operator<(KSubset a, KSubset b) {
        std::uint32_t x = a.bits_, y = b.bits_;
        while (x && y) {
            int ex = std::countr_zero(x), ey = std::countr_zero(y);
            if (ex != ey) return ex < ey;
            x &= x - 1;
            y &= y - 1;
        }
        return !x && y;
    }

private:
    std::uint32_t bits_ = 0;
};

/// Lexicographic rank of a k-subset of [n].
inline std::int64_t subset_rank(KSubset s, int n) {
    const int k = s.size();
    std::int64_t r = 0;
    int prev = 0, i = 0;
    for (int c : s.elements()) {
        ++i;
        for (int j = prev + 1; j < c; ++j) r += binomial(n - j, k - i);
        prev = c;
    }
    return r;
}

inline KSubset subset_unrank(std::int64_t r, int n, int k) {
    if (r < 0 || r >= binomial(n, k)) throw std::out_of_range("subset_unrank: rank out of range");
    std::uint32_t b = 0;
    int c = 1;
    for (int i = 1; i <= k; ++i) {
        while (true) {
            std::int64_t block = binomial(n - c, k - i);
            if (r < block) break;
            r -= block;
            ++c;
        }
        b |= 1u << (c - 1);
        ++c;
    }
    return KSubset(b);
}

inline std::vector<KSubset> enumerate_ksubsets(int n, int k) {
    if (n < 0 || k < 0 || k > n || n > kMaxGroundSet)
        throw std::invalid_argument("enumerate_ksubsets: need n >= k >= 0");
    std::vector<KSubset> out;
    out.reserve(static_cast<std::size_t>(binomial(n, k)));
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 1);
    while (true) {
        out.push_back(KSubset::from_elements(c, n));
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i + 1) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

/// Dense lookup from bit pattern to lexicographic index for a fixed (n, k).
class SubsetIndex {
public:
    SubsetIndex() = default;
    SubsetIndex(int n, int k) : n_(n), k_(k), subsets_(enumerate_ksubsets(n, k)), index_(std::size_t{1} << n, -1) {
        for (std::size_t i = 0; i < subsets_.size(); ++i) index_[subsets_[i].bits()] = static_cast<int>(i);
    }
    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t size() const { return subsets_.size(); }
    const std::vector<KSubset>& subsets() const { return subsets_; }
    KSubset operator[](std::size_t i) const { return subsets_[i]; }
    int index_of(KSubset s) const {
        if (s.bits() >= index_.size()) return -1;
        return index_[s.bits()];
    }

private:
    int n_ = 0, k_ = 0;
    std::vector<KSubset> subsets_;
    std::vector<int> index_;
};

inline std::vector<std::pair<KSubset, KSubset>> hypersimplex_edges(int k, int n) {
    HypersimplexSpec spec(k, n);
    std::vector<std::pair<KSubset, KSubset>> out;
    const auto subsets = enumerate_ksubsets(n, k);
    for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b = a + 1; b < subsets.size(); ++b)
            if (subsets[a].symmetric_difference_size(subsets[b]) == 2) out.emplace_back(subsets[a], subsets[b]);
    return out;
}

/**
 * An octahedral 3-face of Delta(k,n): the six k-subsets rho + {two of quad}.
 * Split labels 1, 2, 3 name the opposite pairs (rho ij, rho lm), (rho il, rho jm),
 * (rho im, rho jl) where quad = {i < j < l < m}.
 */
struct OctahedronId {
    KSubset rho;
    KSubset quad;

    std::array<int, 4> quad_elements() const {
        auto e = quad.elements();
        return {e[0], e[1], e[2], e[3]};
    }
    /// The six vertices in the order rho ij, rho il, rho im, rho jl, rho jm, rho lm.
    std::array<KSubset, 6> vertices() const {
        auto [i, j, l, m] = quad_elements();
        return {rho.with(i).with(j), rho.with(i).with(l), rho.with(i).with(m),
                rho.with(j).with(l), rho.with(j).with(m), rho.with(l).with(m)};
    }
    /// Opposite pair for split label t in {1,2,3}.
    std::pair<KSubset, KSubset> opposite_pair(int t) const {
        auto v = vertices();
        switch (t) {
            case 1: return {v[0], v[5]};
            case 2: return {v[1], v[4]};
            case 3: return {v[2], v[3]};
        }
        throw std::invalid_argument("OctahedronId: split label must be 1, 2 or 3");
    }
    friend bool operator==(const OctahedronId&, const OctahedronId&) = default;
};

inline std::array<KSubset, 6> octahedron_vertices(const OctahedronId& oct) { return oct.vertices(); }

inline std::vector<OctahedronId> enumerate_octahedra(int k, int n) {
    std::vector<OctahedronId> out;
    if (k < 2 || n < k + 2) return out;
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (KSubset rho : enumerate_ksubsets(n, k - 2)) {
        std::vector<int> rest;
        for (int e = 1; e <= n; ++e)
            if (!rho.contains(e)) rest.push_back(e);
        for (KSubset q : enumerate_ksubsets(static_cast<int>(rest.size()), 4)) {
            std::uint32_t qb = 0;
            for (int idx : q.elements()) qb |= 1u << (rest[idx - 1] - 1);
            out.push_back({rho, KSubset(qb & full)});
        }
    }
    return out;
}

/// Dense lookup from (rho, quad) to canonical octahedron index.
class OctahedronIndex {
public:
    OctahedronIndex() = default;
    OctahedronIndex(int k, int n) : k_(k), n_(n), octahedra_(enumerate_octahedra(k, n)) {
        for (std::size_t i = 0; i < octahedra_.size(); ++i) lookup_[key(octahedra_[i])] = static_cast<int>(i);
    }
    int k() const { return k_; }
    int n() const { return n_; }
    std::size_t size() const { return octahedra_.size(); }
    const std::vector<OctahedronId>& octahedra() const { return octahedra_; }
    const OctahedronId& operator[](std::size_t i) const { return octahedra_[i]; }
    int index_of(const OctahedronId& o) const {
        auto it = lookup_.find(key(o));
        return it == lookup_.end() ? -1 : it->second;
    }

private:
    static std::uint64_t key(const OctahedronId& o) {
        return (static_cast<std::uint64_t>(o.rho.bits()) << 32) | o.quad.bits();
    }
    int k_ = 0, n_ = 0;
    std::vector<OctahedronId> octahedra_;
    std::unordered_map<std::uint64_t, int> lookup_;
};

/// Split label of the pairing {{a,b},{c,d}} of a 4-set, relative to its sorted order.
inline int split_label_of_pairing(KSubset quad, int a, int b) {
    auto e = quad.elements();
    int first = e[0];
    int partner;
    if (a == first) partner = b;
    else if (b == first) partner = a;
    else {
        // {a,b} is the pair not containing the minimum; its complement contains it.
        std::uint32_t rest = quad.bits() & ~((1u << (a - 1)) | (1u << (b - 1)));
        partner = std::countr_zero(rest & ~(1u << (first - 1))) + 1;
    }
    if (partner == e[1]) return 1;
    if (partner == e[2]) return 2;
    if (partner == e[3]) return 3;
    throw std::logic_error("split_label_of_pairing: not a pairing of quad");
}

/// A bijection of [n]. images()[i-1] is the image of element i.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        const int n = static_cast<int>(img_.size());
        std::vector<bool> seen(n + 1, false);
        for (int v : img_) {
            if (v < 1 || v > n || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
            seen[v] = true;
        }
    }
    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }
    static Permutation transposition(int n, int a, int b) {
        auto p = identity(n);
        std::swap(p.img_[a - 1], p.img_[b - 1]);
        return p;
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int e) const { return img_[e - 1]; }
    const std::vector<int>& images() const { return img_; }

    /// (p * q)(x) = p(q(x)).
    friend Permutation operator*(const Permutation& p, const Permutation& q) {
        if (p.size() != q.size()) throw std::invalid_argument("Permutation: size mismatch");
        std::vector<int> v(q.size());
        for (int i = 0; i < q.size(); ++i) v[i] = p.img_[q.img_[i] - 1];
        return Permutation(std::move(v));
    }
    Permutation inverse() const {
        std::vector<int> v(img_.size());
        for (int i = 0; i < size(); ++i) v[img_[i] - 1] = i + 1;
        return Permutation(std::move(v));
    }
    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> img_;
};

inline KSubset apply_perm(const Permutation& p, KSubset s) {
    std::uint32_t b = 0;
    for (std::uint32_t x = s.bits(); x; x &= x - 1) {
        int e = std::countr_zero(x) + 1;
        if (e > p.size()) throw std::invalid_argument("apply_perm: subset outside ground set");
        b |= 1u << (p(e) - 1);
    }
    return KSubset(b);
}

inline OctahedronId apply_perm(const Permutation& p, const OctahedronId& o) {
    return {apply_perm(p, o.rho), apply_perm(p, o.quad)};
}

/// Image of split label t of octahedron o under p, as a label of apply_perm(p, o).
inline int apply_perm_to_split(const Permutation& p, const OctahedronId& o, int t) {
    if (t == 0) return 0;
    auto q = o.quad_elements();
    int partner = q[t];
    return split_label_of_pairing(apply_perm(p, o.quad), p(q[0]), p(partner));
}

/// Calls f(perm) for each of the n! permutations of [n], in lexicographic order.
template <class F>
void for_each_permutation(int n, F&& f) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
        f(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
}

inline std::int64_t factorial(int n) {
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Order-preserving permutation sending [k] onto sigma and [k+1..n] onto the complement.
inline Permutation vertex_relabeling(KSubset sigma, int n) {
    std::vector<int> img;
    for (int e : sigma.elements()) img.push_back(e);
    for (int e = 1; e <= n; ++e)
        if (!sigma.contains(e)) img.push_back(e);
    return Permutation(std::move(img));
}

enum class FacetKind { deletion, contraction };

/**
 * A facet x_i = 0 (deletion, type Delta(k, n-1)) or x_i = 1 (contraction,
 * type Delta(k-1, n-1)) of Delta(k,n), with the induced relabeling of subsets
 * and octahedra. Indices of -1 mean "not on this facet".
 */
struct FacetMap {
    FacetKind kind = FacetKind::deletion;
    int element = 0;
    int target_k = 0;
    int target_n = 0;
    bool simplex_facet = false;
    std::vector<int> subset_map;
    std::vector<int> octahedron_map;
};

inline KSubset drop_element(KSubset s, int i) {
    std::uint32_t low = s.bits() & ((1u << (i - 1)) - 1);
    std::uint32_t high = (s.bits() >> i) << (i - 1);
    return KSubset(low | high);
}

inline std::vector<FacetMap> facet_maps(int k, int n) {
    HypersimplexSpec spec(k, n);
    SubsetIndex subsets(n, k);
    OctahedronIndex octs(k, n);
    std::vector<FacetMap> out;
    for (FacetKind kind : {FacetKind::deletion, FacetKind::contraction}) {
        for (int i = 1; i <= n; ++i) {
            FacetMap f;
            f.kind = kind;
            f.element = i;
            f.target_n = n - 1;
            f.target_k = kind == FacetKind::deletion ? k : k - 1;
            f.subset_map.assign(subsets.size(), -1);
            f.octahedron_map.assign(octs.size(), -1);
            const bool target_valid = f.target_k >= 0 && f.target_k <= f.target_n;
            if (target_valid) {
                SubsetIndex target(f.target_n, f.target_k);
                for (std::size_t s = 0; s < subsets.size(); ++s) {
                    KSubset sub = subsets[s];
                    bool on = kind == FacetKind::deletion ? !sub.contains(i) : sub.contains(i);
                    if (on) f.subset_map[s] = target.index_of(drop_element(sub.without(i), i));
                }
                OctahedronIndex target_octs(f.target_k, f.target_n);
                f.simplex_facet = target_octs.size() == 0;
                for (std::size_t o = 0; o < octs.size(); ++o) {
                    const auto& oc = octs[o];
                    bool on = kind == FacetKind::deletion ? !(oc.rho | oc.quad).contains(i) : oc.rho.contains(i);
                    if (on && !f.simplex_facet)
                        f.octahedron_map[o] =
                            target_octs.index_of({drop_element(oc.rho.without(i), i), drop_element(oc.quad, i)});
                }
            } else {
                f.simplex_facet = true;
            }
            out.push_back(std::move(f));
        }
    }
    return out;
}

/// Number of partitions of m into exactly k positive parts.
inline std::int64_t partition_count(int m, int k) {
    if (m < 1 || k < 1) throw std::invalid_argument("partition_count: need m >= 1, k >= 1");
    if (k > m) return 0;
    std::vector<std::vector<std::int64_t>> t(m + 1, std::vector<std::int64_t>(k + 1, 0));
    t[0][0] = 1;
    for (int mm = 1; mm <= m; ++mm)
        for (int kk = 1; kk <= std::min(mm, k); ++kk) t[mm][kk] = t[mm - 1][kk - 1] + t[mm - kk][kk];
    return t[m][k];
}

/// All partitions of m into exactly k positive parts, parts in non-increasing order.
inline std::vector<std::vector<int>> partitions_into(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int parts_left, int max_part) -> void {
        if (parts_left == 0) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        for (int p = std::min(max_part, remaining - (parts_left - 1)); p >= 1; --p) {
            if (p * parts_left < remaining) break;
            cur.push_back(p);
            self(self, remaining - p, parts_left - 1, p);
            cur.pop_back();
        }
    };
    rec(rec, m, k, m);
    return out;
}

}  // namespace dressian
