/**
 * Tropical (min-plus) determinants, the maps tau and Phi between point
 * configurations and tropical Pluecker vectors, and the 3-term check.
 */
#pragma once

#include "dressian/combinat.hpp"
#include "dressian/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dressian {

/// A rational number or +infinity. Infinity absorbs under + and is neutral for min.
class Trop {
public:
    Trop() = default;
    Trop(const Rational& v) : finite_(true), value_(v) {}
    Trop(int v) : finite_(true), value_(v) {}
    static Trop infinity() {
        Trop t;
        t.finite_ = false;
        return t;
    }
    bool is_inf() const { return !finite_; }
    const Rational& value() const {
        if (!finite_) throw std::domain_error("Trop: value of infinity");
        return value_;
    }
    friend Trop operator+(const Trop& a, const Trop& b) {
        if (a.is_inf() || b.is_inf()) return infinity();
        return Trop(a.value_ + b.value_);
    }
    friend Trop tmin(const Trop& a, const Trop& b) {
        if (a.is_inf()) return b;
        if (b.is_inf()) return a;
        return a.value_ <= b.value_ ? a : b;
    }
    friend bool operator==(const Trop& a, const Trop& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    std::string to_string() const { return finite_ ? value_.to_string() : "inf"; }

private:
    bool finite_ = true;
    Rational value_;
};

using TropicalMatrix = std::vector<std::vector<Trop>>;

/**
 * Tropical determinant: min over permutations w of sum_i a[i][w(i)], i.e. the
 * optimum of the assignment problem. Dynamic programming over column subsets.
 */
inline Trop tdet(const TropicalMatrix& a) {
    const std::size_t k = a.size();
    for (const auto& row : a)
        if (row.size() != k) throw std::invalid_argument("tdet: matrix is not square");
    if (k == 0) return Trop(0);
    if (k > 20) throw std::invalid_argument("tdet: matrix too large");
    std::vector<Trop> best(std::size_t{1} << k, Trop::infinity());
    best[0] = Trop(0);
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (best[mask].is_inf()) continue;
        const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
        if (row == k) continue;
        for (std::size_t c = 0; c < k; ++c) {
            if (mask & (1u << c)) continue;
            auto& slot = best[mask | (1u << c)];
            slot = tmin(slot, best[mask] + a[row][c]);
        }
    }
    return best[(1u << k) - 1];
}

/// n - k labelled points in the tropical torus T^(k-1): column j of the k x (n-k) matrix is point j.
struct PointConfig {
    int k = 0;
    int n = 0;
    Matrix v;

    PointConfig() = default;
    PointConfig(int k_, int n_, Matrix v_) : k(k_), n(n_), v(std::move(v_)) {
        HypersimplexSpec spec(k, n);
        if (static_cast<int>(v.size()) != k) throw std::invalid_argument("PointConfig: need k rows");
        for (const auto& row : v)
            if (static_cast<int>(row.size()) != n - k) throw std::invalid_argument("PointConfig: need n-k columns");
    }
    /// Builds from a k x m matrix, with n = k + m.
    static PointConfig from_matrix(const Matrix& m) {
        if (m.empty() || m[0].empty()) throw std::invalid_argument("PointConfig: empty matrix");
        return PointConfig(static_cast<int>(m.size()), static_cast<int>(m.size() + m[0].size()), m);
    }
    int points() const { return n - k; }
    friend bool operator==(const PointConfig&, const PointConfig&) = default;
};

/// A finite vector indexed by the k-subsets of [n] in lexicographic order.
class PluckerVector {
public:
    PluckerVector() = default;
    PluckerVector(int k, int n) : k_(k), n_(n) {
        HypersimplexSpec spec(k, n);
        values_.assign(static_cast<std::size_t>(binomial(n, k)), Rational(0));
    }
    PluckerVector(int k, int n, Vec values) : PluckerVector(k, n) {
        if (values.size() != values_.size()) throw std::invalid_argument("PluckerVector: wrong number of values");
        values_ = std::move(values);
    }
    int k() const { return k_; }
    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }
    const Vec& values() const { return values_; }
    Vec& values() { return values_; }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    Rational& operator[](std::size_t i) { return values_[i]; }
    const Rational& at(KSubset s) const { return values_[index(s)]; }
    Rational& at(KSubset s) { return values_[index(s)]; }
    friend bool operator==(const PluckerVector&, const PluckerVector&) = default;

private:
    std::size_t index(KSubset s) const {
        if (s.size() != k_ || (n_ < 32 && (s.bits() >> n_) != 0))
            throw std::invalid_argument("PluckerVector: subset " + s.label() + " outside Delta(k,n)");
        return static_cast<std::size_t>(subset_rank(s, n_));
    }
    int k_ = 0, n_ = 0;
    Vec values_;
};

/// (p . pi)(p(S)) = pi(S).
inline PluckerVector apply_perm(const Permutation& p, const PluckerVector& pi) {
    if (p.size() != pi.n()) throw std::invalid_argument("apply_perm: permutation size mismatch");
    PluckerVector out(pi.k(), pi.n());
    auto subs = enumerate_ksubsets(pi.n(), pi.k());
    for (std::size_t i = 0; i < subs.size(); ++i) out.at(apply_perm(p, subs[i])) = pi[i];
    return out;
}

/// The augmented matrix (E_k | V) with the tropical identity in the first k columns.
inline TropicalMatrix augmented_matrix(const PointConfig& cfg) {
    TropicalMatrix m(cfg.k, std::vector<Trop>(cfg.n, Trop::infinity()));
    for (int i = 0; i < cfg.k; ++i) {
        m[i][i] = Trop(0);
        for (int j = 0; j < cfg.points(); ++j) m[i][cfg.k + j] = cfg.v[i][j];
    }
    return m;
}

/// tau_V(sigma) = tdet of the columns sigma of (E_k | V).
inline PluckerVector tau(const PointConfig& cfg) {
    TropicalMatrix aug = augmented_matrix(cfg);
    PluckerVector out(cfg.k, cfg.n);
    auto subs = enumerate_ksubsets(cfg.n, cfg.k);
    for (std::size_t s = 0; s < subs.size(); ++s) {
        TropicalMatrix sub(cfg.k);
        for (int i = 0; i < cfg.k; ++i)
            for (int c : subs[s].elements()) sub[i].push_back(aug[i][c - 1]);
        out[s] = tdet(sub).value();
    }
    return out;
}

/// tau relative to the vertex e_sigma: sigma takes the role of [k] via the order-preserving relabeling.
inline PluckerVector tau_at_vertex(const PointConfig& cfg, KSubset sigma) {
    if (sigma.size() != cfg.k) throw std::invalid_argument("tau_at_vertex: sigma must have k elements");
    return apply_perm(vertex_relabeling(sigma, cfg.n), tau(cfg));
}

/// Phi(pi)_{ij} = pi(([k] - {i}) + {j + k}).
inline PointConfig phi(const PluckerVector& pi) {
    const int k = pi.k(), n = pi.n();
    Matrix v(k, Vec(n - k));
    KSubset base(k == 32 ? ~0u : ((1u << k) - 1));
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= n - k; ++j) v[i - 1][j - 1] = pi.at(base.without(i).with(j + k));
    return PointConfig(k, n, std::move(v));
}

inline PointConfig phi_at_vertex(const PluckerVector& pi, KSubset sigma) {
    if (sigma.size() != pi.k()) throw std::invalid_argument("phi_at_vertex: sigma must have k elements");
    return phi(apply_perm(vertex_relabeling(sigma, pi.n()).inverse(), pi));
}

/// The three opposite-pair sums of pi on an octahedron, in split-label order.
inline std::array<Rational, 3> pair_sums(const PluckerVector& pi, const OctahedronId& o) {
    std::array<Rational, 3> s;
    for (int t = 1; t <= 3; ++t) {
        auto [a, b] = o.opposite_pair(t);
        s[t - 1] = pi.at(a) + pi.at(b);
    }
    return s;
}

/// 0 if all three sums agree; t if sum t is the strict maximum over the other two (equal) sums; -1 if the minimum is attained once.
inline int split_code_of_sums(const std::array<Rational, 3>& s) {
    if (s[0] == s[1] && s[1] == s[2]) return 0;
    for (int t = 0; t < 3; ++t) {
        const auto& a = s[(t + 1) % 3];
        const auto& b = s[(t + 2) % 3];
        if (a == b && s[t] > a) return t + 1;
    }
    return -1;
}

class PluckerViolation : public std::runtime_error {
public:
    PluckerViolation(const OctahedronId& o, const std::string& what) : std::runtime_error(what), octahedron(o) {}
    OctahedronId octahedron;
};

/// Indices (canonical order) of octahedra on which the minimum of the three pair sums is attained only once.
inline std::vector<int> check_plucker(const PluckerVector& pi) {
    std::vector<int> bad;
    auto octs = enumerate_octahedra(pi.k(), pi.n());
    for (std::size_t i = 0; i < octs.size(); ++i)
        if (split_code_of_sums(pair_sums(pi, octs[i])) < 0) bad.push_back(static_cast<int>(i));
    return bad;
}

/// 0 (unsplit) or the split label 1..3 induced by pi on the octahedron.
inline int octahedral_split_of(const PluckerVector& pi, const OctahedronId& o) {
    int c = split_code_of_sums(pair_sums(pi, o));
    if (c < 0)
        throw PluckerViolation(o, "3-term relation violated on octahedron rho=" + o.rho.label() + " quad=" + o.quad.label());
    return c;
}

}  // namespace dressian
