#include "dressian/tropical.hpp"
#include "support/seed.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dressian;

namespace {

Trop brute_tdet(const TropicalMatrix& a) {
    const int k = static_cast<int>(a.size());
    std::vector<int> w(k);
    std::iota(w.begin(), w.end(), 0);
    Trop best = Trop::infinity();
    do {
        Trop s(0);
        for (int i = 0; i < k; ++i) s = s + a[i][w[i]];
        best = tmin(best, s);
    } while (std::next_permutation(w.begin(), w.end()));
    return best;
}

PointConfig random_config(std::mt19937& rng, int k, int n, bool fractional) {
    Matrix v(k, Vec(n - k));
    for (auto& row : v)
        for (auto& x : row) x = fractional ? Rational(static_cast<int>(rng() % 41) - 20, 1 + static_cast<int>(rng() % 4))
                                           : Rational(static_cast<int>(rng() % 7) - 3);
    return PointConfig(k, n, v);
}

Vec ints(std::initializer_list<int> xs) {
    Vec v;
    for (int x : xs) v.push_back(x);
    return v;
}

}  // namespace

TEST(Tdet, SmallCases) {
    TropicalMatrix e3(3, std::vector<Trop>(3, Trop::infinity()));
    for (int i = 0; i < 3; ++i) e3[i][i] = 0;
    EXPECT_EQ(tdet(e3), Trop(0));
    EXPECT_EQ(tdet({{1, 0}, {0, 1}}), Trop(0));
    TropicalMatrix row_inf{{Trop::infinity(), Trop::infinity()}, {0, 1}};
    EXPECT_TRUE(tdet(row_inf).is_inf());
    EXPECT_THROW(tdet({{1, 2}}), std::invalid_argument);
}

TEST(Tdet, MatchesPermutationBruteForce) {
    std::mt19937 rng(testdata::test_seed(11));
    for (int iter = 0; iter < 300; ++iter) {
        const int k = 1 + static_cast<int>(rng() % 6);
        TropicalMatrix a(k, std::vector<Trop>(k));
        for (auto& row : a)
            for (auto& x : row) x = (rng() % 4 == 0) ? Trop::infinity() : Trop(Rational(static_cast<int>(rng() % 19) - 9, 1 + static_cast<int>(rng() % 3)));
        ASSERT_EQ(tdet(a), brute_tdet(a));
    }
}

// V = [[1,0],[0,1]] and W = [[0,1],[1,0]]. Values follow from the definition of tau (hand-evaluated
// tropical determinants of the columns of (E_2|V)); the two vectors quoted alongside these matrices in the
// literature are the same pair with V and W exchanged, which would contradict Phi(tau_V) = V.
TEST(Tau, TwoByTwoExamples) {
    PointConfig v(2, 4, {{1, 0}, {0, 1}});
    PointConfig w(2, 4, {{0, 1}, {1, 0}});
    PointConfig vw(2, 4, {{1, 1}, {1, 1}});
    EXPECT_EQ(tau(v).values(), ints({0, 0, 1, 1, 0, 0}));
    EXPECT_EQ(tau(w).values(), ints({0, 1, 0, 0, 1, 0}));
    EXPECT_EQ(tau(vw).values(), ints({0, 1, 1, 1, 1, 2}));
    EXPECT_NE(tau(vw).values(), tau(v).values() + tau(w).values());
    EXPECT_EQ(phi(tau(v)), v);
    EXPECT_EQ(phi(tau(w)), w);
    EXPECT_EQ(phi(PluckerVector(2, 4, ints({0, 1, 0, 0, 1, 0}))), w);
}

TEST(Tau, PhiInvertsTau) {
    std::mt19937 rng(testdata::test_seed(42));
    for (int iter = 0; iter < 100; ++iter) {
        const int k = 2 + static_cast<int>(rng() % 3);
        const int n = k + 2 + static_cast<int>(rng() % (9 - k - 1));
        PointConfig cfg = random_config(rng, k, n, true);
        PluckerVector t = tau(cfg);
        ASSERT_EQ(phi(t), cfg);
        ASSERT_TRUE(check_plucker(t).empty());
    }
    // Exhaustive over a grid of small integer 2x2 and 2x3 matrices.
    for (int code = 0; code < 81; ++code) {
        int c = code;
        Matrix m(2, Vec(2));
        for (auto& row : m)
            for (auto& x : row) {
                x = c % 3 - 1;
                c /= 3;
            }
        PointConfig cfg(2, 4, m);
        ASSERT_EQ(phi(tau(cfg)), cfg);
    }
}

TEST(Tau, PhiIsLinear) {
    std::mt19937 rng(testdata::test_seed(4));
    for (int iter = 0; iter < 20; ++iter) {
        PluckerVector a(3, 7), b(3, 7);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = static_cast<int>(rng() % 9);
            b[i] = Rational(static_cast<int>(rng() % 9), 2);
        }
        PluckerVector s(3, 7, a.values() + b.values());
        auto pa = phi(a), pb = phi(b), ps = phi(s);
        for (int i = 0; i < 3; ++i) ASSERT_EQ(ps.v[i], pa.v[i] + pb.v[i]);
    }
}

TEST(Tau, AtVertex) {
    std::mt19937 rng(testdata::test_seed(6));
    for (int iter = 0; iter < 30; ++iter) {
        PointConfig cfg = random_config(rng, 3, 7, false);
        KSubset base = KSubset::from_label("123");
        EXPECT_EQ(tau_at_vertex(cfg, base), tau(cfg));
        for (auto sigma : enumerate_ksubsets(7, 3)) {
            auto t = tau_at_vertex(cfg, sigma);
            ASSERT_TRUE(check_plucker(t).empty());
            // sigma plays the role of [k]: Phi at sigma recovers V.
            ASSERT_EQ(phi_at_vertex(t, sigma), cfg);
            ASSERT_TRUE(t.at(sigma).is_zero());
        }
        // Relabel-then-evaluate equals evaluate-then-permute.
        std::vector<int> img(7);
        std::iota(img.begin(), img.end(), 1);
        std::shuffle(img.begin(), img.end(), rng);
        Permutation p(img);
        KSubset sigma = subset_unrank(static_cast<std::int64_t>(rng() % 35), 7, 3);
        KSubset psigma = apply_perm(p, sigma);
        // V' is the configuration read off from apply_perm(p, tau^sigma) at p(sigma).
        PluckerVector moved = apply_perm(p, tau_at_vertex(cfg, sigma));
        PointConfig v2 = phi_at_vertex(moved, psigma);
        ASSERT_EQ(tau_at_vertex(v2, psigma), moved);
    }
}

TEST(Plucker, ThreeTermCheck) {
    PluckerVector ok(2, 4, ints({0, 0, 0, 0, 0, 1}));
    EXPECT_TRUE(check_plucker(ok).empty());
    PluckerVector bad(2, 4, ints({0, 0, 0, 0, 0, -1}));
    EXPECT_EQ(check_plucker(bad), std::vector<int>{0});
    OctahedronId o = enumerate_octahedra(2, 4)[0];
    EXPECT_THROW(octahedral_split_of(bad, o), PluckerViolation);

    PluckerVector zero(3, 6);
    for (const auto& oc : enumerate_octahedra(3, 6)) EXPECT_EQ(octahedral_split_of(zero, oc), 0);

    // (0,1,0,0,1,0): sums 0, 2, 0, so the pair (13,24) is the strict maximum.
    EXPECT_EQ(octahedral_split_of(PluckerVector(2, 4, ints({0, 1, 0, 0, 1, 0})), o), 2);
    // (0,0,1,1,0,0): the pair (14,23) is the strict maximum.
    EXPECT_EQ(octahedral_split_of(PluckerVector(2, 4, ints({0, 0, 1, 1, 0, 0})), o), 3);
}

TEST(Plucker, ZeroOneRayVector) {
    const char* zeros[] = {"123", "124", "126", "127", "128", "134", "136", "137", "138", "234",
                           "235", "236", "237", "238", "245", "247", "248", "256", "257", "258",
                           "267", "268", "345", "347", "348", "356", "357", "358", "367", "368"};
    PluckerVector pi(3, 8);
    for (auto& x : pi.values()) x = 1;
    for (auto z : zeros) pi.at(KSubset::from_label(z)) = 0;
    EXPECT_TRUE(check_plucker(pi).empty());
}

TEST(Plucker, PermutationActionIsGroupAction) {
    std::mt19937 rng(testdata::test_seed(10));
    PointConfig cfg = random_config(rng, 3, 6, false);
    PluckerVector t = tau(cfg);
    EXPECT_EQ(apply_perm(Permutation::identity(6), t), t);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<int> a(6), b(6);
        std::iota(a.begin(), a.end(), 1);
        std::iota(b.begin(), b.end(), 1);
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        Permutation p(a), q(b);
        ASSERT_EQ(apply_perm(p * q, t), apply_perm(p, apply_perm(q, t)));
        ASSERT_TRUE(check_plucker(apply_perm(p, t)).empty());
        // Splits transform with the octahedron action.
        auto pt = apply_perm(p, t);
        for (const auto& o : enumerate_octahedra(3, 6))
            ASSERT_EQ(octahedral_split_of(pt, apply_perm(p, o)), apply_perm_to_split(p, o, octahedral_split_of(t, o)));
    }
}
