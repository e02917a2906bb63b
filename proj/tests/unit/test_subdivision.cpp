#include "dressian/tight_span.hpp"
#include "support/seed.hpp"
#include "dressian/tropical.hpp"
#include "support/finest_delta36.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace dressian;

namespace {

Matrix random_config(std::mt19937& rng, int k, int m, int hi) {
    std::uniform_int_distribution<int> d(0, hi);
    Matrix v(k, Vec(m));
    for (auto& row : v)
        for (auto& x : row) x = d(rng);
    return v;
}

Vec product_heights(const Matrix& v) {
    Vec h;
    for (const auto& row : v)
        for (const auto& x : row) h.push_back(x);
    return h;
}

Vec zeros(std::size_t n) { return Vec(n); }

/// The hexagon a..f with a=(1,0), b=(2,1), c=(2,2), d=(1,2), e=(0,1), f=(0,0).
Polytope hexagon() {
    return Polytope::points({{1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}, {0, 0}});
}

Subdivision hexagon_subdivision() {
    // b, d, f at height 0 and a, c, e at height 1.
    return regular_subdivision(hexagon(), {1, 0, 1, 0, 1, 0});
}

}  // namespace

TEST(Subdivision, FlatHeightsGiveTrivialSubdivision) {
    for (auto p : {Polytope::hypersimplex(2, 4), Polytope::hypersimplex(3, 6), Polytope::product(2, 5), Polytope::product(3, 6)}) {
        Subdivision s = regular_subdivision(p, zeros(p.vertex_count()));
        EXPECT_TRUE(s.is_trivial());
        EXPECT_EQ(s, Subdivision::trivial(p));
        TightSpan ts = tight_span(s);
        EXPECT_EQ(ts.elements.size(), 1u);
        EXPECT_EQ(ts.dim(), 0);
    }
}

TEST(Subdivision, SplitOfOctahedron) {
    PluckerVector t = tau(PointConfig::from_matrix({{1, 0}, {0, 1}}));
    Subdivision s = regular_subdivision(Polytope::hypersimplex(2, 4), t.values());
    EXPECT_EQ(s.spread(), 2u);
    validate_subdivision(s);
    TightSpan ts = tight_span(s);
    EXPECT_EQ(ts.f_vector(), (std::vector<int>{2, 1}));
    EXPECT_TRUE(is_coarsest(s));
    // Both halves of the octahedron are square pyramids with 5 vertices.
    for (const auto& c : s.cells) EXPECT_EQ(c.size(), 5u);
}

TEST(Subdivision, HexagonCells) {
    Subdivision s = hexagon_subdivision();
    // bdf, abf, bcd, def with a..f = 0..5.
    std::vector<Cell> expected{{0, 1, 5}, {1, 2, 3}, {1, 3, 5}, {3, 4, 5}};
    EXPECT_EQ(s.cells, expected);
    validate_subdivision(s);
    TightSpan ts = tight_span(s);
    // A star: the central triangle bdf joined to the three others.
    EXPECT_EQ(ts.f_vector(), (std::vector<int>{4, 3}));
    for (int e : ts.edges()) {
        const auto& c = ts.elements[e].cells;
        EXPECT_TRUE(std::find(c.begin(), c.end(), 2) != c.end());
    }
}

TEST(Subdivision, HexagonRestrictedToDiagonal) {
    Subdivision r = restrict_to_subpolytope(hexagon_subdivision(), {0, 2});
    ASSERT_EQ(r.polytope.custom.size(), 4u);
    EXPECT_EQ(r.polytope.custom[2], (Vec{Rational(4, 3), Rational(2, 3)}));
    EXPECT_EQ(r.polytope.custom[3], (Vec{Rational(5, 3), Rational(4, 3)}));
    std::vector<Cell> expected{{0, 2}, {1, 3}, {2, 3}};
    EXPECT_EQ(r.cells, expected);
    validate_subdivision(r);
    EXPECT_EQ(tight_span(r).f_vector(), (std::vector<int>{3, 2}));
}

TEST(Subdivision, RestrictionToWholePolytopeAndToACell) {
    std::mt19937 rng(testdata::test_seed(41));
    Polytope p = Polytope::product(3, 6);
    for (int trial = 0; trial < 5; ++trial) {
        Subdivision s = regular_subdivision(p, product_heights(random_config(rng, 3, 3, 5)));
        std::vector<int> all(p.vertex_count());
        std::iota(all.begin(), all.end(), 0);
        Subdivision whole = restrict_to_subpolytope(s, all);
        EXPECT_EQ(whole.cells, s.cells);
        Subdivision one = restrict_to_subpolytope(s, s.cells.front());
        EXPECT_TRUE(one.is_trivial());
        EXPECT_EQ(one.cells.front().size(), s.cells.front().size());
    }
}

TEST(Subdivision, ValidationRejectsOverlaps) {
    Polytope sq = Polytope::points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    EXPECT_NO_THROW(validate_subdivision(Subdivision(sq, {{0, 1, 2}, {1, 2, 3}})));
    EXPECT_THROW(validate_subdivision(Subdivision(sq, {{0, 1, 2}, {0, 1, 3}})), SubdivisionError);
    EXPECT_THROW(validate_subdivision(Subdivision(sq, {{0, 1, 2}})), SubdivisionError);
    EXPECT_THROW(validate_subdivision(Subdivision(sq, {{0, 1, 2, 3}, {1, 2, 3}})), SubdivisionError);
}

TEST(Subdivision, RandomRegularSubdivisionsAreValid) {
    std::mt19937 rng(testdata::test_seed(5));
    std::uniform_int_distribution<int> d(0, 3);
    for (auto p : {Polytope::hypersimplex(2, 5), Polytope::hypersimplex(3, 6), Polytope::product(3, 6), Polytope::product(2, 6)}) {
        for (int trial = 0; trial < 6; ++trial) {
            Vec h(p.vertex_count());
            for (auto& x : h) x = d(rng);
            Subdivision s = regular_subdivision(p, h);
            EXPECT_NO_THROW(validate_subdivision(s));
            EXPECT_TRUE(refines(s, Subdivision::trivial(p)));
            EXPECT_TRUE(is_regular(s));
        }
    }
}

TEST(Subdivision, FinestSubdivisionsOfDelta36) {
    const auto subs = enumerate_ksubsets(6, 3);
    for (const auto& entry : testdata::finest_delta36()) {
        Matrix v(3, Vec(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v[j][i] = entry.rows[i][j];
        Subdivision s = regular_subdivision(Polytope::hypersimplex(3, 6), tau(PointConfig::from_matrix(v)).values());
        std::set<std::set<std::string>> got, want;
        for (const auto& c : s.cells) {
            std::set<std::string> labels;
            for (int i : c) labels.insert(subs[i].label());
            EXPECT_TRUE(labels.count("123")) << entry.type;
            got.insert(labels);
        }
        for (const auto& line : entry.cells) {
            std::istringstream is(line);
            std::set<std::string> labels;
            for (std::string w; is >> w;) labels.insert(w);
            want.insert(labels);
        }
        EXPECT_EQ(got, want) << entry.type;
        EXPECT_TRUE(is_matroid_subdivision(s.cell_subsets()));
        // Finest: the secondary cone is full-dimensional.
        EXPECT_EQ(secondary_cone(vertex_figure(s, KSubset::from_label("123"))).dim, 9) << entry.type;
    }
}

TEST(Subdivision, ThreeTropicalPointsInGeneralPosition) {
    Subdivision g = regular_subdivision(Polytope::product(3, 6), product_heights({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    validate_subdivision(g);
    EXPECT_EQ(g.spread(), 6u);
    TightSpan ts = tight_span(g);
    EXPECT_EQ(ts.two_cells().size(), 1u);
}

TEST(Subdivision, VertexFigureOfTauIsTheProductSubdivision) {
    std::mt19937 rng(testdata::test_seed(11));
    for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {2, 6}, {3, 6}, {3, 7}, {2, 7}}) {
        for (int trial = 0; trial < 4; ++trial) {
            Matrix v = random_config(rng, k, n - k, 4);
            PointConfig cfg(k, n, v);
            Subdivision sigma = regular_subdivision(Polytope::hypersimplex(k, n), tau(cfg).values());
            Subdivision gamma = regular_subdivision(Polytope::product(k, n), product_heights(v));
            KSubset base(static_cast<std::uint32_t>((1u << k) - 1));
            EXPECT_EQ(vertex_figure(sigma, base), gamma) << k << "," << n;
            // At another vertex, use tau relative to that vertex.
            KSubset other = subset_unrank(std::uniform_int_distribution<int>(0, binomial(n, k) - 1)(rng), n, k);
            Subdivision at = regular_subdivision(Polytope::hypersimplex(k, n), tau_at_vertex(cfg, other).values());
            EXPECT_EQ(vertex_figure(at, other), gamma) << k << "," << n << " at " << other.label();
        }
    }
}

TEST(Subdivision, ConeConstructionRecoversTauSubdivision) {
    std::mt19937 rng(testdata::test_seed(13));
    for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {2, 6}, {3, 6}, {3, 7}}) {
        for (int trial = 0; trial < 4; ++trial) {
            Matrix v = random_config(rng, k, n - k, 3);
            Subdivision gamma = regular_subdivision(Polytope::product(k, n), product_heights(v));
            Subdivision sigma = regular_subdivision(Polytope::hypersimplex(k, n), tau(PointConfig(k, n, v)).values());
            Subdivision built = cone_construction(gamma);
            EXPECT_EQ(built, sigma) << k << "," << n;
            EXPECT_TRUE(tight_span_isomorphic(tight_span(gamma), tight_span(built)));
            KSubset base(static_cast<std::uint32_t>((1u << k) - 1));
            EXPECT_EQ(cone_construction(vertex_figure(sigma, base)), sigma);
        }
    }
}

TEST(Subdivision, TrivialVertexFigureAndCone) {
    Subdivision t = Subdivision::trivial(Polytope::hypersimplex(3, 6));
    EXPECT_TRUE(vertex_figure(t, KSubset::from_label("246")).is_trivial());
    EXPECT_EQ(cone_construction(Subdivision::trivial(Polytope::product(3, 6))), t);
}

TEST(Subdivision, VertexFigureRejectsNonMatroidalCells) {
    // A lifting of Delta(2,4) that cuts the octahedron along a non-edge.
    Subdivision s = regular_subdivision(Polytope::hypersimplex(2, 4), {0, 1, 1, 0, 1, 0});
    ASSERT_FALSE(check_plucker(PluckerVector(2, 4, {0, 1, 1, 0, 1, 0})).empty());
    EXPECT_THROW(vertex_figure(s, KSubset::from_label("12")), SubdivisionError);
}

TEST(Subdivision, MatroidalIffPluckerIffHypersimplexEdges) {
    auto check = [](int k, int n, const Vec& pi) {
        Subdivision s = regular_subdivision(Polytope::hypersimplex(k, n), pi);
        bool plucker = check_plucker(PluckerVector(k, n, pi)).empty();
        auto cells = s.cell_subsets();
        bool matroidal = is_matroid_subdivision(cells);
        bool edges = std::all_of(cells.begin(), cells.end(), [&](const auto& c) { return edge_parallel_check(c, n); });
        EXPECT_EQ(plucker, matroidal);
        EXPECT_EQ(matroidal, edges);
    };
    for (int n : {4, 5}) {
        const int m = static_cast<int>(binomial(n, 2));
        for (int mask = 0; mask < (1 << m); ++mask) {
            Vec pi(m);
            for (int i = 0; i < m; ++i) pi[i] = (mask >> i) & 1;
            check(2, n, pi);
        }
    }
    std::mt19937 rng(testdata::test_seed(23));
    std::uniform_int_distribution<int> bit(0, 1), tri(0, 2);
    for (int trial = 0; trial < 40; ++trial) {
        Vec pi(15);
        for (auto& x : pi) x = bit(rng);
        check(2, 6, pi);
    }
    for (int trial = 0; trial < 10; ++trial) {
        Vec pi(20);
        for (auto& x : pi) x = tri(rng);
        check(3, 6, pi);
    }
}

TEST(SecondaryCone, DimensionsAtTheExtremes) {
    Polytope p = Polytope::product(3, 6);
    SecondaryCone trivial = secondary_cone(Subdivision::trivial(p));
    EXPECT_EQ(trivial.dim, 5);  // lineality n - 1
    EXPECT_EQ(trivial.lineality_dim, 5);
    Subdivision fine = regular_subdivision(p, product_heights({{0, 0, 0}, {0, 1, 3}, {0, 4, 2}}));
    bool simplicial = std::all_of(fine.cells.begin(), fine.cells.end(), [](const Cell& c) { return c.size() == 5; });
    ASSERT_TRUE(simplicial);
    EXPECT_EQ(secondary_cone(fine).dim, 9);
    EXPECT_FALSE(is_coarsest(fine));
    EXPECT_FALSE(is_coarsest(Subdivision::trivial(p)));

    Subdivision hyper = Subdivision::trivial(Polytope::hypersimplex(2, 5));
    EXPECT_EQ(secondary_cone(hyper).dim, 5);
}

TEST(SecondaryCone, SplitsAreCoarsest) {
    // The split of Delta(2,5) by x_1 + x_2 <= 1.
    Polytope p = Polytope::hypersimplex(2, 5);
    Vec h(p.vertex_count());
    auto subs = enumerate_ksubsets(5, 2);
    for (std::size_t i = 0; i < subs.size(); ++i) h[i] = subs[i] == KSubset::from_label("12") ? 1 : 0;
    Subdivision s = regular_subdivision(p, h);
    EXPECT_EQ(s.spread(), 2u);
    EXPECT_TRUE(is_coarsest(s));
    EXPECT_EQ(secondary_cone(s).dim, 6);

    // The k-split staircase configurations.
    for (int k : {2, 3, 4}) {
        Matrix v(k, Vec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < i; ++j) v[i][j] = 1;
        Subdivision g = regular_subdivision(Polytope::product(k, 2 * k), product_heights(v));
        EXPECT_EQ(g.spread(), static_cast<std::size_t>(k));
        EXPECT_TRUE(is_coarsest(g)) << k;
    }
}

TEST(SecondaryCone, NonRegularSubdivisionHasNoWitness) {
    // The mother of all non-regular triangulations: two nested triangles.
    Polytope p = Polytope::points({{0, 0}, {4, 0}, {0, 4}, {1, 1}, {2, 1}, {1, 2}});
    Subdivision s(p, {{0, 1, 4}, {1, 2, 5}, {2, 0, 3}, {0, 3, 4}, {1, 4, 5}, {2, 5, 3}, {3, 4, 5}});
    validate_subdivision(s);
    EXPECT_FALSE(is_regular(s));
    Subdivision regular = regular_subdivision(p, {0, 16, 16, 2, 5, 6});
    auto w = regular_witness(regular);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(regular_subdivision(p, *w), regular);
}

TEST(TightSpan, KSplitIsATriangle) {
    Matrix v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    Vec h = product_heights(v);
    Subdivision g = regular_subdivision(Polytope::product(3, 6), h);
    TightSpan ts = tight_span(g, h);
    EXPECT_EQ(ts.f_vector(), (std::vector<int>{3, 3, 1}));
    auto shapes = classify_2cells(ts);
    ASSERT_EQ(shapes.size(), 1u);
    EXPECT_EQ(shapes[0], TwoCellShape::triangle);
    EXPECT_TRUE(collapse_certifies_coarsest(ts, shapes));
}

TEST(TightSpan, SplitHasNoTwoCells) {
    Matrix v{{0, 0}, {0, 1}};
    Vec h = product_heights(v);
    TightSpan ts = tight_span(regular_subdivision(Polytope::product(2, 4), h), h);
    EXPECT_TRUE(classify_2cells(ts).empty());
    auto edges = ts.edges();
    ASSERT_EQ(edges.size(), 1u);
    EXPECT_EQ(collapse_closure(ts, {}, {edges[0]}), std::set<int>{edges[0]});
    EXPECT_TRUE(collapse_certifies_coarsest(ts, {}));
}

TEST(TightSpan, RankFunction) {
    std::mt19937 rng(testdata::test_seed(3));
    for (int trial = 0; trial < 6; ++trial) {
        Vec h = product_heights(random_config(rng, 3, 4, 6));
        Subdivision g = regular_subdivision(Polytope::product(3, 7), h);
        TightSpan ts = tight_span(g);
        for (std::size_t e = 0; e < ts.elements.size(); ++e) {
            EXPECT_EQ(ts.rank_of(e), ts.polytope_dim - ts.elements[e].cell_dim + 1);
            if (ts.dim_of(e) == 1) {
                EXPECT_EQ(ts.elements[e].cells.size(), 2u);
            }
            if (e < ts.vertex_count) {
                EXPECT_EQ(ts.dim_of(e), 0);
            }
        }
        // Tight spans of products of simplices with three rows are at most 2-dimensional.
        EXPECT_LE(ts.dim(), 2);
        // Euler characteristic 1 (contractible).
        auto f = ts.f_vector();
        int chi = 0;
        for (std::size_t d = 0; d < f.size(); ++d) chi += (d % 2 ? -1 : 1) * f[d];
        EXPECT_EQ(chi, 1);
    }
}

TEST(TightSpan, IsomorphismDetectsRelabelingAndDifferences) {
    Matrix v{{0, 2, 1, 3}, {1, 0, 3, 0}, {2, 1, 0, 4}};
    Matrix w = v;
    for (auto& row : w) std::swap(row[0], row[2]);
    std::swap(w[0], w[1]);
    TightSpan a = tight_span(regular_subdivision(Polytope::product(3, 7), product_heights(v)));
    TightSpan b = tight_span(regular_subdivision(Polytope::product(3, 7), product_heights(w)));
    EXPECT_TRUE(tight_span_isomorphic(a, b));
    TightSpan c = tight_span(regular_subdivision(Polytope::product(3, 7), product_heights({{0, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 1, 2}})));
    EXPECT_FALSE(tight_span_isomorphic(a, c));
}

TEST(TightSpan, TwoCellsOfARandomRealization) {
    std::mt19937 rng(testdata::test_seed(19));
    int seen = 0;
    for (int trial = 0; trial < 10; ++trial) {
        Vec h = product_heights(random_config(rng, 3, 4, 5));
        Subdivision g = regular_subdivision(Polytope::product(3, 7), h);
        TightSpan ts = tight_span(g, h);
        auto shapes = classify_2cells(ts);
        EXPECT_EQ(shapes.size(), ts.two_cells().size());
        seen += static_cast<int>(shapes.size());
    }
    EXPECT_GT(seen, 0);
}
