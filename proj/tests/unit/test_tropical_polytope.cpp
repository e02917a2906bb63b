#include "dressian/tropical_polytope.hpp"
#include "support/seed.hpp"
#include "support/finest_delta36.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dressian;

namespace {

PointConfig random_config(std::mt19937& rng, int k, int m, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix v(k, Vec(m));
    for (auto& row : v)
        for (auto& x : row) x = d(rng);
    return PointConfig(k, k + m, v);
}

PointConfig rigid_special() {
    return PointConfig::from_matrix({{0, 0, 0, 0, 0}, {1, 1, 0, -1, -1}, {0, 1, 1, 0, -1}});
}

Vec barycenter(const std::vector<Vec>& pts, const std::vector<int>& idx) {
    Vec s(pts[0].size());
    for (int i : idx) s = s + pts[i];
    return Rational(1, static_cast<std::int64_t>(idx.size())) * s;
}

}  // namespace

TEST(Types, DirectEvaluation) {
    PointConfig v = PointConfig::from_matrix({{0, 1}, {1, 0}});
    EXPECT_EQ(type_of({0, 0}, v), (TypeVector{{1}, {2}}));
    EXPECT_EQ(type_of({0, 1}, v), (TypeVector{{1}, {1, 2}}));
}

TEST(Types, SelfTypeAndCoverage) {
    std::mt19937 rng(testdata::test_seed(4));
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        PointConfig v = random_config(rng, 3, 4, -3, 3);
        for (int j = 0; j < 4; ++j) {
            Vec col{v.v[0][j], v.v[1][j], v.v[2][j]};
            for (const auto& s : type_of(col, v)) EXPECT_TRUE(std::binary_search(s.begin(), s.end(), j + 1));
        }
        Vec x{d(rng), d(rng), d(rng)};
        std::set<int> covered;
        for (const auto& s : type_of(x, v)) covered.insert(s.begin(), s.end());
        EXPECT_EQ(covered.size(), 4u);
    }
}

TEST(TropicalComplex, CellsHaveTheirTypes) {
    std::mt19937 rng(testdata::test_seed(8));
    for (int trial = 0; trial < 15; ++trial) {
        PointConfig v = random_config(rng, 3, 3 + trial % 3, 0, 4);
        TropicalComplex tc = tropical_complex(v);
        ASSERT_EQ(tc.pseudo_vertices.size(), tc.tight_span.vertex_count);
        for (const auto& c : tc.cells) {
            for (const auto& s : c.type) EXPECT_FALSE(s.empty());
            // The relative interior of a bounded cell has exactly the cell's type.
            EXPECT_EQ(type_of(barycenter(tc.pseudo_vertices, c.vertices), v), c.type);
        }
    }
}

TEST(TropicalComplex, PseudoVertexOutsideTheGenerators) {
    PointConfig v = rigid_special();
    TropicalComplex tc = tropical_complex(v);
    Vec origin(3);
    EXPECT_NE(std::find(tc.pseudo_vertices.begin(), tc.pseudo_vertices.end(), origin), tc.pseudo_vertices.end());
    for (int j = 0; j < 5; ++j) {
        Vec col{v.v[0][j], v.v[1][j], v.v[2][j]};
        EXPECT_NE(col, origin);
    }
}

TEST(TropicalComplex, TwoPointsSpanATropicalSegment) {
    // Two points (the rows) in T^(n-3): the tight span is a path of at most n - 3 edges.
    std::mt19937 rng(testdata::test_seed(12));
    for (int m = 2; m <= 6; ++m)
        for (int trial = 0; trial < 5; ++trial) {
            PointConfig v = random_config(rng, 2, m, 0, 6);
            TightSpan ts = tight_span(product_subdivision(v));
            EXPECT_LE(ts.dim(), 1);
            EXPECT_LE(static_cast<int>(ts.edges().size()), m - 1);
            EXPECT_EQ(ts.edges().size() + 1, ts.vertex_count);
            std::map<int, int> degree;
            for (int e : ts.edges())
                for (int c : ts.elements[e].cells) ++degree[c];
            for (auto& [c, d] : degree) EXPECT_LE(d, 2);
        }
}

TEST(CanonicalForm, InvariantUnderMoves) {
    std::mt19937 rng(testdata::test_seed(21));
    for (int trial = 0; trial < 20; ++trial) {
        PointConfig v = random_config(rng, 3, 4, -4, 4);
        PointConfig c = canonical_form(v);
        EXPECT_EQ(canonical_form(c), c);
        Matrix w = v.v;
        std::swap(w[0], w[2]);
        for (auto& row : w) std::swap(row[1], row[3]);
        for (auto& x : w[1]) x += 5;
        for (auto& row : w) row[2] -= 3;
        EXPECT_EQ(canonical_form(PointConfig(3, 7, w)), c);
        EXPECT_EQ(c.v[0], Vec(4));
        for (const auto& row : c.v) EXPECT_TRUE(row[0].is_zero());
    }
}

TEST(CanonicalForm, FiveFinestTypesAreInequivalent) {
    std::vector<PointConfig> cfgs;
    std::vector<TightSpan> spans;
    for (const auto& entry : testdata::finest_delta36()) {
        Matrix v(3, Vec(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v[i][j] = entry.rows[i][j];
        cfgs.emplace_back(3, 6, v);
        spans.push_back(tight_span(product_subdivision(cfgs.back())));
        EXPECT_TRUE(is_generic(cfgs.back())) << entry.type;
    }
    for (std::size_t a = 0; a < cfgs.size(); ++a)
        for (std::size_t b = a + 1; b < cfgs.size(); ++b) {
            EXPECT_NE(canonical_form(cfgs[a]), canonical_form(cfgs[b]));
            // Independent witness of inequivalence: the tight spans differ.
            EXPECT_FALSE(tight_span_isomorphic(spans[a], spans[b]));
        }
}

TEST(Rigidity, Examples) {
    EXPECT_TRUE(is_tropically_rigid(rigid_special()));
    for (int k : {2, 3, 4}) {
        EXPECT_TRUE(is_tropically_rigid(k_split_configuration(k))) << k;
        EXPECT_EQ(product_subdivision(k_split_configuration(k)).spread(), static_cast<std::size_t>(k));
    }
    PointConfig eeeg = PointConfig::from_matrix({{2, 1, 0}, {0, 2, 0}, {0, 0, 1}});
    EXPECT_TRUE(is_generic(eeeg));
    EXPECT_FALSE(is_tropically_rigid(eeeg));
    EXPECT_FALSE(is_tropically_rigid(PointConfig::from_matrix({{0, 0, 0}, {0, 0, 0}})));
}

TEST(Rigidity, DuplicationKeepsTightSpan) {
    PointConfig v = rigid_special();
    for (int i = 1; i <= 5; ++i) {
        PointConfig w = duplicate_point(v, i);
        EXPECT_EQ(w.n, 9);
        EXPECT_TRUE(is_tropically_rigid(w));
        EXPECT_TRUE(tight_span_isomorphic(tight_span(product_subdivision(v)), tight_span(product_subdivision(w))));
    }
    EXPECT_THROW(duplicate_point(v, 0), std::invalid_argument);
    EXPECT_THROW(duplicate_point(v, 6), std::invalid_argument);
    // Copying either of two equal points gives the same configuration class.
    PointConfig d = duplicate_point(k_split_configuration(3), 2);
    EXPECT_EQ(canonical_form(duplicate_point(d, 2)), canonical_form(duplicate_point(d, 4)));
}

TEST(Rigidity, PartitionFamily) {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{3, 6}, {3, 8}, {2, 6}, {2, 7}, {3, 9}}) {
        auto fam = rigid_partition_family(k, n);
        EXPECT_EQ(static_cast<std::int64_t>(fam.size()), partition_count(n - k, k)) << k << "," << n;
        std::set<Matrix> forms;
        for (const auto& cfg : fam) {
            EXPECT_TRUE(is_tropically_rigid(cfg));
            forms.insert(canonical_form(cfg).v);
        }
        EXPECT_EQ(forms.size(), fam.size());
    }
    EXPECT_EQ(rigid_partition_family(3, 8).size(), 2u);
    EXPECT_THROW(rigid_partition_family(3, 5), std::invalid_argument);
}

TEST(CoarsestEnumeration, SegmentTimesSimplexGivesOnlySplits) {
    for (int m = 1; m <= 5; ++m) {
        auto classes = enumerate_coarsest_product_subdivisions(2, m + 3);
        EXPECT_EQ(static_cast<int>(classes.size()), (m + 1) / 2) << m;
        for (const auto& cfg : classes) EXPECT_EQ(product_subdivision(cfg).spread(), 2u);
    }
}

TEST(CoarsestEnumeration, TriangleTimesTriangleAgainstGridSearch) {
    auto classes = enumerate_coarsest_product_subdivisions(3, 6);
    std::set<std::vector<Cell>> walked;
    for (const auto& cfg : classes) {
        EXPECT_TRUE(is_tropically_rigid(cfg));
        walked.insert(detail::canonical_cells(product_subdivision(cfg)));
    }
    EXPECT_EQ(walked.size(), classes.size());
    // All normalized configurations with entries in [-2, 2].
    std::set<std::vector<Cell>> grid;
    for (int code = 0; code < 625; ++code) {
        Matrix v(3, Vec(3));
        int c = code;
        for (int i = 1; i < 3; ++i)
            for (int j = 1; j < 3; ++j) {
                v[i][j] = c % 5 - 2;
                c /= 5;
            }
        PointConfig cfg(3, 6, v);
        if (is_tropically_rigid(cfg)) grid.insert(detail::canonical_cells(product_subdivision(cfg)));
    }
    EXPECT_EQ(grid, walked);
}

TEST(CoarsestEnumeration, CatalogOfFivePointConfigurations) {
    auto cat = rigid_catalog_3x5();
    ASSERT_EQ(cat.size(), 11u);
    std::set<std::vector<Cell>> classes;
    int without_multiple = 0;
    for (const auto& cfg : cat) {
        EXPECT_EQ(canonical_form(cfg), cfg);
        EXPECT_TRUE(is_tropically_rigid(cfg));
        classes.insert(detail::canonical_cells(product_subdivision(cfg)));
        if (!has_multiple_points(cfg)) ++without_multiple;
        // Duplicating any point keeps the configuration rigid.
        for (int i = 1; i <= 5; ++i) EXPECT_TRUE(is_tropically_rigid(duplicate_point(cfg, i)));
    }
    EXPECT_EQ(classes.size(), 11u);
    EXPECT_EQ(without_multiple, 2);
    EXPECT_TRUE(std::find(cat.begin(), cat.end(), canonical_form(rigid_special())) != cat.end());
}

TEST(TropicalComplex, FourTrianglesAndAParallelogram) {
    PointConfig v = PointConfig::from_matrix({{0, 0, 0, 0, 0, 0}, {-2, 0, -1, -1, 0, -1}, {2, 2, 1, 2, 3, 3}});
    TropicalComplex tc = tropical_complex(v);
    const TightSpan& ts = tc.tight_span;
    EXPECT_EQ(ts.f_vector(), (std::vector<int>{7, 11, 5}));
    auto shapes = classify_2cells(ts);
    EXPECT_EQ(std::count(shapes.begin(), shapes.end(), TwoCellShape::triangle), 4);
    EXPECT_EQ(std::count(shapes.begin(), shapes.end(), TwoCellShape::parallelogram), 1);
    // All five 2-cells share one central pseudo-vertex.
    std::map<int, int> incidence;
    for (int c : ts.two_cells())
        for (int x : ts.elements[c].cells) ++incidence[x];
    EXPECT_EQ(std::count_if(incidence.begin(), incidence.end(), [](auto& p) { return p.second == 5; }), 1);
    EXPECT_TRUE(collapse_certifies_coarsest(ts, shapes));
    EXPECT_TRUE(is_tropically_rigid(v));
}
