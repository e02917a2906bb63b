#include "dressian/rational.hpp"
#include "support/seed.hpp"

#include <gtest/gtest.h>

#include <random>

using dressian::Rational;

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(Rational::parse("3").to_string(), "3");
    EXPECT_EQ(Rational::parse("-2/4").to_string(), "-1/2");
    EXPECT_EQ(Rational::parse("\xE2\x88\x92" "1/2"), Rational(-1, 2));
    EXPECT_EQ(Rational::parse(" 6/ 3"), Rational(2));
    EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
    EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, DivisionByZeroThrows) {
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, OverflowPromotesAndDemotes) {
    Rational big(INT64_MAX);
    Rational sq = big * big;
    EXPECT_FALSE(sq.is_small());
    EXPECT_EQ(sq.to_mpq(), mpq_class(mpz_class(INT64_MAX) * mpz_class(INT64_MAX)));
    Rational back = sq / big;
    EXPECT_TRUE(back.is_small());
    EXPECT_EQ(back, big);
    EXPECT_EQ(-Rational(INT64_MIN), Rational(mpq_class(-mpz_class(INT64_MIN))));
}

// Every operation agrees with plain GMP arithmetic, including near the int64 boundary.
TEST(Rational, MatchesGmpOnRandomOperands) {
    std::mt19937_64 rng(dressian::testdata::test_seed(12345));
    auto draw = [&]() -> std::int64_t {
        switch (rng() % 3) {
            case 0: return static_cast<std::int64_t>(rng() % 21) - 10;
            case 1: return static_cast<std::int64_t>(rng() >> 1) * ((rng() & 1) ? 1 : -1);
            default: return static_cast<std::int64_t>(rng() % 2000001) - 1000000;
        }
    };
    for (int iter = 0; iter < 20000; ++iter) {
        std::int64_t an = draw(), ad = draw(), bn = draw(), bd = draw();
        if (ad == 0) ad = 1;
        if (bd == 0) bd = 3;
        if (ad == INT64_MIN) ad = 7;
        if (bd == INT64_MIN) bd = 7;
        Rational a(an, ad), b(bn, bd);
        mpq_class qa(mpz_class(std::to_string(an)), mpz_class(std::to_string(ad)));
        mpq_class qb(mpz_class(std::to_string(bn)), mpz_class(std::to_string(bd)));
        qa.canonicalize();
        qb.canonicalize();
        ASSERT_EQ((a + b).to_mpq(), qa + qb);
        ASSERT_EQ((a - b).to_mpq(), qa - qb);
        ASSERT_EQ((a * b).to_mpq(), qa * qb);
        if (!b.is_zero()) {
            ASSERT_EQ((a / b).to_mpq(), mpq_class(qa / qb));
        }
        ASSERT_EQ(a < b, qa < qb);
        ASSERT_EQ(a == b, qa == qb);
    }
}
