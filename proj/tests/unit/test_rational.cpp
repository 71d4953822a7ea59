#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fleet/rational.hpp"

using fleet::Rational;

TEST(Rational, StoresLowestTerms) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational(0, 7), Rational{0});
    EXPECT_EQ(Rational(0, 7).den(), 1);
}

TEST(Rational, ZeroDenominatorRejected) { EXPECT_THROW(Rational(1, 0), std::domain_error); }

TEST(Rational, Arithmetic) {
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
    EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
    EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
    EXPECT_EQ(-Rational(2, 3), Rational(-2, 3));
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, InfinityRules) {
    const Rational inf = Rational::infinity();
    EXPECT_TRUE(inf.is_infinite());
    EXPECT_EQ(inf + Rational(5), inf);
    EXPECT_EQ(inf * Rational(2), inf);
    EXPECT_EQ(Rational(5) / inf, Rational(0));
    EXPECT_GT(inf, Rational(std::numeric_limits<std::int64_t>::max()));
    EXPECT_THROW(inf - inf, std::domain_error);
    EXPECT_THROW(Rational(0) * inf, std::domain_error);
    EXPECT_EQ(inf.to_string(), "inf");
}

TEST(Rational, OverflowDetected) {
    const Rational big(std::numeric_limits<std::int64_t>::max() / 2);
    EXPECT_THROW(big * Rational(4), std::overflow_error);
}

TEST(Rational, Parse) {
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_EQ(Rational::parse("-3"), Rational(-3));
    EXPECT_EQ(Rational::parse("2/3"), Rational(2, 3));
    EXPECT_EQ(Rational::parse("1.25"), Rational(5, 4));
    EXPECT_EQ(Rational::parse("inf"), Rational::infinity());
    EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
    EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, StringRoundTrip) {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<std::int64_t> num(-100000, 100000);
    std::uniform_int_distribution<std::int64_t> den(1, 1000);
    for (int i = 0; i < 1000; ++i) {
        const Rational r(num(gen), den(gen));
        EXPECT_EQ(Rational::parse(r.to_string()), r);
        std::ostringstream os;
        os << r;
        EXPECT_EQ(os.str(), r.to_string());
    }
}

TEST(Rational, OrderingMatchesCrossMultiplication) {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<std::int64_t> num(-50, 50);
    std::uniform_int_distribution<std::int64_t> den(1, 50);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t a = num(gen), b = den(gen), c = num(gen), d = den(gen);
        EXPECT_EQ(Rational(a, b) < Rational(c, d), a * d < c * b);
        EXPECT_EQ(Rational(a, b) == Rational(c, d), a * d == c * b);
    }
}
