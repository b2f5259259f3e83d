#include "cyclesim/rational.h"

#include "gtest/gtest.h"

using namespace cyclesim;

TEST(rational, reduces_and_normalizes_sign) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(4, 2).str(), "2");
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(rational, arithmetic) {
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
    EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
    EXPECT_EQ(Rational(1) / Rational(2, 7), Rational(7, 2));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(Rational::parse("2/3"), Rational(2, 3));
    EXPECT_EQ(Rational::parse("-5"), Rational(-5));
    EXPECT_THROW(Rational::parse("2/x"), std::invalid_argument);
}

TEST(rational, exact_prob) {
    ExactProb p = ExactProb::from_weights(12, 18);
    EXPECT_EQ(p.str(), "2/3");
    EXPECT_EQ(p.expected_repetitions(), Rational(3, 2));
    EXPECT_THROW(ExactProb(Rational(3, 2)), std::domain_error);
    EXPECT_THROW(ExactProb::from_weights(1, 0), std::domain_error);
}
