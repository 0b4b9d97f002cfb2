#include <gtest/gtest.h>

#include <random>

#include "casimir/polynomial.hpp"
#include "casimir/rational.hpp"

using namespace casimir;

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
    EXPECT_EQ(to_string(parse_rational("-7")), "-7/1");
    EXPECT_EQ(to_string(parse_rational("0/5")), "0/1");
    EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
    EXPECT_THROW(parse_rational("abc"), InvalidArgument);
    EXPECT_THROW(parse_rational("1/-2"), InvalidArgument);
}

TEST(Rational, BareissMatchesCofactorExpansion) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    // 3x3 cofactor expansion as oracle
    for (int t = 0; t < 50; ++t) {
        QMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                m(i, j) = Rational(d(rng), 1 + (d(rng) + 5) % 3);
                m(i, j).canonicalize();
            }
        const Rational cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        EXPECT_EQ(determinant_bareiss(m), cof);
    }
}

TEST(Rational, InverseAndDefiniteness) {
    QMatrix g{{Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3)}};
    EXPECT_EQ(g * inverse(g), QMatrix::identity(2));
    EXPECT_TRUE(is_positive_definite(g));
    QMatrix h{{1, 2}, {2, 1}};
    EXPECT_FALSE(is_positive_definite(h));
    EXPECT_THROW(inverse(QMatrix{{1, 2}, {2, 4}}), InvalidArgument);
}
