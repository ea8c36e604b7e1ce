#include "padic/arith.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace padic;

TEST(Valuation, Examples) {
    EXPECT_EQ(valuation(BigInt(12), 2), Valuation::of(2));
    EXPECT_TRUE(valuation(BigInt(0), 5).infinite);
    EXPECT_EQ(valuation(Rational(8, 6), 3), Valuation::of(-1));
    EXPECT_EQ(valuation(Rational(-9, 4), 3), Valuation::of(2));
    EXPECT_EQ(valuation(Rational(-9, 4), 2), Valuation::of(-2));
}

TEST(Valuation, RejectsNonPrime) {
    EXPECT_THROW(valuation(BigInt(12), 4), ConfigError);
    EXPECT_THROW(valuation(Rational(1, 3), 1), ConfigError);
}

TEST(Valuation, MultiplicativeAndUltrametric) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-500, 500), den(1, 300);
    for (long p : {2L, 3L, 5L}) {
        for (int trial = 0; trial < 500; ++trial) {
            Rational a(num(rng), den(rng)), b(num(rng), den(rng));
            a.canonicalize();
            b.canonicalize();
            if (a == 0 || b == 0) continue;
            Rational ab = a * b;
            EXPECT_EQ(valuation(ab, p), valuation(a, p) + valuation(b, p));
            Rational s = a + b;
            Valuation va = valuation(a, p), vb = valuation(b, p), vs = valuation(s, p);
            Valuation lo = std::min(va, vb);
            EXPECT_GE(vs, lo);
            if (va != vb) {
                EXPECT_EQ(vs, lo);
            }
        }
    }
}

TEST(Binomial, Examples) {
    EXPECT_EQ(binomial(4, 2), 6);
    EXPECT_EQ(binomial(9, 0), 1);
    EXPECT_EQ(binomial(6, 3), 20);
    EXPECT_EQ(binomial(2, 5), 0);
}

TEST(Binomial, PascalExhaustive) {
    for (unsigned long n = 1; n <= 64; ++n)
        for (unsigned long k = 1; k <= n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST(PPowerOverFactorial, Examples) {
    EXPECT_EQ(p_power_over_factorial_valuation(3, 2), 2);
    EXPECT_EQ(p_power_over_factorial_valuation(0, 7), 0);
    for (long p : {2L, 3L, 5L, 7L}) EXPECT_EQ(p_power_over_factorial_valuation(static_cast<unsigned long>(p), p), p - 1);
}

TEST(PPowerOverFactorial, AgreesWithDirectValuation) {
    for (long p : {2L, 3L, 5L})
        for (unsigned long i = 0; i <= 40; ++i) {
            Rational q(pow_int(p, i), factorial(i));
            q.canonicalize();
            EXPECT_EQ(valuation(q, p), Valuation::of(p_power_over_factorial_valuation(i, p)));
            EXPECT_GE(p_power_over_factorial_valuation(i, p), 0);
        }
}

TEST(DividedPowerScalar, GammaTwoOfTwo) {
    EXPECT_EQ(divided_power_of_scalar(Rational(2), 2), Rational(2));
    EXPECT_EQ(divided_power_of_scalar(Rational(3), 3), Rational(9, 2));
}

TEST(PLocalRational, LowestTermsAndIntegrality) {
    PLocalRational q(BigInt(8), BigInt(6));
    EXPECT_EQ(q.numerator(), 4);
    EXPECT_EQ(q.denominator(), 3);
    EXPECT_TRUE(q.is_p_integral(2));
    EXPECT_FALSE(q.is_p_integral(3));
    EXPECT_EQ((q * PLocalRational(3)).value(), Rational(4));
    EXPECT_THROW(PLocalRational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST(SessionConfig, Validation) {
    SessionConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.modulus(), 256);
    c.prime = 9;
    EXPECT_THROW(c.validate(), ConfigError);
    c.prime = 3;
    c.precision = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c.precision = 2;
    c.weight = 0;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Residue, ModPowers) {
    EXPECT_EQ(residue(Rational(1, 3), 8), 3);
    EXPECT_EQ(residue(Rational(-1), 9), 8);
}
