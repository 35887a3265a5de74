#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <hypertower/basefields.hpp>
#include <hypertower/errors.hpp>

#include "oracle.hpp"

using namespace hypertower;

// ============================================================================
// Polynomials over F_p
// ============================================================================

TEST(FpPoly, NormalizesCoefficients)
{
    const fp_poly a(5, {-1, 0, 7, 0, 0});
    EXPECT_EQ(a.coefficients(), (std::vector<std::uint64_t>{4, 0, 2}));
    EXPECT_EQ(a.degree(), 2);
    EXPECT_TRUE(fp_poly(5).is_zero());
    EXPECT_EQ(fp_poly(5).degree(), -1);
}

TEST(FpPoly, RingOperations)
{
    const fp_poly a(5, {1, 1});
    const fp_poly b(5, {-1, 1});
    EXPECT_EQ(a * b, fp_poly(5, {4, 0, 1}));
    EXPECT_EQ(a + b, fp_poly(5, {0, 2}));
    EXPECT_EQ(a - a, fp_poly(5));
    const auto [q, r] = divmod(fp_poly(5, {4, 0, 1}), a);
    EXPECT_EQ(q, b);
    EXPECT_TRUE(r.is_zero());
}

TEST(FpPoly, GcdIsMonic)
{
    const fp_poly a(7, {2, 2});      // 2(t + 1)
    const fp_poly b(7, {-3, 0, 3});  // 3(t - 1)(t + 1)
    EXPECT_EQ(gcd(a, b), fp_poly(7, {1, 1}));
}

TEST(FpPoly, ShiftsAndOrder)
{
    const auto m = fp_poly::monomial(3, 2, 4);
    EXPECT_EQ(m.t_order(), 4u);
    EXPECT_EQ(m.shift_down(4), fp_poly::constant(3, 2));
    EXPECT_EQ(fp_poly::constant(3, 1).shift_up(2), fp_poly::monomial(3, 1, 2));
    EXPECT_EQ(fp_poly(5, {1, 2, 3, 4}).truncate(2), fp_poly(5, {1, 2}));
}

TEST(FpPoly, FieldInverse)
{
    for (std::uint64_t a = 1; a < 13; ++a) {
        EXPECT_EQ(a * fp_inverse(a, 13) % 13, 1u);
    }
    EXPECT_EQ(fp_reduce(-1, 7), 6u);
}

// ============================================================================
// Field arithmetic
// ============================================================================

class BaseFieldTest : public ::testing::Test
{
protected:
    field_descriptor q5 = field_descriptor::rational(5);
    field_descriptor f5 = field_descriptor::function_field(5);
    field_descriptor k5 = field_descriptor::quadratic(5);

    field_element rat(long n, long d = 1) const
    {
        return field_element::rational(q5, mpq_class(n, d));
    }
};

TEST_F(BaseFieldTest, RationalArithmetic)
{
    EXPECT_EQ(f_arith(arith_op::add, rat(1, 3), rat(1, 6)), rat(1, 2));
    EXPECT_EQ(f_arith(arith_op::mul, rat(2, 3), rat(3, 4)), rat(1, 2));
    EXPECT_EQ(f_arith(arith_op::neg, rat(5)), rat(-5));
    EXPECT_EQ(f_arith(arith_op::inv, rat(-4, 7)), rat(-7, 4));
    EXPECT_THROW((void)f_arith(arith_op::inv, rat(0)), zero_division);
    EXPECT_THROW((void)f_arith(arith_op::add, rat(1)), std::invalid_argument);
}

TEST_F(BaseFieldTest, FunctionFieldArithmetic)
{
    const auto t = field_element::generator(f5);
    const auto one = field_element::one(f5);
    EXPECT_EQ(f_arith(arith_op::mul, t + one, t - one), field_element::function(f5, fp_poly(5, {4, 0, 1}), fp_poly::constant(5, 1)));
    const auto x = (t + one) / (t * t - one);
    EXPECT_EQ(x, one / (t - one));
    EXPECT_EQ(x.as_function().den.leading(), 1u);
}

TEST_F(BaseFieldTest, QuadraticArithmetic)
{
    const auto alpha = field_element::generator(k5);
    EXPECT_EQ(alpha * alpha, field_element::from_integer(k5, 6));
    EXPECT_EQ(f_arith(arith_op::inv, alpha), field_element::quadratic(k5, 0, mpq_class(1, 6)));
    const auto x = field_element::quadratic(k5, 3, -2);
    EXPECT_EQ(norm(x), mpq_class(9 - 6 * 4));
    EXPECT_EQ(x * conjugate(x), field_element::quadratic(k5, norm(x), 0));
}

TEST_F(BaseFieldTest, DescriptorsAreChecked)
{
    EXPECT_THROW((void)(rat(1) + field_element::one(field_descriptor::rational(3))), descriptor_mismatch);
    EXPECT_THROW((void)field_descriptor::rational(6), std::invalid_argument);
    EXPECT_THROW((void)field_descriptor::quadratic(2), std::invalid_argument);
    EXPECT_THROW((void)field_descriptor::quadratic(3), std::invalid_argument);
    EXPECT_THROW((void)field_element::generator(q5), std::invalid_argument);
}

// ============================================================================
// Valuations
// ============================================================================

TEST_F(BaseFieldTest, ValuationExamples)
{
    EXPECT_EQ(valuation(rat(50)), oag::extended_value::integer(2));
    EXPECT_EQ(valuation(rat(3, 10)), oag::extended_value::integer(-1));
    EXPECT_TRUE(valuation(rat(0)).is_infinite());
    EXPECT_EQ(valuation(field_element::uniformizer_power(f5, -3)), oag::extended_value::integer(-3));
    // alpha - 1 = p / (alpha + 1) has value 1 under the embedding.
    EXPECT_EQ(valuation(field_element::quadratic(k5, -1, 1)), oag::extended_value::integer(1));
    EXPECT_EQ(valuation(field_element::quadratic(k5, 1, 1)), oag::extended_value::integer(0));
}

TEST_F(BaseFieldTest, ValuationAxiomsOnRandomElements)
{
    std::mt19937_64 rng(3);
    for (const auto &d : {q5, f5, k5, field_descriptor::rational(2)}) {
        for (int i = 0; i < 300; ++i) {
            const auto x = random_element(d, rng, 30);
            const auto y = random_element(d, rng, 30);
            EXPECT_EQ(valuation(x * y), valuation(x) + valuation(y)) << x.to_string() << " " << y.to_string();
            EXPECT_GE(valuation(x + y), oag::min(valuation(x), valuation(y)));
            if (valuation(x) != valuation(y)) {
                EXPECT_EQ(valuation(x + y), oag::min(valuation(x), valuation(y)));
            }
        }
    }
}

TEST_F(BaseFieldTest, RationalValuationMatchesTrialDivision)
{
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
        const auto d = field_descriptor::rational(p);
        for (int i = 0; i < 300; ++i) {
            const auto x = random_element(d, rng, 2000);
            const long expected = oracle::vp(x.as_rational(), p);
            if (x.is_zero()) {
                EXPECT_TRUE(valuation(x).is_infinite());
            } else {
                EXPECT_EQ(valuation(x).to_long(), expected);
            }
        }
    }
}

TEST_F(BaseFieldTest, QuadraticValuationMatchesEmbeddedRoot)
{
    // v(a + b alpha) = v_p(a + b s) for the root s = 1 mod p, read mod p^20.
    const auto roots = oracle::brute_sqrt(6, 5, 7, 1);
    ASSERT_EQ(roots.size(), 1u);
    const auto s = embedding_root(5, 7);
    EXPECT_EQ(s, roots.front());
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const long a = static_cast<long>(rng() % 41) - 20;
        const long b = static_cast<long>(rng() % 41) - 20;
        if (a == 0 && b == 0) {
            continue;
        }
        const auto x = field_element::quadratic(k5, a, b);
        const mpz_class image = a + b * embedding_root(5, 20);
        const long expected = std::min(oracle::vp(image, 5), 20L);
        ASSERT_LT(expected, 20);
        EXPECT_EQ(valuation(x).to_long(), expected) << a << " + " << b << " alpha";
    }
}

// ============================================================================
// Digit oracles
// ============================================================================

TEST_F(BaseFieldTest, ExpandExamples)
{
    const auto m1 = oracle_expand(rat(-1), 4);
    EXPECT_EQ(m1.shift, 0);
    EXPECT_EQ(m1.digits, (std::vector<std::uint64_t>{4, 4, 4, 4}));
    EXPECT_EQ(oracle_expand(rat(1, 3), 4).digits, (std::vector<std::uint64_t>{2, 3, 1, 3}));
    EXPECT_EQ(oracle_expand(rat(1), 5).digits, (std::vector<std::uint64_t>{1, 0, 0, 0, 0}));
    const auto z = oracle_expand(rat(0), 3);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.shift, 0);
    EXPECT_THROW((void)oracle_expand(rat(1), 0), std::invalid_argument);
}

TEST_F(BaseFieldTest, ExpandMatchesDigitSearch)
{
    std::mt19937_64 rng(21);
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto d = field_descriptor::rational(p);
        for (int i = 0; i < 200; ++i) {
            const auto x = random_element(d, rng, 1000);
            const auto got = oracle_expand(x, 12);
            const auto want = oracle::padic_expand(x.as_rational(), p, 12);
            EXPECT_EQ(got.shift, want.shift) << x.to_string();
            EXPECT_EQ(got.digits, want.digits) << x.to_string();
        }
    }
}

TEST_F(BaseFieldTest, LaurentExpandMatchesSeriesSearch)
{
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        const auto x = random_element(f5, rng, 6);
        if (x.is_zero()) {
            continue;
        }
        const auto got = oracle_expand(x, 10);
        const auto want = oracle::laurent_expand(x.as_function().num.coefficients(), x.as_function().den.coefficients(), 5, 10);
        EXPECT_EQ(got.shift, want.shift) << x.to_string();
        EXPECT_EQ(got.digits, want.digits) << x.to_string();
    }
}

TEST_F(BaseFieldTest, ResumInvertsExpansionModuloPrecision)
{
    std::mt19937_64 rng(23);
    for (const auto &d : {q5, f5}) {
        for (int i = 0; i < 100; ++i) {
            const auto x = random_element(d, rng, 40);
            if (x.is_zero()) {
                continue;
            }
            const auto back = resum(oracle_expand(x, 10), d);
            EXPECT_GT(valuation(x - back), valuation(x) + oag::extended_value::integer(9));
        }
    }
}

TEST_F(BaseFieldTest, HenselExamples)
{
    EXPECT_EQ(hensel_sqrt(rat(6), 1, 3).digits, (std::vector<std::uint64_t>{1, 3, 0}));
    EXPECT_EQ(hensel_sqrt(rat(6), 4, 2).digits, (std::vector<std::uint64_t>{4, 1}));
    EXPECT_EQ(hensel_sqrt(rat(1), 1, 4).digits, (std::vector<std::uint64_t>{1, 0, 0, 0}));
    EXPECT_THROW((void)hensel_sqrt(rat(6), 2, 3), hensel_error);
    EXPECT_THROW((void)hensel_sqrt(rat(5), 0, 3), hensel_error);
    EXPECT_THROW((void)hensel_sqrt(field_element::from_integer(field_descriptor::rational(2), 1), 1, 3), hensel_error);
}

TEST_F(BaseFieldTest, HenselMatchesBruteForce)
{
    for (std::uint64_t p : {5u, 7u, 13u}) {
        const auto d = field_descriptor::rational(p);
        for (long c = 1; c < 40; ++c) {
            if (c % static_cast<long>(p) == 0) {
                continue;
            }
            for (std::uint64_t seed = 1; seed < p; ++seed) {
                if ((seed * seed) % p != static_cast<std::uint64_t>(c) % p) {
                    continue;
                }
                const auto roots = oracle::brute_sqrt(c, p, 3, seed);
                ASSERT_EQ(roots.size(), 1u);
                const auto got = hensel_sqrt(field_element::from_integer(d, c), seed, 3);
                const auto want = oracle::padic_expand(mpq_class(roots.front()), p, 3);
                EXPECT_EQ(got.digits, want.digits) << "c=" << c << " p=" << p;
            }
        }
    }
}

TEST_F(BaseFieldTest, QuadraticExpansionUsesEmbeddedRoot)
{
    const auto x = field_element::quadratic(k5, 2, 3);
    const auto s = oracle::brute_sqrt(6, 5, 9, 1).front();
    const auto want = oracle::padic_expand(mpq_class(2 + 3 * s), 5, 6);
    const auto got = oracle_expand(x, 6);
    EXPECT_EQ(got.shift, want.shift);
    EXPECT_EQ(got.digits, want.digits);
}

// ============================================================================
// Cauchy sequences
// ============================================================================

TEST_F(BaseFieldTest, CauchyExamples)
{
    const std::vector<field_element> xs{rat(1), rat(16), rat(16), rat(391)};
    const auto w = is_cauchy(xs, oag::extended_value::integer(2));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->start_index, 1u);

    const std::vector<field_element> constant(4, rat(7));
    const auto c = is_cauchy(constant, oag::extended_value::integer(100));
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->start_index, 0u);

    const std::vector<field_element> alternating{rat(1), rat(2), rat(1), rat(2)};
    EXPECT_FALSE(is_cauchy(alternating, oag::extended_value::integer(0)).has_value());
}

TEST_F(BaseFieldTest, CauchyWitnessIsMinimal)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<field_element> xs;
        for (int i = 0; i < 6; ++i) {
            xs.push_back(rat(static_cast<long>(rng() % 200)));
        }
        const auto gamma = oag::extended_value::integer(static_cast<long>(rng() % 3));
        const auto ok_from = [&](std::size_t start) {
            for (std::size_t i = start; i < xs.size(); ++i) {
                for (std::size_t j = i + 1; j < xs.size(); ++j) {
                    if (!(valuation(xs[i] - xs[j]) > gamma)) {
                        return false;
                    }
                }
            }
            return true;
        };
        std::optional<std::size_t> expected;
        for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
            if (ok_from(s)) {
                expected = s;
                break;
            }
        }
        const auto got = is_cauchy(xs, gamma);
        ASSERT_EQ(got.has_value(), expected.has_value());
        if (got) {
            EXPECT_EQ(got->start_index, *expected);
        }
    }
}

TEST_F(BaseFieldTest, EmbeddingRootIsCachedAndConsistent)
{
    const auto deep = embedding_root(13, 30);
    const auto shallow = embedding_root(13, 5);
    mpz_class m = 1;
    for (int i = 0; i < 5; ++i) {
        m *= 13;
    }
    EXPECT_EQ(mpz_class(deep % m), shallow);
    mpz_class big = 1;
    for (int i = 0; i < 30; ++i) {
        big *= 13;
    }
    EXPECT_EQ(mpz_class((deep * deep - 14) % big), 0);
}
