#include <random>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include <hypertower/errors.hpp>
#include <hypertower/limit.hpp>

#include "oracle.hpp"

using namespace hypertower;
using namespace hypertower::limit;

class LimitTest : public ::testing::Test
{
protected:
    field_descriptor q5 = field_descriptor::rational(5);
    field_descriptor k5 = field_descriptor::quadratic(5);
    std::mt19937_64 rng{77};

    coherent_element q(long n, long d = 1) const
    {
        return from_field(field_element::rational(q5, mpq_class(n, d)));
    }

    static bool is_equal(const eq_result &r)
    {
        return std::holds_alternative<equal_up_to>(r);
    }

    static long distinct_level(const eq_result &r)
    {
        return std::get<distinct>(r).level;
    }
};

// ============================================================================
// Coherent elements
// ============================================================================

TEST_F(LimitTest, FromFieldExamples)
{
    const auto one = q(1);
    for (long l = 0; l < 10; ++l) {
        EXPECT_TRUE(krasner::coset_eq(one.at(l), krasner::coset_of(field_element::one(q5), l)));
    }
    EXPECT_EQ(to_approximation(q(1, 3), 4).digits, (std::vector<std::uint64_t>{2, 3, 1, 3}));
    EXPECT_EQ(to_approximation(q(-1), 4).digits, (std::vector<std::uint64_t>{4, 4, 4, 4}));
    const auto zero = q(0);
    EXPECT_TRUE(zero.is_zero());
    EXPECT_TRUE(zero.valuation().is_infinite());
    EXPECT_TRUE(zero.at(7).is_zero());
    EXPECT_TRUE(to_approximation(zero, 5).is_zero());
}

TEST_F(LimitTest, LevelQueriesAreChecked)
{
    EXPECT_THROW((void)q(3).at(-1), level_error);
    approximation a{5, 0, {1, 2, 3}};
    const auto e = from_approximation(a, q5);
    ASSERT_TRUE(e.max_level().has_value());
    EXPECT_EQ(*e.max_level(), 2);
    EXPECT_NO_THROW((void)e.at(2));
    EXPECT_THROW((void)e.at(3), precision_exhausted);
}

TEST_F(LimitTest, LevelsAreMemoized)
{
    const auto e = q(7, 3);
    EXPECT_EQ(e.materialized(), 0u);
    (void)e.at(4);
    (void)e.at(4);
    (void)e.at(1);
    EXPECT_EQ(e.materialized(), 2u);
    const auto copy = e;
    (void)copy.at(9);
    EXPECT_EQ(e.materialized(), 3u);
    const auto j = e.to_json(3);
    EXPECT_EQ(j["cosets"].size(), 3u);
    EXPECT_EQ(j["provenance"]["kind"], "from_field");
}

TEST_F(LimitTest, IncompatibleGeneratorIsRejected)
{
    // [6]_1 projects to [1]_0, but [1]_2 does not project to [6]_1.
    const coherent_element bad(
        q5,
        [this](long level) {
            return krasner::coset_of(field_element::from_integer(q5, level == 1 ? 6 : 1), level);
        },
        {{"kind", "test"}});
    (void)bad.at(1);
    try {
        (void)bad.at(2);
        FAIL() << "expected contract_violation";
    } catch (const contract_violation &e) {
        EXPECT_EQ(e.level(), 2);
    }
}

TEST_F(LimitTest, ConcurrentQueriesAgree)
{
    const auto e = limit_mul(q(2, 7), q(-11, 3));
    std::vector<std::thread> threads;
    std::vector<std::vector<gamma_coset>> seen(4);
    for (std::size_t t = 0; t < seen.size(); ++t) {
        threads.emplace_back([&, t] {
            for (long l = 20; l >= 0; --l) {
                seen[t].push_back(e.at(l));
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (std::size_t t = 1; t < seen.size(); ++t) {
        for (std::size_t i = 0; i < seen[0].size(); ++i) {
            EXPECT_TRUE(krasner::coset_eq(seen[0][i], seen[t][i]));
        }
    }
}

// ============================================================================
// Arithmetic and the precision ledger
// ============================================================================

TEST_F(LimitTest, ExactCancellationIsDeclaredZero)
{
    const auto r = limit_arith(arith_op::add, q(1), q(-1), 16);
    EXPECT_TRUE(r.value.is_zero());
    for (long l = 0; l < 12; ++l) {
        EXPECT_TRUE(r.value.at(l).is_zero());
    }
    ASSERT_TRUE(r.ledger.declared_zero_at.has_value());
    EXPECT_EQ(*r.ledger.declared_zero_at, coherent_element::default_zero_probe_bound);
    EXPECT_THROW((void)limit_inv(r.value), precision_exhausted);
    EXPECT_THROW((void)limit_inv(q(0)), zero_division);
}

TEST_F(LimitTest, CancellationLossIsRecorded)
{
    const auto r = limit_arith(arith_op::add, q(1), q(624), 10);
    ASSERT_EQ(r.ledger.losses.size(), 1u);
    EXPECT_EQ(r.ledger.losses[0].loss, 4);
    EXPECT_EQ(r.ledger.total_loss(), 4);
    EXPECT_EQ(r.ledger.delivered, 6);
    EXPECT_EQ(r.value.valuation(), extended_value::integer(4));
    EXPECT_TRUE(equal_up_to_level(r.value, q(625), 20));
    const auto j = r.ledger.to_json();
    EXPECT_EQ(j["requested"], 10);
    EXPECT_EQ(j["delivered"], 6);
}

TEST_F(LimitTest, LossesAccumulateAlongThePath)
{
    const auto s = limit_add(q(1), q(24));           // 25, loss 2
    const auto t = limit_arith(arith_op::add, s, q(100), 12);  // 125, loss 1
    EXPECT_EQ(t.ledger.total_loss(), 3);
    EXPECT_TRUE(equal_up_to_level(t.value, q(125), 16));
}

TEST_F(LimitTest, ZeroProbeBoundIsConfigurable)
{
    // The deeper of the two operands' bounds applies.
    auto a = q(1);
    auto m = q(-1);
    a.set_zero_probe_bound(5);
    EXPECT_EQ(*limit_arith(arith_op::add, a, m).ledger.declared_zero_at, 64);
    m.set_zero_probe_bound(5);
    const auto r = limit_arith(arith_op::add, a, m);
    ASSERT_TRUE(r.ledger.declared_zero_at.has_value());
    EXPECT_EQ(*r.ledger.declared_zero_at, 5);
    // 1 + (5^8 - 1) has value 8, out of reach of a depth-5 probe.
    auto b = q(1);
    auto c = q(390624);
    b.set_zero_probe_bound(5);
    c.set_zero_probe_bound(5);
    EXPECT_TRUE(limit_add(b, c).is_zero());
    EXPECT_EQ(limit_add(q(1), q(390624)).valuation(), extended_value::integer(8));
}

TEST_F(LimitTest, OperationsAgreeWithFieldArithmetic)
{
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto d = field_descriptor::rational(p);
        for (int i = 0; i < 60; ++i) {
            const auto x = random_element(d, rng, 1000);
            const auto y = random_element(d, rng, 1000);
            const auto a = from_field(x);
            const auto b = from_field(y);
            EXPECT_TRUE(equal_up_to_level(limit_mul(a, b), from_field(x * y), 16));
            EXPECT_TRUE(equal_up_to_level(limit_neg(a), from_field(-x), 16));
            if (!x.is_zero()) {
                EXPECT_TRUE(equal_up_to_level(limit_inv(a), from_field(x.inverse()), 16));
            }
            if (!(x + y).is_zero()) {
                EXPECT_TRUE(equal_up_to_level(limit_add(a, b), from_field(x + y), 16));
            }
        }
    }
}

TEST_F(LimitTest, DigitsMatchIndependentExpansion)
{
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto d = field_descriptor::rational(p);
        for (int i = 0; i < 60; ++i) {
            const auto x = random_element(d, rng, 100000);
            const auto y = random_element(d, rng, 100000);
            const auto sum = limit_add(from_field(x), from_field(y));
            const mpq_class exact = x.as_rational() + y.as_rational();
            if (exact == 0) {
                continue;
            }
            const auto got = to_approximation(sum, 16);
            const auto want = oracle::padic_expand(exact, p, 16);
            EXPECT_EQ(got.shift, want.shift);
            EXPECT_EQ(got.digits, want.digits);
        }
    }
}

TEST_F(LimitTest, FunctionFieldDigitsMatchSeriesSearch)
{
    const auto f5 = field_descriptor::function_field(5);
    for (int i = 0; i < 60; ++i) {
        const auto x = random_element(f5, rng, 5);
        const auto y = random_element(f5, rng, 5);
        const auto prod = x * y;
        if (prod.is_zero()) {
            continue;
        }
        const auto got = to_approximation(limit_mul(from_field(x), from_field(y)), 12);
        const auto want =
            oracle::laurent_expand(prod.as_function().num.coefficients(), prod.as_function().den.coefficients(), 5, 12);
        EXPECT_EQ(got.shift, want.shift);
        EXPECT_EQ(got.digits, want.digits);
    }
}

// ============================================================================
// Equality and round trips
// ============================================================================

TEST_F(LimitTest, EqualityExamples)
{
    EXPECT_TRUE(is_equal(limit_eq(q(1, 3), q(2, 6), 40)));
    const auto r = limit_eq(q(1), q(6), 10);
    ASSERT_FALSE(is_equal(r));
    EXPECT_EQ(distinct_level(r), 1);
    const auto j = to_json(r);
    EXPECT_EQ(j["result"], "distinct");
    EXPECT_EQ(j["level"], 1);
}

TEST_F(LimitTest, ApproximationRoundTrip)
{
    for (std::uint64_t p : {2u, 5u, 7u}) {
        const auto d = field_descriptor::rational(p);
        for (int i = 0; i < 40; ++i) {
            const auto x = random_element(d, rng, 1000000);
            const auto e = from_field(x);
            const auto rebuilt = from_approximation(to_approximation(e, 33), d);
            EXPECT_TRUE(equal_up_to_level(e, rebuilt, 32)) << x.to_string();
        }
    }
}

TEST_F(LimitTest, ApproximationWindowOfZerosIsZero)
{
    const auto e = from_approximation(approximation{5, 0, {0, 0, 0}}, q5);
    EXPECT_TRUE(e.is_zero());
}

// ============================================================================
// Embedding of Q(alpha)
// ============================================================================

TEST_F(LimitTest, SigmaOfAlphaDigits)
{
    const auto s = sigma_embed(field_element::generator(k5), hensel_finder(k5));
    EXPECT_EQ(to_approximation(s, 3).digits, (std::vector<std::uint64_t>{1, 3, 0}));
    const auto want = oracle::padic_expand(mpq_class(oracle::brute_sqrt(6, 5, 8, 1).front()), 5, 8);
    EXPECT_EQ(to_approximation(s, 8).digits, want.digits);
}

TEST_F(LimitTest, SigmaSquaresToOnePlusP)
{
    for (std::uint64_t p : {5u, 13u}) {
        const auto d = field_descriptor::quadratic(p);
        const auto s = sigma_embed(field_element::generator(d), hensel_finder(d));
        const auto target = from_field(field_element::from_integer(field_descriptor::rational(p), static_cast<long>(p) + 1));
        EXPECT_TRUE(equal_up_to_level(limit_mul(s, s), target, 32));
    }
}

TEST_F(LimitTest, SigmaSeparatesFromTruncation)
{
    const auto s = sigma_embed(field_element::generator(k5), hensel_finder(k5));
    const auto r = limit_eq(s, q(16), 10);
    ASSERT_FALSE(is_equal(r));
    EXPECT_EQ(distinct_level(r), 3);
}

TEST_F(LimitTest, SigmaIsAdditiveAndMultiplicative)
{
    const auto rf = hensel_finder(k5);
    for (int i = 0; i < 30; ++i) {
        const auto x = random_element(k5, rng, 40);
        const auto y = random_element(k5, rng, 40);
        const auto sx = sigma_embed(x, rf);
        const auto sy = sigma_embed(y, rf);
        EXPECT_TRUE(equal_up_to_level(limit_mul(sx, sy), sigma_embed(x * y, rf), 24));
        if (!(x + y).is_zero()) {
            EXPECT_TRUE(equal_up_to_level(limit_add(sx, sy), sigma_embed(x + y, rf), 24));
        }
    }
    const auto one_plus = field_element::one(k5) + field_element::generator(k5);
    EXPECT_TRUE(equal_up_to_level(sigma_embed(one_plus, rf),
                                  limit_add(from_field(field_element::one(q5)), sigma_embed(field_element::generator(k5), rf)),
                                  32));
}

TEST_F(LimitTest, SigmaRejectsValueChangingFinder)
{
    representative_finder shifty{"shifty", q5, [this](const field_element &, long level) {
                                     return field_element::uniformizer_power(q5, level);
                                 }};
    const auto e = sigma_embed(field_element::generator(k5), shifty);
    EXPECT_THROW((void)e.at(1), contract_violation);
}

// ============================================================================
// Limit sums and the universal property
// ============================================================================

TEST_F(LimitTest, SinglevaluedSums)
{
    for (int i = 0; i < 5; ++i) {
        const auto a = from_field(random_element(q5, rng, 500));
        const auto b = from_field(random_element(q5, rng, 500));
        const auto report = check_singlevalued(a, b, 12, 20, rng);
        EXPECT_TRUE(report.pass()) << report.to_json().dump();
    }
    const auto report = check_singlevalued(q(1), q(-1), 12, 20, rng);
    EXPECT_TRUE(report.pass()) << report.to_json().dump();
}

TEST_F(LimitTest, UniversalPropertyForFieldCone)
{
    std::vector<field_element> xs;
    for (int i = 0; i < 20; ++i) {
        xs.push_back(random_element(q5, rng, 1000));
    }
    const std::vector<candidate_map> good{{"from_field", [](const field_element &x) { return from_field(x); }}};
    EXPECT_TRUE(check_universal_property(field_cone(q5), good, xs, 16).pass());
    const std::vector<candidate_map> bad{{"negation", [](const field_element &x) { return from_field(-x); }}};
    EXPECT_FALSE(check_universal_property(field_cone(q5), bad, xs, 16).pass());
}

TEST_F(LimitTest, UniversalPropertyForHenselCone)
{
    std::vector<field_element> xs;
    for (int i = 0; i < 20; ++i) {
        xs.push_back(random_element(k5, rng, 40));
    }
    const auto rf = hensel_finder(k5);
    const std::vector<candidate_map> good{{"sigma", [rf](const field_element &x) { return sigma_embed(x, rf); }}};
    const auto report = check_universal_property(hensel_cone(k5), good, xs, 16);
    EXPECT_TRUE(report.pass()) << report.to_json().dump();
}
