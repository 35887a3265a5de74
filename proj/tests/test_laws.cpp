#include <gtest/gtest.h>

#include <hypertower/laws.hpp>

#include "oracle.hpp"

using namespace hypertower;

// ============================================================================
// Law suites
// ============================================================================

class LawSuite : public ::testing::TestWithParam<std::string>
{
};

TEST_P(LawSuite, PassesWithDefaultSeed)
{
    const laws::config cfg{7, 60, 30};
    const auto report = laws::run_suite(GetParam(), cfg);
    EXPECT_TRUE(report.pass()) << report.to_json().dump();
    EXPECT_GT(report.samples, 0u);
}

TEST_P(LawSuite, IsDeterministic)
{
    const laws::config cfg{11, 20, 20};
    EXPECT_EQ(laws::run_suite(GetParam(), cfg).to_json(), laws::run_suite(GetParam(), cfg).to_json());
}

INSTANTIATE_TEST_SUITE_P(All, LawSuite, ::testing::ValuesIn(laws::suite_names()),
                         [](const auto &info) {
                             std::string name = info.param;
                             std::replace(name.begin(), name.end(), '-', '_');
                             return name;
                         });

TEST(LawSuites, NamesAreComplete)
{
    const auto &names = laws::suite_names();
    for (const auto *n : {"lee", "tropical", "hom", "cone", "slice", "singlevalued", "universal", "oracle-roundtrip"}) {
        EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
    }
    EXPECT_THROW((void)laws::run_suite("nope", {}), std::invalid_argument);
}

// ============================================================================
// Definitional membership
// ============================================================================

TEST(DefinitionalMember, WitnessesSatisfyTheDefinition)
{
    const auto d = field_descriptor::rational(3);
    const auto box = oracle::height_box(4);
    for (long gamma : {0L, 1L}) {
        for (const auto &x : box) {
            for (const auto &y : box) {
                for (const auto &z : box) {
                    const auto fx = field_element::rational(d, x);
                    const auto fy = field_element::rational(d, y);
                    const auto fz = field_element::rational(d, z);
                    const auto w = laws::definitional_member(fx, fy, fz, gamma);
                    ASSERT_EQ(w.has_value(), oracle::lee_member(x, y, z, 3, gamma));
                    if (w) {
                        EXPECT_TRUE(oracle::one_unit(w->t.as_rational(), 3, gamma));
                        EXPECT_TRUE(oracle::one_unit(w->u.as_rational(), 3, gamma));
                        EXPECT_EQ(z * w->t.as_rational(), x + y * w->u.as_rational());
                    }
                }
            }
        }
    }
}
