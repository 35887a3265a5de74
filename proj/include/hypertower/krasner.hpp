#ifndef HYPERTOWER_KRASNER_HPP
#define HYPERTOWER_KRASNER_HPP

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <hypertower/basefields.hpp>
#include <hypertower/oag.hpp>

namespace hypertower::krasner
{

using oag::extended_value;

// The class [x]_gamma of x in K_gamma = K^x / U^gamma + {[0]}, where
// U^gamma = {u : v(u - 1) > gamma}. Stored by representative; two cosets are
// equal iff both are zero or v(x - y) > gamma + v(x).
class gamma_coset
{
public:
    gamma_coset(field_element rep, extended_value level);

    const extended_value &level() const noexcept
    {
        return m_level;
    }
    const field_element &rep() const noexcept
    {
        return m_rep;
    }
    const field_descriptor &descriptor() const noexcept
    {
        return m_rep.descriptor();
    }
    bool is_zero() const
    {
        return m_rep.is_zero();
    }
    // v_gamma: valuation of the representative.
    const extended_value &value() const noexcept
    {
        return m_value;
    }

    std::string to_string() const;

private:
    field_element m_rep;
    extended_value m_level;
    extended_value m_value;
};

gamma_coset coset_of(const field_element &x, const extended_value &level);
gamma_coset coset_of(const field_element &x, long level);

bool coset_eq(const gamma_coset &a, const gamma_coset &b);
gamma_coset coset_mul(const gamma_coset &a, const gamma_coset &b);
gamma_coset coset_inv(const gamma_coset &a);
gamma_coset coset_neg(const gamma_coset &a);
extended_value coset_value(const gamma_coset &a);

// Hash key for rational cosets: (v(x), unit part mod p^(gamma+1)). Empty for
// zero and for non-rational fields.
struct canonical_key {
    long valuation;
    mpz_class residue;

    friend bool operator==(const canonical_key &a, const canonical_key &b)
    {
        return a.valuation == b.valuation && a.residue == b.residue;
    }
};
std::optional<canonical_key> canonical_form(const gamma_coset &a);

// [x] + [y] as a finite descriptor. When one operand is the zero coset the sum
// is the other operand alone; otherwise it is the open ball
//   { [z] : v(z - (x + y)) > radius },  radius = gamma + min(v x, v y).
struct hyper_sum {
    extended_value level;
    gamma_coset center;
    extended_value radius;
    bool contains_zero;
    std::optional<gamma_coset> singleton;
};

hyper_sum hyperadd(const gamma_coset &a, const gamma_coset &b);
bool hypersum_contains(const hyper_sum &s, const gamma_coset &c);

// Values taken by members of a hypersum: one value, or the open ray
// {e : e > bound} together with infinity when the ball reaches zero.
struct value_set {
    enum class kind { singleton, open_ray };

    kind set_kind;
    extended_value value;

    bool contains(const extended_value &e) const;
    friend bool operator==(const value_set &, const value_set &) = default;
};

value_set hypersum_value_set(const hyper_sum &s);

// The union of a hypersum's classes as a ball of K: center, radius and
// whether it is the singleton {0}.
struct element_ball {
    field_element center;
    extended_value radius;
    bool zero_only;
};
element_ball as_element_ball(const hyper_sum &s);
// Set inclusion of the unions, independent of the levels involved.
bool ball_subset(const element_ball &inner, const element_ball &outer);

struct iterated_membership {
    enum class verdict { member, non_member, unknown };

    verdict result;
    // For members: intermediate classes z_1 .. z_{k-1} with
    // z_1 in [x_0] + [x_1], z_j in z_{j-1} + [x_j], and c in z_{k-1} + [x_k].
    std::vector<gamma_coset> certificate;
};

// Decide c in [x_0] + ... + [x_k] (left-nested) by bounded witness search.
// search_bound limits the multipliers tried for each intermediate class.
iterated_membership iterated_contains(std::span<const gamma_coset> summands, const gamma_coset &c,
                                      std::size_t search_bound = 8);

// Re-check a membership certificate step by step.
bool verify_certificate(std::span<const gamma_coset> summands, const gamma_coset &c,
                        std::span<const gamma_coset> certificate);

// Random u with v(u - 1) > level (u = 1 + pi^(level+1) w, w integral).
field_element random_one_unit(const field_descriptor &d, const extended_value &level, std::mt19937_64 &rng,
                              long height);

} // namespace hypertower::krasner

#endif
