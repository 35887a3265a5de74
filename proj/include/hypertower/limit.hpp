#ifndef HYPERTOWER_LIMIT_HPP
#define HYPERTOWER_LIMIT_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include <hypertower/basefields.hpp>
#include <hypertower/krasner.hpp>
#include <hypertower/tower.hpp>

namespace hypertower::limit
{

using krasner::gamma_coset;
using oag::extended_value;

// One cancellation step: an addition whose result value exceeds the smaller
// input value by `loss`, so its inputs must be read `loss` levels deeper.
struct loss_term {
    std::string operation;
    extended_value min_valuation;
    extended_value result_valuation;
    long loss = 0;
};

// Inputs known to level `requested` determine the result to level
// `delivered` = requested - sum of losses.
struct precision_ledger {
    long requested = 0;
    long delivered = 0;
    std::vector<loss_term> losses;
    // Set when an addition could not be told apart from 0 within the probe
    // bound; the result is then the zero element.
    std::optional<long> declared_zero_at;

    long total_loss() const;
    nlohmann::json to_json() const;
};

// An element of the completion as a compatible family of cosets at levels
// gamma_nu = nu. Levels are generated on demand and memoized; each new level is
// checked against its nearest materialized neighbours. Copies share state.
class coherent_element
{
public:
    using generator_fn = std::function<gamma_coset(long level)>;

    static constexpr long default_zero_probe_bound = 64;

    coherent_element(field_descriptor d, generator_fn gen, nlohmann::json provenance,
                     std::optional<long> max_level = std::nullopt);

    const field_descriptor &descriptor() const;
    // Throws level_error for negative levels, precision_exhausted beyond
    // max_level, contract_violation when the generator breaks compatibility.
    gamma_coset at(long level) const;
    // The element's value, read off level 0.
    extended_value valuation() const;
    bool is_zero() const;

    std::optional<long> max_level() const;
    const nlohmann::json &provenance() const;
    // Cancellation losses along the costliest path of the expression tree.
    const std::vector<loss_term> &path_losses() const;
    std::optional<long> declared_zero_at() const;
    long zero_probe_bound() const;
    void set_zero_probe_bound(long bound);
    std::size_t materialized() const;

    // {"provenance": ..., "cosets": [first n levels]}
    nlohmann::json to_json(long n) const;

private:
    friend struct arith_access;
    struct state;
    std::shared_ptr<state> m_state;
};

coherent_element from_field(const field_element &x);
// The element whose digits are the window; determined up to level N - 1 for
// an N-digit window. An all-zero window yields the zero element.
coherent_element from_approximation(const approximation &a, const field_descriptor &d);
// N digits past the valuation, read from the level N - 1 representative.
approximation to_approximation(const coherent_element &e, std::size_t n);

struct arith_result {
    coherent_element value;
    precision_ledger ledger;
};

// add needs b; neg, inv ignore it. `requested` is the level to which the
// leaf inputs are assumed known, for the ledger.
arith_result limit_arith(arith_op op, const coherent_element &a, const std::optional<coherent_element> &b,
                         long requested = 0);
coherent_element limit_add(const coherent_element &a, const coherent_element &b);
coherent_element limit_mul(const coherent_element &a, const coherent_element &b);
coherent_element limit_neg(const coherent_element &a);
coherent_element limit_inv(const coherent_element &a);

struct equal_up_to {
    long level;
};
struct distinct {
    long level;
    gamma_coset lhs;
    gamma_coset rhs;
};
using eq_result = std::variant<equal_up_to, distinct>;

// Agreement at every level 0..n, or the first level where the cosets differ.
// Agreement is evidence, not proof, of equality.
eq_result limit_eq(const coherent_element &a, const coherent_element &b, long n);
bool equal_up_to_level(const coherent_element &a, const coherent_element &b, long n);
nlohmann::json to_json(const eq_result &r);

// Maps an element of a foreign valued field L to a representative in K of its
// class at a level.
struct representative_finder {
    std::string name;
    field_descriptor target;
    std::function<field_element(const field_element &foreign, long level)> find;
};

// For Q(alpha), alpha^2 = 1 + p: a + b alpha |-> a + b s_M in Q with s_M the
// embedding root truncated deep enough for the requested level.
representative_finder hensel_finder(const field_descriptor &quadratic);
// The identity on K, as a finder.
representative_finder identity_finder(const field_descriptor &d);

// The limit element of the Cauchy sequence of representatives rf(x, nu).
// Level queries throw contract_violation if v(rf(x, nu)) != w(x).
coherent_element sigma_embed(const field_element &x, const representative_finder &rf);

// Member families of the level-wise hypersums of a and b must either fail
// coherence / membership or agree with a + b up to level n.
tower::law_report check_singlevalued(const coherent_element &a, const coherent_element &b, long n,
                                     std::size_t samples, std::mt19937_64 &rng, long height = 20);

// A cone over the tower with vertex field `vertex`: sides(x, gamma) in K_gamma.
struct cone {
    std::string name;
    field_descriptor vertex;
    std::function<gamma_coset(const field_element &, long)> side;
};

struct candidate_map {
    std::string name;
    std::function<coherent_element(const field_element &)> map;
};

cone field_cone(const field_descriptor &k);
cone hensel_cone(const field_descriptor &quadratic);

// The mediating map h is built from the sides; checks the cone condition,
// factorization at levels 0..n, and that each candidate agrees with h.
tower::law_report check_universal_property(const cone &c, std::span<const candidate_map> candidates,
                                           std::span<const field_element> samples, long n);

} // namespace hypertower::limit

#endif
