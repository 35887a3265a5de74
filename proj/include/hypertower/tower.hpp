#ifndef HYPERTOWER_TOWER_HPP
#define HYPERTOWER_TOWER_HPP

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <hypertower/json_io.hpp>
#include <hypertower/krasner.hpp>

namespace hypertower::tower
{

using krasner::gamma_coset;
using oag::extended_value;

// rho_{delta,gamma}: [x]_delta -> [x]_gamma.
gamma_coset project(const gamma_coset &c, const extended_value &gamma);
gamma_coset project(const gamma_coset &c, long gamma);

// v_gamma: K_gamma -> T(Z), the structure arrow of the slice.
extended_value v_gamma(const gamma_coset &c);

struct level_pair {
    long lower;
    long upper;

    // Throws level_error unless 0 <= lower <= upper.
    static level_pair make(long lower, long upper);
};

// All pairs gamma <= delta drawn from the given levels.
std::vector<level_pair> all_pairs(std::span<const long> levels);

struct law_report {
    explicit law_report(std::string name = {}) : law(std::move(name)) {}

    std::string law;
    std::size_t samples = 0;
    std::vector<nlohmann::json> failures;
    nlohmann::json details = nlohmann::json::object();

    bool pass() const noexcept
    {
        return failures.empty();
    }
    void fail(nlohmann::json counterexample)
    {
        failures.push_back(std::move(counterexample));
    }
    // Associative: counts add, failures concatenate.
    void merge(const law_report &other);
    // Failures sorted by their serialized form.
    nlohmann::json to_json() const;
};

using projector = std::function<gamma_coset(const gamma_coset &, const extended_value &)>;

// For each sample x and pair (gamma, delta): value preservation
// v_gamma(rho(c)) = v_delta(c), the vertex triangle rho([x]_delta) = [x]_gamma,
// and functoriality rho_{delta,gamma} o rho_{eps,delta} = rho_{eps,gamma} for
// every level eps >= delta taken from the pairs.
law_report check_slice_triangles(std::span<const level_pair> pairs, std::span<const field_element> samples,
                                 const projector &rho = projector(
                                     [](const gamma_coset &c, const extended_value &g) { return project(c, g); }));

// Operations a homomorphism target must provide; overloads below cover
// K_gamma (cosets) and T(Z) (extended values).
bool hom_is_zero(const gamma_coset &c);
bool hom_is_zero(const extended_value &e);
gamma_coset hom_mul(const gamma_coset &a, const gamma_coset &b);
extended_value hom_mul(const extended_value &a, const extended_value &b);
bool hom_equal(const gamma_coset &a, const gamma_coset &b);
bool hom_equal(const extended_value &a, const extended_value &b);
bool hom_sum_contains(const gamma_coset &fa, const gamma_coset &fb, const gamma_coset &z);
bool hom_sum_contains(const extended_value &fa, const extended_value &fb, const extended_value &z);

struct hom_options {
    std::size_t members_per_pair = 4;
    long height = 20;
    // Also compare x + y and f(x) + f(y) as balls of K; valid only for maps
    // that keep representatives (projections).
    bool ball_fast_path = false;
};

// Homomorphism law for f: K_gamma -> target, on the sampled pairs (xs[i], ys[i]):
// f(0) = 0', f(xy) = f(x) f(y), and f(z) in f(x) + f(y) for sampled members z
// of x + y (the center, boundary perturbations, and x + y u for 1-units u).
template <class Target>
law_report check_hom_law(const std::string &name, std::span<const gamma_coset> xs, std::span<const gamma_coset> ys,
                         const std::function<Target(const gamma_coset &)> &f, std::mt19937_64 &rng,
                         const hom_options &opt = {});

// Cone over the tower with vertex V: for each sample x and pair (gamma, delta),
// rho_{delta,gamma}(side(delta, x)) = side(gamma, x), and v_gamma(side(gamma, x))
// is the same for every sampled level.
template <class V>
law_report cone_over_diagram(const std::string &name, const std::function<gamma_coset(long, const V &)> &side,
                             std::span<const level_pair> pairs, std::span<const V> samples,
                             const std::function<nlohmann::json(const V &)> &describe);

// --- template definitions ----------------------------------------------------

namespace detail
{

std::vector<gamma_coset> sample_members(const gamma_coset &x, const gamma_coset &y, std::mt19937_64 &rng,
                                        std::size_t count, long height);
nlohmann::json describe(const gamma_coset &c);
nlohmann::json describe(const extended_value &e);
bool ball_contained(const gamma_coset &x, const gamma_coset &y, const gamma_coset &fx, const gamma_coset &fy);

} // namespace detail

template <class Target>
law_report check_hom_law(const std::string &name, std::span<const gamma_coset> xs, std::span<const gamma_coset> ys,
                         const std::function<Target(const gamma_coset &)> &f, std::mt19937_64 &rng,
                         const hom_options &opt)
{
    law_report report(name);
    if (xs.empty()) {
        return report;
    }
    const auto zero = krasner::coset_of(field_element::zero(xs.front().descriptor()), xs.front().level());
    if (!hom_is_zero(f(zero))) {
        report.fail({{"check", "zero"}, {"image", detail::describe(f(zero))}});
    }
    const auto n = std::min(xs.size(), ys.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto &x = xs[i];
        const auto &y = ys[i];
        ++report.samples;
        const auto fx = f(x);
        const auto fy = f(y);
        const auto fxy = f(krasner::coset_mul(x, y));
        if (!hom_equal(fxy, hom_mul(fx, fy))) {
            report.fail({{"check", "multiplicative"},
                         {"x", detail::describe(x)},
                         {"y", detail::describe(y)},
                         {"f(xy)", detail::describe(fxy)},
                         {"f(x)f(y)", detail::describe(hom_mul(fx, fy))}});
        }
        for (const auto &z : detail::sample_members(x, y, rng, opt.members_per_pair, opt.height)) {
            const auto fz = f(z);
            if (!hom_sum_contains(fx, fy, fz)) {
                report.fail({{"check", "containment"},
                             {"x", detail::describe(x)},
                             {"y", detail::describe(y)},
                             {"member", detail::describe(z)},
                             {"image", detail::describe(fz)}});
                break;
            }
        }
        if constexpr (std::is_same_v<Target, gamma_coset>) {
            if (opt.ball_fast_path && !detail::ball_contained(x, y, fx, fy)) {
                report.fail({{"check", "ball-containment"}, {"x", detail::describe(x)}, {"y", detail::describe(y)}});
            }
        }
    }
    return report;
}

template <class V>
law_report cone_over_diagram(const std::string &name, const std::function<gamma_coset(long, const V &)> &side,
                             std::span<const level_pair> pairs, std::span<const V> samples,
                             const std::function<nlohmann::json(const V &)> &describe)
{
    law_report report(name);
    for (const auto &x : samples) {
        std::optional<extended_value> value;
        for (const auto &pr : pairs) {
            ++report.samples;
            const auto upper = side(pr.upper, x);
            const auto lower = side(pr.lower, x);
            if (!krasner::coset_eq(project(upper, pr.lower), lower)) {
                report.fail({{"check", "commutes"},
                             {"x", describe(x)},
                             {"gamma", pr.lower},
                             {"delta", pr.upper},
                             {"projected", detail::describe(project(upper, pr.lower))},
                             {"side", detail::describe(lower)}});
            }
            for (const auto *c : {&upper, &lower}) {
                if (!value) {
                    value = c->value();
                } else if (!(*value == c->value())) {
                    report.fail({{"check", "slice"},
                                 {"x", describe(x)},
                                 {"level", json_io::to_json(c->level())},
                                 {"value", json_io::to_json(c->value())},
                                 {"expected", json_io::to_json(*value)}});
                }
            }
        }
    }
    return report;
}

} // namespace hypertower::tower

#endif
