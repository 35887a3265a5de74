#include <hypertower/tower.hpp>

#include <algorithm>
#include <set>

#include <hypertower/errors.hpp>

namespace hypertower::tower
{

gamma_coset project(const gamma_coset &c, const extended_value &gamma)
{
    if (gamma.is_infinite() || gamma.finite().arity() != 1u || gamma.integer() < 0) {
        throw level_error("projection target must be a finite level >= 0, got " + oag::to_string(gamma));
    }
    if (gamma > c.level()) {
        throw level_error("cannot project from level " + oag::to_string(c.level()) + " up to "
                          + oag::to_string(gamma));
    }
    return krasner::coset_of(c.rep(), gamma);
}

gamma_coset project(const gamma_coset &c, long gamma)
{
    return project(c, extended_value::integer(gamma));
}

extended_value v_gamma(const gamma_coset &c)
{
    return c.value();
}

level_pair level_pair::make(long lower, long upper)
{
    if (lower < 0 || lower > upper) {
        throw level_error("level pair needs 0 <= gamma <= delta, got (" + std::to_string(lower) + ", "
                          + std::to_string(upper) + ")");
    }
    return {lower, upper};
}

std::vector<level_pair> all_pairs(std::span<const long> levels)
{
    std::vector<level_pair> out;
    for (auto g : levels) {
        for (auto d : levels) {
            if (g <= d) {
                out.push_back(level_pair::make(g, d));
            }
        }
    }
    return out;
}

void law_report::merge(const law_report &other)
{
    samples += other.samples;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    for (const auto &[k, v] : other.details.items()) {
        if (details.contains(k) && details[k].is_number_integer() && v.is_number_integer()) {
            details[k] = details[k].get<long long>() + v.get<long long>();
        } else {
            details[k] = v;
        }
    }
}

nlohmann::json law_report::to_json() const
{
    std::vector<std::pair<std::string, nlohmann::json>> keyed;
    keyed.reserve(failures.size());
    for (const auto &f : failures) {
        keyed.emplace_back(f.dump(), f);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    nlohmann::json sorted = nlohmann::json::array();
    for (auto &[_, f] : keyed) {
        sorted.push_back(std::move(f));
    }
    nlohmann::json out{{"law", law}, {"samples", samples}, {"pass", pass()}, {"failures", std::move(sorted)}};
    if (!details.empty()) {
        out["details"] = details;
    }
    return out;
}

law_report check_slice_triangles(std::span<const level_pair> pairs, std::span<const field_element> samples,
                                 const projector &rho)
{
    law_report report("slice-triangles");
    std::set<long> levels;
    for (const auto &pr : pairs) {
        levels.insert(pr.lower);
        levels.insert(pr.upper);
    }
    for (const auto &x : samples) {
        for (const auto &pr : pairs) {
            ++report.samples;
            const auto gamma = extended_value::integer(pr.lower);
            const auto c = krasner::coset_of(x, pr.upper);
            const auto down = rho(c, gamma);
            const auto base = [&] {
                return nlohmann::json{{"x", json_io::to_json(x)}, {"gamma", pr.lower}, {"delta", pr.upper}};
            };
            if (!(v_gamma(down) == v_gamma(c))) {
                auto f = base();
                f["check"] = "value";
                f["projected_value"] = json_io::to_json(v_gamma(down));
                f["value"] = json_io::to_json(v_gamma(c));
                report.fail(std::move(f));
            }
            if (!krasner::coset_eq(down, krasner::coset_of(x, gamma))) {
                auto f = base();
                f["check"] = "vertex";
                f["projected"] = json_io::to_json(down);
                report.fail(std::move(f));
            }
            for (auto eps : levels) {
                if (eps < pr.upper) {
                    continue;
                }
                const auto top = krasner::coset_of(x, eps);
                const auto two_step = rho(rho(top, extended_value::integer(pr.upper)), gamma);
                const auto one_step = rho(top, gamma);
                if (!krasner::coset_eq(two_step, one_step)) {
                    auto f = base();
                    f["check"] = "functoriality";
                    f["epsilon"] = eps;
                    f["composite"] = json_io::to_json(two_step);
                    f["direct"] = json_io::to_json(one_step);
                    report.fail(std::move(f));
                }
            }
        }
    }
    return report;
}

bool hom_is_zero(const gamma_coset &c)
{
    return c.is_zero();
}

bool hom_is_zero(const extended_value &e)
{
    return e.is_infinite();
}

gamma_coset hom_mul(const gamma_coset &a, const gamma_coset &b)
{
    return krasner::coset_mul(a, b);
}

extended_value hom_mul(const extended_value &a, const extended_value &b)
{
    return oag::group_add(a, b);
}

bool hom_equal(const gamma_coset &a, const gamma_coset &b)
{
    return krasner::coset_eq(a, b);
}

bool hom_equal(const extended_value &a, const extended_value &b)
{
    return a == b;
}

bool hom_sum_contains(const gamma_coset &fa, const gamma_coset &fb, const gamma_coset &z)
{
    return krasner::hypersum_contains(krasner::hyperadd(fa, fb), z);
}

bool hom_sum_contains(const extended_value &fa, const extended_value &fb, const extended_value &z)
{
    return oag::trop_member(z, oag::trop_hyperadd(fa, fb));
}

namespace detail
{

std::vector<gamma_coset> sample_members(const gamma_coset &x, const gamma_coset &y, std::mt19937_64 &rng,
                                        std::size_t count, long height)
{
    const auto s = krasner::hyperadd(x, y);
    std::vector<gamma_coset> out{s.singleton ? *s.singleton : s.center};
    if (s.singleton) {
        return out;
    }
    const auto &d = x.descriptor();
    const auto &level = x.level();
    if (s.contains_zero) {
        out.push_back(krasner::coset_of(field_element::zero(d), level));
    }
    // Just inside the ball: center + pi^(radius + 1).
    if (s.radius.is_finite()) {
        out.push_back(krasner::coset_of(
            s.center.rep() + field_element::uniformizer_power(d, s.radius.to_long() + 1), level));
    }
    for (std::size_t i = 0; i < count; ++i) {
        const auto u = krasner::random_one_unit(d, level, rng, height);
        out.push_back(krasner::coset_of(x.rep() + y.rep() * u, level));
    }
    return out;
}

nlohmann::json describe(const gamma_coset &c)
{
    return json_io::to_json(c);
}

nlohmann::json describe(const extended_value &e)
{
    return json_io::to_json(e);
}

bool ball_contained(const gamma_coset &x, const gamma_coset &y, const gamma_coset &fx, const gamma_coset &fy)
{
    return krasner::ball_subset(krasner::as_element_ball(krasner::hyperadd(x, y)),
                                krasner::as_element_ball(krasner::hyperadd(fx, fy)));
}

} // namespace detail

} // namespace hypertower::tower
