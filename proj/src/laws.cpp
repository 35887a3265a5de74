#include <hypertower/laws.hpp>

#include <array>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

#include <hypertower/json_io.hpp>
#include <hypertower/krasner.hpp>
#include <hypertower/limit.hpp>
#include <hypertower/oag.hpp>

namespace hypertower::laws
{

using json = nlohmann::json;
using krasner::coset_of;
using krasner::gamma_coset;
using oag::extended_value;
using tower::law_report;

namespace
{

bool is_one_unit(const field_element &u, long gamma)
{
    return !u.is_zero() && valuation(u - field_element::one(u.descriptor())) > extended_value::integer(gamma);
}

field_element nonzero_element(const field_descriptor &d, std::mt19937_64 &rng, long height)
{
    for (;;) {
        auto x = random_element(d, rng, height);
        if (!x.is_zero()) {
            return x;
        }
    }
}

std::vector<field_element> sample_elements(const field_descriptor &d, std::mt19937_64 &rng, std::size_t n,
                                           long height)
{
    std::vector<field_element> out{field_element::zero(d), field_element::one(d)};
    while (out.size() < n) {
        out.push_back(random_element(d, rng, height));
    }
    if (out.size() > n) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(n), out.end());
    }
    return out;
}

// The negative control must produce at least one counterexample.
void expect_control_fires(law_report &report, const law_report &control)
{
    report.details[control.law] = control.failures.size();
    if (control.pass()) {
        report.fail({{"check", "negative-control"}, {"control", control.law}, {"samples", control.samples}});
    }
}

// --- lee -----------------------------------------------------------------------

law_report lee_suite(const config &cfg)
{
    law_report report("lee");
    std::mt19937_64 rng(cfg.seed);
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto d = field_descriptor::rational(p);
        for (long gamma = 0; gamma <= 2; ++gamma) {
            for (std::size_t i = 0; i < cfg.samples; ++i) {
                ++report.samples;
                const auto x = random_element(d, rng, cfg.height);
                const auto y = i % 5u == 0u ? -x : random_element(d, rng, cfg.height);
                const auto s = krasner::hyperadd(coset_of(x, gamma), coset_of(y, gamma));
                const auto base = [&] {
                    return json{{"p", p}, {"gamma", gamma}, {"x", json_io::to_json(x)}, {"y", json_io::to_json(y)}};
                };
                // Definition into predicate: [x + y u] for 1-units u.
                for (int k = 0; k < 3; ++k) {
                    const auto u = krasner::random_one_unit(d, extended_value::integer(gamma), rng, cfg.height);
                    const auto member = coset_of(x + y * u, gamma);
                    if (!krasner::hypersum_contains(s, member)) {
                        auto f = base();
                        f["check"] = "definition-in-ball";
                        f["u"] = json_io::to_json(u);
                        report.fail(std::move(f));
                    }
                }
                // Predicate against explicit witnesses, near and across the ball boundary.
                std::vector<field_element> probes{field_element::zero(d), x + y, nonzero_element(d, rng, cfg.height)};
                if (s.radius.is_finite()) {
                    const long r = s.radius.to_long();
                    for (long k = r - 1; k <= r + 2; ++k) {
                        const auto w = nonzero_element(d, rng, 7);
                        probes.push_back(x + y + field_element::uniformizer_power(d, k) * w);
                    }
                }
                for (const auto &z : probes) {
                    const bool predicate = krasner::hypersum_contains(s, coset_of(z, gamma));
                    const bool definition = definitional_member(x, y, z, gamma).has_value();
                    if (predicate != definition) {
                        auto f = base();
                        f["check"] = "predicate-vs-definition";
                        f["z"] = json_io::to_json(z);
                        f["predicate"] = predicate;
                        report.fail(std::move(f));
                    }
                }
            }
        }
    }
    return report;
}

// --- tropical --------------------------------------------------------------------

law_report tropical_suite(const config &cfg)
{
    law_report report("tropical");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> coord(-cfg.height, cfg.height);
    for (std::size_t arity : {1u, 2u}) {
        const auto draw = [&](bool allow_inf) {
            if (allow_inf && rng() % 10u == 0u) {
                return extended_value::infinity();
            }
            std::vector<mpz_class> c;
            for (std::size_t i = 0; i < arity; ++i) {
                c.emplace_back(coord(rng));
            }
            return extended_value(oag::group_element(std::move(c)));
        };
        const auto zero = extended_value(oag::group_element::zero(arity));
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            ++report.samples;
            const auto a = draw(true);
            // Equal pairs exercise the interval case.
            const auto b = i % 4u == 0u ? a : draw(true);
            const auto e = draw(false);
            const auto c = draw(true);
            const auto base = [&] {
                return json{{"a", json_io::to_json(a)}, {"b", json_io::to_json(b)}, {"arity", arity}};
            };
            const auto fail = [&](const char *check) {
                auto f = base();
                f["check"] = check;
                report.fail(std::move(f));
            };
            if (order_from_hyperadd(a, b) != (oag::group_cmp(a, b) <= 0)) {
                fail("order");
            }
            if (!(oag::group_add(a, zero) == a)) {
                fail("multiplicative-identity");
            }
            if (!(oag::trop_hyperadd(a, extended_value::infinity()) == oag::trop_set::singleton(a))) {
                fail("infinity-neutral");
            }
            if (!(oag::trop_hyperadd(a, b) == oag::trop_hyperadd(b, a))) {
                fail("commutative");
            }
            if (!(oag::group_add(oag::group_add(a, b), c) == oag::group_add(a, oag::group_add(b, c)))) {
                fail("associative");
            }
            if (oag::group_cmp(a, b) < 0 && a.is_finite() && b.is_finite() && e.is_finite()
                && !(oag::group_cmp(a + e, b + e) < 0)) {
                fail("order-compatible");
            }
            // Distributivity: e + (a [+] b) = (e + a) [+] (e + b).
            const auto sum = oag::trop_hyperadd(a, b);
            const auto shifted = sum.set_kind() == oag::trop_set::kind::singleton
                                     ? oag::trop_set::singleton(e + sum.value())
                                     : oag::trop_set::up_interval((e + sum.value()).finite());
            if (!(shifted == oag::trop_hyperadd(e + a, e + b))) {
                fail("distributive");
            }
            // Reversibility on members d of a [+] b: a in d [+] (b's inverse, which is b itself).
            std::vector<extended_value> members{sum.value()};
            if (sum.set_kind() == oag::trop_set::kind::up_interval) {
                members.push_back(extended_value::infinity());
                members.push_back(sum.value() + draw(false));
                const auto &g = members.back();
                if (!oag::trop_member(g, sum)) {
                    members.pop_back();
                }
            }
            for (const auto &m : members) {
                if (!oag::trop_member(m, sum)) {
                    fail("member-sampling");
                } else if (!oag::trop_member(a, oag::trop_hyperadd(m, b))) {
                    auto f = base();
                    f["check"] = "reversible";
                    f["member"] = json_io::to_json(m);
                    report.fail(std::move(f));
                }
            }
        }
    }
    return report;
}

// --- tower laws ----------------------------------------------------------------

std::vector<gamma_coset> cosets_at(std::span<const field_element> xs, long level)
{
    std::vector<gamma_coset> out;
    out.reserve(xs.size());
    for (const auto &x : xs) {
        out.push_back(coset_of(x, level));
    }
    return out;
}

law_report hom_suite(const config &cfg)
{
    law_report report("hom");
    std::mt19937_64 rng(cfg.seed);
    const long top = 3;
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto d = field_descriptor::rational(p);
        const auto xs = sample_elements(d, rng, cfg.samples, cfg.height);
        auto ys = sample_elements(d, rng, cfg.samples, cfg.height);
        // Cancelling pairs reach the zero-containing case.
        for (std::size_t i = 0; i < ys.size(); i += 4) {
            ys[i] = -xs[i];
        }
        for (long delta = 0; delta <= top; ++delta) {
            const auto xd = cosets_at(xs, delta);
            const auto yd = cosets_at(ys, delta);
            for (long gamma = 0; gamma <= delta; ++gamma) {
                const std::function<gamma_coset(const gamma_coset &)> rho = [gamma](const gamma_coset &c) {
                    return tower::project(c, gamma);
                };
                tower::hom_options opt;
                opt.ball_fast_path = true;
                opt.height = cfg.height;
                report.merge(tower::check_hom_law<gamma_coset>("rho", xd, yd, rho, rng, opt));
            }
            const std::function<extended_value(const gamma_coset &)> v = [](const gamma_coset &c) {
                return tower::v_gamma(c);
            };
            report.merge(tower::check_hom_law<extended_value>("v_gamma", xd, yd, v, rng));
        }
        const auto x1 = cosets_at(xs, 1);
        const auto y1 = cosets_at(ys, 1);
        const std::function<gamma_coset(const gamma_coset &)> square = [](const gamma_coset &c) {
            return coset_of(c.rep() * c.rep(), c.level());
        };
        expect_control_fires(report, tower::check_hom_law<gamma_coset>("square-control", x1, y1, square, rng));
    }
    return report;
}

law_report slice_suite(const config &cfg)
{
    law_report report("slice");
    std::mt19937_64 rng(cfg.seed);
    std::vector<long> levels(7);
    std::iota(levels.begin(), levels.end(), 0L);
    const auto pairs = tower::all_pairs(levels);
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto d = field_descriptor::rational(p);
        const auto xs = sample_elements(d, rng, cfg.samples, cfg.height);
        report.merge(tower::check_slice_triangles(pairs, xs));
        const tower::projector corrupted = [](const gamma_coset &c, const extended_value &g) {
            const auto bump = field_element::uniformizer_power(c.descriptor(), g.to_long());
            return coset_of(c.rep() + bump, g);
        };
        auto control = tower::check_slice_triangles(pairs, xs, corrupted);
        control.law = "corrupted-projection-control";
        expect_control_fires(report, control);
    }
    return report;
}

law_report cone_suite(const config &cfg)
{
    law_report report("cone");
    std::mt19937_64 rng(cfg.seed);
    std::vector<long> levels(7);
    std::iota(levels.begin(), levels.end(), 0L);
    const auto pairs = tower::all_pairs(levels);
    const std::function<json(const field_element &)> describe = [](const field_element &x) {
        return json_io::to_json(x);
    };
    const auto run = [&](const limit::cone &c, const std::vector<field_element> &xs) {
        const std::function<gamma_coset(long, const field_element &)> side = [&c](long g, const field_element &x) {
            return c.side(x, g);
        };
        report.merge(tower::cone_over_diagram<field_element>(c.name, side, pairs, xs, describe));
    };
    const auto q = field_descriptor::rational(5);
    const auto qs = sample_elements(q, rng, cfg.samples, cfg.height);
    run(limit::field_cone(q), qs);
    for (std::uint64_t p : {5u, 13u}) {
        const auto qd = field_descriptor::quadratic(p);
        run(limit::hensel_cone(qd), sample_elements(qd, rng, cfg.samples, cfg.height));
    }
    // Shift one side: level 2 sends x to [x + p^2]_2.
    const std::function<gamma_coset(long, const field_element &)> shifted = [](long g, const field_element &x) {
        const auto &d = x.descriptor();
        return g == 2 ? coset_of(x + field_element::uniformizer_power(d, 2), g) : coset_of(x, g);
    };
    expect_control_fires(report,
                         tower::cone_over_diagram<field_element>("shifted-side-control", shifted, pairs, qs, describe));
    return report;
}

// --- limit laws ------------------------------------------------------------------

law_report singlevalued_suite(const config &cfg)
{
    law_report report("singlevalued");
    std::mt19937_64 rng(cfg.seed);
    const long n = 16;
    const auto d = field_descriptor::rational(5);
    const auto one = field_element::one(d);
    report.merge(limit::check_singlevalued(limit::from_field(one), limit::from_field(one), n, 8, rng));
    report.merge(limit::check_singlevalued(limit::from_field(one), limit::from_field(-one), n, 8, rng));
    const std::size_t pairs = std::max<std::size_t>(1u, cfg.samples / 8u);
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto dp = field_descriptor::rational(p);
        for (std::size_t i = 0; i < pairs; ++i) {
            const auto x = nonzero_element(dp, rng, cfg.height);
            // Near-cancellation: y = -x + small.
            const auto y = i % 2u == 0u ? random_element(dp, rng, cfg.height)
                                        : -x + field_element::uniformizer_power(dp, 3) * nonzero_element(dp, rng, 5);
            report.merge(limit::check_singlevalued(limit::from_field(x), limit::from_field(y), n, 8, rng));
        }
    }
    return report;
}

law_report universal_suite(const config &cfg)
{
    law_report report("universal");
    std::mt19937_64 rng(cfg.seed);
    const long n = 16;
    const auto q = field_descriptor::rational(5);
    const auto qs = sample_elements(q, rng, std::max<std::size_t>(cfg.samples / 4u, 2u), cfg.height);
    const limit::candidate_map from_field{"from_field",
                                          [](const field_element &x) { return limit::from_field(x); }};
    const limit::candidate_map negated{"negation-control", [](const field_element &x) {
                                           return limit::limit_neg(limit::from_field(x));
                                       }};
    auto with_control = limit::check_universal_property(limit::field_cone(q), std::vector{from_field, negated}, qs, n);
    const auto misses = with_control.details["candidate_mismatches"];
    if (misses["from_field"].get<long>() != 0) {
        report.fail({{"check", "from_field-candidate"}, {"mismatches", misses["from_field"]}});
    }
    report.details["negation-control"] = misses["negation-control"];
    if (misses["negation-control"].get<long>() == 0) {
        report.fail({{"check", "negative-control"}, {"control", "negation-control"}});
    }
    report.samples += with_control.samples;
    for (const auto &f : with_control.failures) {
        if (f.value("candidate", "") != "negation-control") {
            report.fail(f);
        }
    }

    const auto qd = field_descriptor::quadratic(5);
    const auto rf = limit::hensel_finder(qd);
    const limit::candidate_map sigma{"sigma", [rf](const field_element &x) { return limit::sigma_embed(x, rf); }};
    const auto ls = sample_elements(qd, rng, std::max<std::size_t>(cfg.samples / 4u, 2u), cfg.height);
    report.merge(limit::check_universal_property(limit::hensel_cone(qd), std::vector{sigma}, ls, n));
    return report;
}

law_report oracle_roundtrip_suite(const config &cfg)
{
    law_report report("oracle-roundtrip");
    std::mt19937_64 rng(cfg.seed);
    const std::size_t n = 16;
    const std::array<field_descriptor, 4> fields{field_descriptor::rational(2), field_descriptor::rational(3),
                                                 field_descriptor::rational(5), field_descriptor::function_field(5)};
    const std::array<arith_op, 4> ops{arith_op::add, arith_op::mul, arith_op::neg, arith_op::inv};
    for (const auto &d : fields) {
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            ++report.samples;
            const auto op = ops[i % ops.size()];
            const auto x = op == arith_op::inv ? nonzero_element(d, rng, cfg.height) : random_element(d, rng, cfg.height);
            const auto y = random_element(d, rng, cfg.height);
            const auto exact = op == arith_op::add || op == arith_op::mul ? f_arith(op, x, y) : f_arith(op, x);
            const auto result = limit::limit_arith(op, limit::from_field(x), limit::from_field(y)).value;
            const auto got = limit::to_approximation(result, n);
            const auto want = oracle_expand(exact, n);
            if (!(got == want)) {
                report.fail({{"check", "arith-vs-oracle"},
                             {"field", json_io::to_json(d)},
                             {"op", static_cast<int>(op)},
                             {"x", json_io::to_json(x)},
                             {"y", json_io::to_json(y)},
                             {"got", json_io::to_json(got)},
                             {"want", json_io::to_json(want)}});
            }
            const auto rebuilt = limit::from_approximation(limit::to_approximation(limit::from_field(x), n), d);
            const auto eq = limit::limit_eq(limit::from_field(x), rebuilt, static_cast<long>(n) - 1);
            if (!std::holds_alternative<limit::equal_up_to>(eq)) {
                report.fail({{"check", "roundtrip"}, {"x", json_io::to_json(x)}, {"comparison", limit::to_json(eq)}});
            }
        }
    }
    return report;
}

} // namespace

std::optional<lee_witness> definitional_member(const field_element &x, const field_element &y,
                                               const field_element &z, long gamma)
{
    const auto &d = x.descriptor();
    const auto one = field_element::one(d);
    if (y.is_zero()) {
        // {[x]}: z t = x.
        if (x.is_zero() || z.is_zero()) {
            return x.is_zero() && z.is_zero() ? std::optional<lee_witness>({one, one}) : std::nullopt;
        }
        const auto t = x / z;
        return is_one_unit(t, gamma) ? std::optional<lee_witness>({t, one}) : std::nullopt;
    }
    // t = 1: u = (z - x) / y.
    const auto u = (z - x) / y;
    if (is_one_unit(u, gamma)) {
        return lee_witness{one, u};
    }
    // u = 1: t = (x + y) / z.
    if (!z.is_zero() && !(x + y).is_zero()) {
        const auto t = (x + y) / z;
        if (is_one_unit(t, gamma)) {
            return lee_witness{t, one};
        }
    }
    return std::nullopt;
}

const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names{"lee",          "tropical",  "hom",
                                                "cone",         "slice",     "singlevalued",
                                                "universal",    "oracle-roundtrip"};
    return names;
}

tower::law_report run_suite(const std::string &name, const config &cfg)
{
    if (name == "lee") {
        return lee_suite(cfg);
    }
    if (name == "tropical") {
        return tropical_suite(cfg);
    }
    if (name == "hom") {
        return hom_suite(cfg);
    }
    if (name == "cone") {
        return cone_suite(cfg);
    }
    if (name == "slice") {
        return slice_suite(cfg);
    }
    if (name == "singlevalued") {
        return singlevalued_suite(cfg);
    }
    if (name == "universal") {
        return universal_suite(cfg);
    }
    if (name == "oracle-roundtrip") {
        return oracle_roundtrip_suite(cfg);
    }
    throw std::invalid_argument("unknown law suite '" + name + "'");
}

} // namespace hypertower::laws
