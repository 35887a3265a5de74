#include <hypertower/limit.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include <hypertower/errors.hpp>
#include <hypertower/json_io.hpp>

namespace hypertower::limit
{

// --- precision ledger --------------------------------------------------------

long precision_ledger::total_loss() const
{
    return std::accumulate(losses.begin(), losses.end(), 0L, [](long acc, const auto &t) { return acc + t.loss; });
}

nlohmann::json precision_ledger::to_json() const
{
    auto terms = nlohmann::json::array();
    for (const auto &t : losses) {
        terms.push_back({{"operation", t.operation},
                         {"min_valuation", json_io::to_json(t.min_valuation)},
                         {"result_valuation", json_io::to_json(t.result_valuation)},
                         {"loss", t.loss}});
    }
    nlohmann::json out{{"requested", requested}, {"delivered", delivered}, {"losses", std::move(terms)}};
    if (declared_zero_at) {
        out["declared_zero_at"] = *declared_zero_at;
    }
    return out;
}

// --- coherent_element --------------------------------------------------------

struct coherent_element::state {
    explicit state(field_descriptor d) : desc(d) {}

    field_descriptor desc;
    generator_fn gen;
    nlohmann::json provenance;
    std::optional<long> max_level;
    std::vector<loss_term> path_losses;
    std::optional<long> declared_zero_at;
    long zero_probe_bound = default_zero_probe_bound;

    mutable std::shared_mutex mutex;
    std::map<long, gamma_coset> levels;
};

struct arith_access {
    static coherent_element::state &of(const coherent_element &e)
    {
        return *e.m_state;
    }
};

coherent_element::coherent_element(field_descriptor d, generator_fn gen, nlohmann::json provenance,
                                   std::optional<long> max_level)
    : m_state(std::make_shared<state>(d))
{
    m_state->gen = std::move(gen);
    m_state->provenance = std::move(provenance);
    m_state->max_level = max_level;
}

const field_descriptor &coherent_element::descriptor() const
{
    return m_state->desc;
}

gamma_coset coherent_element::at(long level) const
{
    if (level < 0) {
        throw level_error("negative level " + std::to_string(level));
    }
    auto &s = *m_state;
    if (s.max_level && level > *s.max_level) {
        throw precision_exhausted("level " + std::to_string(level) + " beyond the known precision (max level "
                                  + std::to_string(*s.max_level) + ")");
    }
    {
        std::shared_lock lock(s.mutex);
        if (const auto it = s.levels.find(level); it != s.levels.end()) {
            return it->second;
        }
    }
    std::unique_lock lock(s.mutex);
    if (const auto it = s.levels.find(level); it != s.levels.end()) {
        return it->second;
    }
    auto c = s.gen(level);
    if (!(c.level() == extended_value::integer(level)) || !(c.descriptor() == s.desc)) {
        throw contract_violation("generator returned " + c.to_string() + " over " + c.descriptor().to_string(),
                                 level);
    }
    const auto upper = s.levels.upper_bound(level);
    if (upper != s.levels.end() && !krasner::coset_eq(tower::project(upper->second, level), c)) {
        throw contract_violation("projection of level " + std::to_string(upper->first) + " disagrees with "
                                     + c.to_string(),
                                 level);
    }
    if (upper != s.levels.begin()) {
        const auto lower = std::prev(upper);
        if (!krasner::coset_eq(tower::project(c, lower->first), lower->second)) {
            throw contract_violation(c.to_string() + " does not project to " + lower->second.to_string(), level);
        }
    }
    s.levels.emplace(level, c);
    return c;
}

extended_value coherent_element::valuation() const
{
    return at(0).value();
}

bool coherent_element::is_zero() const
{
    return at(0).is_zero();
}

std::optional<long> coherent_element::max_level() const
{
    return m_state->max_level;
}

const nlohmann::json &coherent_element::provenance() const
{
    return m_state->provenance;
}

const std::vector<loss_term> &coherent_element::path_losses() const
{
    return m_state->path_losses;
}

std::optional<long> coherent_element::declared_zero_at() const
{
    return m_state->declared_zero_at;
}

long coherent_element::zero_probe_bound() const
{
    return m_state->zero_probe_bound;
}

void coherent_element::set_zero_probe_bound(long bound)
{
    m_state->zero_probe_bound = bound;
}

std::size_t coherent_element::materialized() const
{
    std::shared_lock lock(m_state->mutex);
    return m_state->levels.size();
}

nlohmann::json coherent_element::to_json(long n) const
{
    auto cosets = nlohmann::json::array();
    for (long g = 0; g < n; ++g) {
        cosets.push_back(json_io::to_json(at(g)));
    }
    return {{"provenance", provenance()}, {"cosets", std::move(cosets)}};
}

// --- constructors and digits --------------------------------------------------

coherent_element from_field(const field_element &x)
{
    return coherent_element(
        x.descriptor(), [x](long level) { return krasner::coset_of(x, level); },
        {{"kind", "from_field"}, {"x", json_io::to_json(x)}});
}

coherent_element from_approximation(const approximation &a, const field_descriptor &d)
{
    nlohmann::json prov{{"kind", "approximation"}, {"approximation", json_io::to_json(a)}};
    if (a.is_zero()) {
        const auto zero = field_element::zero(d);
        return coherent_element(d, [zero](long level) { return krasner::coset_of(zero, level); }, std::move(prov));
    }
    const auto y = resum(a, d);
    const auto first = static_cast<long>(
        std::find_if(a.digits.begin(), a.digits.end(), [](auto x) { return x != 0u; }) - a.digits.begin());
    const long max_level = static_cast<long>(a.precision()) - 1 - first;
    return coherent_element(
        d, [y](long level) { return krasner::coset_of(y, level); }, std::move(prov), max_level);
}

namespace
{

std::vector<std::uint64_t> unit_digits(const mpq_class &u, std::uint64_t p, std::size_t n)
{
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), p, n);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), u.get_den().get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::logic_error("denominator of a unit divisible by p");
    }
    mpz_class r = u.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    std::vector<std::uint64_t> digits(n, 0u);
    for (auto &d : digits) {
        d = mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    }
    return digits;
}

// Coefficients of num / den mod t^n, den(0) != 0.
std::vector<std::uint64_t> series_digits(const fp_poly &num, const fp_poly &den, std::size_t n)
{
    const auto p = num.modulus();
    const auto d0_inv = fp_inverse(den.coeff(0), p);
    std::vector<std::uint64_t> inv(n, 0u);
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t acc = k == 0u ? 1u : 0u;
        for (std::size_t j = 1; j <= k; ++j) {
            acc = (acc + p - (den.coeff(j) * inv[k - j]) % p) % p;
        }
        inv[k] = (acc * d0_inv) % p;
    }
    std::vector<std::uint64_t> out(n, 0u);
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = num.coeff(i);
        if (a == 0u) {
            continue;
        }
        for (std::size_t j = 0; i + j < n; ++j) {
            out[i + j] = (out[i + j] + a * inv[j]) % p;
        }
    }
    return out;
}

} // namespace

approximation to_approximation(const coherent_element &e, std::size_t n)
{
    if (n == 0u) {
        throw std::invalid_argument("approximation needs at least one digit");
    }
    const auto &d = e.descriptor();
    if (e.is_zero()) {
        return approximation{d.p(), 0, std::vector<std::uint64_t>(n, 0u)};
    }
    const auto v = e.valuation().to_long();
    const auto rep = e.at(static_cast<long>(n) - 1).rep();
    const auto unit = rep * field_element::uniformizer_power(d, -v);
    switch (d.kind()) {
        case field_kind::rational:
            return approximation{d.p(), v, unit_digits(unit.as_rational(), d.p(), n)};
        case field_kind::function_field: {
            const auto &f = unit.as_function();
            return approximation{d.p(), v, series_digits(f.num, f.den, n)};
        }
        case field_kind::quadratic:
            return oracle_expand(rep, n);
    }
    throw std::logic_error("unknown field kind");
}

// --- arithmetic --------------------------------------------------------------

namespace
{

void check_same_field(const coherent_element &a, const coherent_element &b)
{
    if (!(a.descriptor() == b.descriptor())) {
        throw descriptor_mismatch("limit arithmetic across " + a.descriptor().to_string() + " and "
                                  + b.descriptor().to_string());
    }
}

std::optional<long> min_level(const coherent_element &a, const coherent_element &b)
{
    if (a.max_level() && b.max_level()) {
        return std::min(*a.max_level(), *b.max_level());
    }
    return a.max_level() ? a.max_level() : b.max_level();
}

const std::vector<loss_term> &costlier(const coherent_element &a, const coherent_element &b)
{
    const auto total = [](const auto &v) {
        return std::accumulate(v.begin(), v.end(), 0L, [](long acc, const auto &t) { return acc + t.loss; });
    };
    return total(a.path_losses()) >= total(b.path_losses()) ? a.path_losses() : b.path_losses();
}

nlohmann::json arith_provenance(const char *op, const coherent_element &a, const coherent_element *b)
{
    nlohmann::json out{{"kind", "arith"}, {"op", op}, {"lhs", a.provenance()}};
    if (b != nullptr) {
        out["rhs"] = b->provenance();
    }
    return out;
}

coherent_element zero_element(const field_descriptor &d, nlohmann::json provenance)
{
    const auto zero = field_element::zero(d);
    return coherent_element(d, [zero](long level) { return krasner::coset_of(zero, level); }, std::move(provenance));
}

coherent_element add_impl(const coherent_element &a, const coherent_element &b)
{
    check_same_field(a, b);
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    const auto &d = a.descriptor();
    const auto va = a.valuation();
    const auto vb = b.valuation();
    const auto m = oag::min(va, vb);
    const long ml = m.to_long();
    const long bound = std::max(a.zero_probe_bound(), b.zero_probe_bound());
    const auto limit = min_level(a, b);

    // Find v(a + b): once v(s) <= lambda + m for the level-lambda sum s, the
    // representative error (valuation > lambda + m) cannot reach it.
    std::optional<long> v_sum;
    long probed = 0;
    for (long lambda = 0; lambda <= bound && (!limit || lambda <= *limit); ++lambda) {
        probed = lambda;
        const auto s = a.at(lambda).rep() + b.at(lambda).rep();
        if (!s.is_zero()) {
            const long vs = valuation(s).to_long();
            if (vs <= lambda + ml) {
                v_sum = vs;
                break;
            }
        }
    }
    if (!v_sum) {
        auto out = zero_element(d, arith_provenance("add", a, &b));
        auto &st = arith_access::of(out);
        st.declared_zero_at = probed;
        st.path_losses = costlier(a, b);
        return out;
    }
    const long loss = *v_sum - ml;
    std::optional<long> max_level;
    if (limit) {
        max_level = *limit - loss;
    }
    coherent_element out(
        d,
        [a, b, loss](long level) {
            return krasner::coset_of(a.at(level + loss).rep() + b.at(level + loss).rep(), level);
        },
        arith_provenance("add", a, &b), max_level);
    auto &st = arith_access::of(out);
    st.path_losses = costlier(a, b);
    st.path_losses.push_back({"add", m, extended_value::integer(*v_sum), loss});
    st.zero_probe_bound = bound;
    return out;
}

coherent_element mul_impl(const coherent_element &a, const coherent_element &b)
{
    check_same_field(a, b);
    coherent_element out(
        a.descriptor(), [a, b](long level) { return krasner::coset_mul(a.at(level), b.at(level)); },
        arith_provenance("mul", a, &b), min_level(a, b));
    auto &st = arith_access::of(out);
    st.path_losses = costlier(a, b);
    st.zero_probe_bound = std::max(a.zero_probe_bound(), b.zero_probe_bound());
    return out;
}

coherent_element neg_impl(const coherent_element &a)
{
    coherent_element out(
        a.descriptor(), [a](long level) { return krasner::coset_neg(a.at(level)); },
        arith_provenance("neg", a, nullptr), a.max_level());
    auto &st = arith_access::of(out);
    st.path_losses = a.path_losses();
    st.zero_probe_bound = a.zero_probe_bound();
    return out;
}

coherent_element inv_impl(const coherent_element &a)
{
    if (a.declared_zero_at()) {
        throw precision_exhausted("inverse of an element indistinguishable from 0 up to level "
                                  + std::to_string(*a.declared_zero_at()) + " (zero probe bound reached)");
    }
    if (a.is_zero()) {
        throw zero_division("inverse of the zero element of the completion");
    }
    coherent_element out(
        a.descriptor(), [a](long level) { return krasner::coset_inv(a.at(level)); },
        arith_provenance("inv", a, nullptr), a.max_level());
    auto &st = arith_access::of(out);
    st.path_losses = a.path_losses();
    st.zero_probe_bound = a.zero_probe_bound();
    return out;
}

} // namespace

arith_result limit_arith(arith_op op, const coherent_element &a, const std::optional<coherent_element> &b,
                         long requested)
{
    const auto need_b = [&]() -> const coherent_element & {
        if (!b) {
            throw std::invalid_argument("binary operation needs two operands");
        }
        return *b;
    };
    std::optional<coherent_element> value;
    switch (op) {
        case arith_op::add:
            value = add_impl(a, need_b());
            break;
        case arith_op::mul:
            value = mul_impl(a, need_b());
            break;
        case arith_op::neg:
            value = neg_impl(a);
            break;
        case arith_op::inv:
            value = inv_impl(a);
            break;
    }
    precision_ledger ledger;
    ledger.requested = requested;
    ledger.losses = value->path_losses();
    ledger.delivered = requested - ledger.total_loss();
    ledger.declared_zero_at = value->declared_zero_at();
    return {std::move(*value), std::move(ledger)};
}

coherent_element limit_add(const coherent_element &a, const coherent_element &b)
{
    return add_impl(a, b);
}

coherent_element limit_mul(const coherent_element &a, const coherent_element &b)
{
    return mul_impl(a, b);
}

coherent_element limit_neg(const coherent_element &a)
{
    return neg_impl(a);
}

coherent_element limit_inv(const coherent_element &a)
{
    return inv_impl(a);
}

// --- equality ----------------------------------------------------------------

eq_result limit_eq(const coherent_element &a, const coherent_element &b, long n)
{
    check_same_field(a, b);
    for (long g = 0; g <= n; ++g) {
        auto x = a.at(g);
        auto y = b.at(g);
        if (!krasner::coset_eq(x, y)) {
            return distinct{g, std::move(x), std::move(y)};
        }
    }
    return equal_up_to{n};
}

bool equal_up_to_level(const coherent_element &a, const coherent_element &b, long n)
{
    return std::holds_alternative<equal_up_to>(limit_eq(a, b, n));
}

nlohmann::json to_json(const eq_result &r)
{
    if (const auto *e = std::get_if<equal_up_to>(&r)) {
        return {{"result", "equal_up_to"}, {"level", e->level}};
    }
    const auto &d = std::get<distinct>(r);
    return {{"result", "distinct"},
            {"level", d.level},
            {"lhs", json_io::to_json(d.lhs)},
            {"rhs", json_io::to_json(d.rhs)}};
}

// --- sigma embedding ----------------------------------------------------------

representative_finder hensel_finder(const field_descriptor &quadratic)
{
    if (quadratic.kind() != field_kind::quadratic) {
        throw descriptor_mismatch("Hensel finder needs a quadratic field, got " + quadratic.to_string());
    }
    const auto target = field_descriptor::rational(quadratic.p());
    const auto p = quadratic.p();
    return {"hensel", target, [target, p](const field_element &x, long level) {
                if (x.descriptor().kind() != field_kind::quadratic || x.descriptor().p() != p) {
                    throw descriptor_mismatch("Hensel finder applied outside its field");
                }
                const auto &q = x.as_quadratic();
                if (q.b == 0) {
                    return field_element::rational(target, q.a);
                }
                // v(b (s - s_M)) >= v(b) + M must exceed level + w(x).
                const long w = valuation(x).to_long();
                const long depth = std::max(1L, level + w - padic_valuation(q.b, p) + 1);
                const mpz_class s = embedding_root(p, static_cast<std::size_t>(depth));
                return field_element::rational(target, q.a + q.b * mpq_class(s));
            }};
}

representative_finder identity_finder(const field_descriptor &d)
{
    return {"identity", d, [](const field_element &x, long) { return x; }};
}

coherent_element sigma_embed(const field_element &x, const representative_finder &rf)
{
    const auto w = valuation(x);
    auto find = rf.find;
    return coherent_element(
        rf.target,
        [x, w, find](long level) {
            const auto y = find(x, level);
            const auto vy = valuation(y);
            if (!(vy == w)) {
                throw contract_violation("representative " + y.to_string() + " has value " + oag::to_string(vy)
                                             + ", expected " + oag::to_string(w),
                                         level);
            }
            return krasner::coset_of(y, level);
        },
        {{"kind", "sigma"}, {"finder", rf.name}, {"x", json_io::to_json(x)}});
}

// --- single-valuedness ----------------------------------------------------------

namespace
{

field_element integral_sample(const field_descriptor &d, std::mt19937_64 &rng, long height)
{
    auto w = random_element(d, rng, height);
    if (w.is_zero()) {
        return w;
    }
    const long v = valuation(w).to_long();
    return v < 0 ? w * field_element::uniformizer_power(d, -v) : w;
}

} // namespace

tower::law_report check_singlevalued(const coherent_element &a, const coherent_element &b, long n,
                                     std::size_t samples, std::mt19937_64 &rng, long height)
{
    tower::law_report report("singlevalued");
    check_same_field(a, b);
    const auto &d = a.descriptor();
    const auto sum = limit_add(a, b);
    const bool zero_sum = sum.is_zero();
    const auto m = oag::min(a.valuation(), b.valuation());
    if (m.is_infinite()) {
        // 0 + 0: every hypersum is {[0]}.
        ++report.samples;
        if (!zero_sum) {
            report.fail({{"check", "zero-plus-zero"}});
        }
        return report;
    }
    const long ml = m.to_long();
    const long vs = zero_sum ? ml : sum.valuation().to_long();

    enum class family { center, shrinking, ball, fixed };
    long accepted = 0, incoherent = 0, nonmember = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        ++report.samples;
        const auto kind = static_cast<family>(i % 4u);
        const std::uint64_t seed = rng();
        const long extra = static_cast<long>(i % 3u);
        const bool unit_perturbation = i == 1u;
        const auto fixed_w = [&] {
            std::mt19937_64 local(seed);
            return integral_sample(d, local, height);
        }();
        const auto perturbation = [=, &d](long level) -> field_element {
            std::mt19937_64 local(seed + static_cast<std::uint64_t>(level));
            const auto w = unit_perturbation ? field_element::one(d) : integral_sample(d, local, height);
            switch (kind) {
                case family::center:
                    return field_element::zero(d);
                case family::shrinking:
                    return field_element::uniformizer_power(d, level + vs + 1 + extra) * w;
                case family::ball:
                    return field_element::uniformizer_power(d, level + ml + 1) * w;
                case family::fixed:
                    return field_element::uniformizer_power(d, ml + 1) * fixed_w;
            }
            return field_element::zero(d);
        };
        coherent_element z(
            d,
            [a, b, perturbation](long level) {
                return krasner::coset_of(a.at(level).rep() + b.at(level).rep() + perturbation(level), level);
            },
            {{"kind", "member-family"}, {"family", static_cast<int>(kind)}});
        const bool expected_valid = kind == family::center || (kind == family::shrinking && !zero_sum);

        std::string rejection;
        long rejected_at = -1;
        try {
            for (long g = 0; g <= n; ++g) {
                const auto c = z.at(g);
                if (!krasner::hypersum_contains(krasner::hyperadd(a.at(g), b.at(g)), c)) {
                    rejection = "nonmember";
                    rejected_at = g;
                    break;
                }
                if (zero_sum && !c.is_zero() && !(c.value() > extended_value::integer(g + ml))) {
                    report.fail({{"check", "zero-sum-member-value"}, {"family", i}, {"level", g}});
                }
            }
        } catch (const contract_violation &e) {
            rejection = "incoherent";
            rejected_at = e.level();
        }
        if (rejection.empty()) {
            ++accepted;
            const auto eq = limit_eq(z, sum, n);
            if (!std::holds_alternative<equal_up_to>(eq)) {
                report.fail({{"check", "agreement"}, {"family", i}, {"comparison", to_json(eq)}});
            }
        } else {
            (rejection == "nonmember" ? nonmember : incoherent) += 1;
            if (expected_valid) {
                report.fail({{"check", "valid-family-rejected"},
                             {"family", i},
                             {"reason", rejection},
                             {"level", rejected_at}});
            }
        }
    }
    report.details = {{"accepted", accepted},
                      {"rejected_incoherent", incoherent},
                      {"rejected_nonmember", nonmember},
                      {"zero_sum_cases", zero_sum ? 1 : 0}};
    return report;
}

// --- universal property ----------------------------------------------------------

cone field_cone(const field_descriptor &k)
{
    return {"field:" + k.to_string(), k, [](const field_element &x, long level) { return krasner::coset_of(x, level); }};
}

cone hensel_cone(const field_descriptor &quadratic)
{
    const auto rf = hensel_finder(quadratic);
    return {"hensel:" + quadratic.to_string(), quadratic,
            [rf](const field_element &x, long level) { return krasner::coset_of(rf.find(x, level), level); }};
}

tower::law_report check_universal_property(const cone &c, std::span<const candidate_map> candidates,
                                           std::span<const field_element> samples, long n)
{
    tower::law_report report("universal");
    std::vector<tower::level_pair> pairs;
    for (long g = 0; g < n; ++g) {
        pairs.push_back(tower::level_pair::make(g, g + 1));
    }
    pairs.push_back(tower::level_pair::make(0, n));
    const std::function<gamma_coset(long, const field_element &)> side = [&c](long level, const field_element &x) {
        return c.side(x, level);
    };
    const std::function<nlohmann::json(const field_element &)> describe = [](const field_element &x) {
        return json_io::to_json(x);
    };
    report.merge(tower::cone_over_diagram<field_element>("cone", side, pairs, samples, describe));

    if (samples.empty()) {
        return report;
    }
    const auto target = c.side(samples.front(), 0).descriptor();
    const representative_finder from_sides{"sides:" + c.name, target, [side](const field_element &x, long level) {
                                               return side(level, x).rep();
                                           }};
    nlohmann::json mismatches = nlohmann::json::object();
    for (const auto &cand : candidates) {
        mismatches[cand.name] = 0;
    }
    for (const auto &x : samples) {
        ++report.samples;
        const auto h = sigma_embed(x, from_sides);
        try {
            for (long g = 0; g <= n; ++g) {
                if (!krasner::coset_eq(h.at(g), c.side(x, g))) {
                    report.fail({{"check", "factorization"}, {"x", json_io::to_json(x)}, {"level", g}});
                    break;
                }
            }
        } catch (const contract_violation &e) {
            report.fail({{"check", "mediating-map"}, {"x", json_io::to_json(x)}, {"error", e.what()}});
            continue;
        }
        for (const auto &cand : candidates) {
            const auto eq = limit_eq(h, cand.map(x), n);
            if (!std::holds_alternative<equal_up_to>(eq)) {
                mismatches[cand.name] = mismatches[cand.name].get<long>() + 1;
                report.fail({{"check", "uniqueness"},
                             {"candidate", cand.name},
                             {"x", json_io::to_json(x)},
                             {"comparison", to_json(eq)}});
            }
        }
    }
    report.details = {{"cone", c.name}, {"candidate_mismatches", mismatches}};
    return report;
}

} // namespace hypertower::limit
