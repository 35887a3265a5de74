#include <hypertower/krasner.hpp>

#include <algorithm>
#include <stdexcept>

#include <hypertower/errors.hpp>

namespace hypertower::krasner
{

namespace
{

void check_compatible(const gamma_coset &a, const gamma_coset &b)
{
    if (!(a.descriptor() == b.descriptor())) {
        throw descriptor_mismatch("cosets over " + a.descriptor().to_string() + " and "
                                  + b.descriptor().to_string());
    }
    if (!(a.level() == b.level())) {
        throw level_error("cosets at levels " + oag::to_string(a.level()) + " and " + oag::to_string(b.level()));
    }
}

// Integral element: v(w) >= 0.
field_element random_integral(const field_descriptor &d, std::mt19937_64 &rng, long height)
{
    const auto p = static_cast<long>(d.p());
    std::uniform_int_distribution<long> num(-height, height), den(1, std::max<long>(height, 2));
    const auto unit_den = [&] {
        long q = den(rng);
        while (q % p == 0) {
            q = den(rng);
        }
        return q;
    };
    switch (d.kind()) {
        case field_kind::rational:
            return field_element::rational(d, mpq_class(num(rng), unit_den()));
        case field_kind::quadratic:
            return field_element::quadratic(d, mpq_class(num(rng), unit_den()), mpq_class(num(rng), unit_den()));
        case field_kind::function_field: {
            std::uniform_int_distribution<long> deg(0, std::max<long>(height - 1, 0));
            std::uniform_int_distribution<std::int64_t> coeff(0, p - 1);
            const auto poly = [&](bool unit) {
                std::vector<std::int64_t> c(static_cast<std::size_t>(deg(rng)) + 1u);
                for (auto &x : c) {
                    x = coeff(rng);
                }
                if (unit) {
                    std::uniform_int_distribution<std::int64_t> nz(1, p - 1);
                    c[0] = nz(rng);
                }
                return fp_poly(d.p(), c);
            };
            return field_element::function(d, poly(false), poly(true));
        }
    }
    throw std::logic_error("unknown field kind");
}

} // namespace

gamma_coset::gamma_coset(field_element rep, extended_value level)
    : m_rep(std::move(rep)), m_level(std::move(level)), m_value(valuation(m_rep))
{
    if (m_level.is_infinite() || m_level.finite().arity() != 1u) {
        throw level_error("coset level must be a finite integer");
    }
    if (m_level.integer() < 0) {
        throw level_error("coset level must be >= 0, got " + oag::to_string(m_level));
    }
}

std::string gamma_coset::to_string() const
{
    return "[" + m_rep.to_string() + "]_" + oag::to_string(m_level);
}

gamma_coset coset_of(const field_element &x, const extended_value &level)
{
    return gamma_coset(x, level);
}

gamma_coset coset_of(const field_element &x, long level)
{
    return gamma_coset(x, extended_value::integer(level));
}

bool coset_eq(const gamma_coset &a, const gamma_coset &b)
{
    check_compatible(a, b);
    if (a.is_zero() || b.is_zero()) {
        return a.is_zero() && b.is_zero();
    }
    if (!(a.value() == b.value())) {
        return false;
    }
    return valuation(a.rep() - b.rep()) > a.level() + a.value();
}

gamma_coset coset_mul(const gamma_coset &a, const gamma_coset &b)
{
    check_compatible(a, b);
    return gamma_coset(a.rep() * b.rep(), a.level());
}

gamma_coset coset_inv(const gamma_coset &a)
{
    if (a.is_zero()) {
        throw zero_division("inverse of the zero coset");
    }
    return gamma_coset(a.rep().inverse(), a.level());
}

gamma_coset coset_neg(const gamma_coset &a)
{
    return gamma_coset(-a.rep(), a.level());
}

extended_value coset_value(const gamma_coset &a)
{
    return a.value();
}

std::optional<canonical_key> canonical_form(const gamma_coset &a)
{
    if (a.is_zero() || a.descriptor().kind() != field_kind::rational) {
        return std::nullopt;
    }
    const auto p = a.descriptor().p();
    const long e = a.value().to_long();
    const auto unit = a.rep() * field_element::uniformizer_power(a.descriptor(), -e);
    const auto &q = unit.as_rational();
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(a.level().to_long()) + 1u);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), m.get_mpz_t());
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), mpz_class(q.get_num() * inv).get_mpz_t(), m.get_mpz_t());
    return canonical_key{e, r};
}

hyper_sum hyperadd(const gamma_coset &a, const gamma_coset &b)
{
    check_compatible(a, b);
    const auto sum = coset_of(a.rep() + b.rep(), a.level());
    if (a.is_zero() || b.is_zero()) {
        // [x] + [0] = {[x]}, including [0] + [0] = {[0]}.
        const auto &other = a.is_zero() ? b : a;
        return hyper_sum{a.level(), sum, a.level() + other.value(), other.is_zero(), other};
    }
    auto radius = a.level() + oag::min(a.value(), b.value());
    const bool zero = sum.value() > radius;
    return hyper_sum{a.level(), sum, std::move(radius), zero, std::nullopt};
}

bool hypersum_contains(const hyper_sum &s, const gamma_coset &c)
{
    check_compatible(s.center, c);
    if (s.singleton) {
        return coset_eq(*s.singleton, c);
    }
    if (c.is_zero()) {
        return s.contains_zero;
    }
    return valuation(c.rep() - s.center.rep()) > s.radius;
}

bool value_set::contains(const extended_value &e) const
{
    if (set_kind == kind::singleton) {
        return e == value;
    }
    return e > value;
}

value_set hypersum_value_set(const hyper_sum &s)
{
    if (s.singleton) {
        return {value_set::kind::singleton, s.singleton->value()};
    }
    if (!s.contains_zero) {
        return {value_set::kind::singleton, s.center.value()};
    }
    return {value_set::kind::open_ray, s.radius};
}

element_ball as_element_ball(const hyper_sum &s)
{
    if (s.singleton) {
        const auto &x = *s.singleton;
        return {x.rep(), x.level() + x.value(), x.is_zero()};
    }
    return {s.center.rep(), s.radius, false};
}

bool ball_subset(const element_ball &inner, const element_ball &outer)
{
    if (inner.zero_only) {
        return outer.zero_only || valuation(outer.center) > outer.radius;
    }
    if (outer.zero_only) {
        return false;
    }
    return inner.radius >= outer.radius && valuation(inner.center - outer.center) > outer.radius;
}

bool verify_certificate(std::span<const gamma_coset> summands, const gamma_coset &c,
                        std::span<const gamma_coset> certificate)
{
    if (summands.size() < 2u || certificate.size() + 2u != summands.size()) {
        return false;
    }
    gamma_coset acc = summands[0];
    for (std::size_t j = 1; j < summands.size(); ++j) {
        const auto &next = (j + 1u == summands.size()) ? c : certificate[j - 1u];
        if (!hypersum_contains(hyperadd(acc, summands[j]), next)) {
            return false;
        }
        acc = next;
    }
    return true;
}

iterated_membership iterated_contains(std::span<const gamma_coset> summands, const gamma_coset &c,
                                      std::size_t search_bound)
{
    if (summands.size() < 2u) {
        throw std::invalid_argument("iterated_contains needs at least two summands");
    }
    for (const auto &s : summands) {
        check_compatible(s, c);
    }
    const auto &d = c.descriptor();
    const auto &level = c.level();

    std::vector<field_element> partial;
    partial.reserve(summands.size());
    partial.push_back(summands[0].rep());
    for (std::size_t j = 1; j < summands.size(); ++j) {
        partial.push_back(partial.back() + summands[j].rep());
    }
    const auto &total = partial.back();

    const auto chain_with_discrepancy = [&](std::size_t at, const field_element &delta) {
        // Partial sums, shifted by delta from step `at` on.
        std::vector<gamma_coset> cert;
        for (std::size_t j = 1; j + 1u < summands.size(); ++j) {
            cert.push_back(coset_of(j >= at ? partial[j] + delta : partial[j], level));
        }
        return cert;
    };

    // [x_0 + ... + x_k] is always a member; the chain of partial sums witnesses it.
    if (coset_eq(c, coset_of(total, level))) {
        return {iterated_membership::verdict::member, chain_with_discrepancy(summands.size(), field_element::zero(d))};
    }

    const bool all_zero = std::all_of(summands.begin(), summands.end(), [](const auto &s) { return s.is_zero(); });
    if (all_zero) {
        return {iterated_membership::verdict::non_member, {}};
    }

    // Necessary bound after scaling all summands into the valuation ring:
    // membership forces v(sum - y) > gamma + m, m the least summand value.
    extended_value least = extended_value::infinity();
    for (const auto &s : summands) {
        least = oag::min(least, s.value());
    }
    const auto discrepancy = c.rep() - total;
    if (!(valuation(discrepancy) > level + least)) {
        return {iterated_membership::verdict::non_member, {}};
    }

    // Absorb the discrepancy into one intermediate step.
    std::size_t tried = 0;
    for (std::size_t at = 1; at < summands.size() && tried < search_bound; ++at, ++tried) {
        auto cert = chain_with_discrepancy(at, discrepancy);
        if (verify_certificate(summands, c, cert)) {
            return {iterated_membership::verdict::member, std::move(cert)};
        }
    }
    return {iterated_membership::verdict::unknown, {}};
}

field_element random_one_unit(const field_descriptor &d, const extended_value &level, std::mt19937_64 &rng,
                              long height)
{
    const auto w = random_integral(d, rng, height);
    return field_element::one(d) + field_element::uniformizer_power(d, level.to_long() + 1) * w;
}

} // namespace hypertower::krasner
