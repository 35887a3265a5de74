#include <hypertower/basefields.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include <hypertower/errors.hpp>

namespace hypertower
{

bool is_prime(std::uint64_t n)
{
    if (n < 2u) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0u) {
            return false;
        }
    }
    return true;
}

field_descriptor field_descriptor::rational(std::uint64_t p)
{
    if (!is_prime(p)) {
        throw std::invalid_argument("rational field needs a prime p, got " + std::to_string(p));
    }
    return field_descriptor(field_kind::rational, p);
}

field_descriptor field_descriptor::function_field(std::uint64_t p)
{
    if (!is_prime(p) || p > (1ull << 31)) {
        throw std::invalid_argument("function field needs a prime p < 2^31, got " + std::to_string(p));
    }
    return field_descriptor(field_kind::function_field, p);
}

field_descriptor field_descriptor::quadratic(std::uint64_t p)
{
    // p = 3 gives alpha^2 = 4, which is not a field.
    if (!is_prime(p) || p == 2u || p == 3u) {
        throw std::invalid_argument("quadratic field needs an odd prime p != 3, got " + std::to_string(p));
    }
    return field_descriptor(field_kind::quadratic, p);
}

std::string field_descriptor::to_string() const
{
    switch (m_kind) {
        case field_kind::rational:
            return "Q(p=" + std::to_string(m_p) + ")";
        case field_kind::function_field:
            return "F_" + std::to_string(m_p) + "(t)";
        case field_kind::quadratic:
            return "Q(alpha), alpha^2=" + std::to_string(m_p + 1u);
    }
    return "?";
}

namespace
{

void check_same(const field_element &x, const field_element &y)
{
    if (!(x.descriptor() == y.descriptor())) {
        throw descriptor_mismatch("operands from " + x.descriptor().to_string() + " and "
                                  + y.descriptor().to_string());
    }
}

rational_function make_fraction(const fp_poly &num, const fp_poly &den)
{
    if (den.is_zero()) {
        throw zero_division("rational function with zero denominator");
    }
    const auto p = num.modulus();
    if (num.is_zero()) {
        return {fp_poly(p), fp_poly::constant(p, 1)};
    }
    const auto g = gcd(num, den);
    auto n = divmod(num, g).first;
    auto d = divmod(den, g).first;
    const auto lc_inv = fp_inverse(d.leading(), p);
    return {n.scale(lc_inv), d.scale(lc_inv)};
}

mpq_class canonical(mpq_class q)
{
    q.canonicalize();
    return q;
}

mpz_class pow_ui(std::uint64_t p, std::size_t k)
{
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), p, k);
    return out;
}

// n * d^{-1} mod m for d coprime to m.
mpz_class mod_div(const mpz_class &n, const mpz_class &d, const mpz_class &m)
{
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw zero_division("denominator not invertible modulo p^k");
    }
    mpz_class r = (n * inv) % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

// Square root of c mod p^n lifted from seed by Newton iteration.
mpz_class lift_sqrt(const mpz_class &c, const mpz_class &seed, std::uint64_t p, std::size_t n)
{
    mpz_class r = seed;
    std::size_t k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        const auto m = pow_ui(p, k);
        mpz_class f = (r * r - c) % m;
        r = (r - mod_div(f, mpz_class(2 * r), m)) % m;
        if (r < 0) {
            r += m;
        }
    }
    const auto m = pow_ui(p, n);
    r %= m;
    if (r < 0) {
        r += m;
    }
    return r;
}

std::vector<std::uint64_t> base_p_digits(mpz_class r, std::uint64_t p, std::size_t n)
{
    std::vector<std::uint64_t> digits(n, 0u);
    for (std::size_t i = 0; i < n; ++i) {
        digits[i] = mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    }
    return digits;
}

// Long division of n/d in Z_p (d a unit), n digits.
std::vector<std::uint64_t> long_divide(mpz_class n, const mpz_class &d, std::uint64_t p, std::size_t count)
{
    const auto d_mod = mpz_fdiv_ui(d.get_mpz_t(), p);
    const auto d_inv = fp_inverse(d_mod, p);
    std::vector<std::uint64_t> digits(count, 0u);
    for (std::size_t i = 0; i < count; ++i) {
        const auto n_mod = mpz_fdiv_ui(n.get_mpz_t(), p);
        const auto digit = static_cast<std::uint64_t>((static_cast<unsigned __int128>(n_mod) * d_inv) % p);
        digits[i] = digit;
        n -= d * digit;
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
    return digits;
}

// Scale a + b alpha by p^{-e}, e = min(v(a), v(b)), so both parts are p-integral.
struct integral_pair {
    long shift;
    mpq_class a;
    mpq_class b;
};

integral_pair make_integral(const quadratic_number &q, std::uint64_t p)
{
    long e = 0;
    if (q.a == 0) {
        e = padic_valuation(q.b, p);
    } else if (q.b == 0) {
        e = padic_valuation(q.a, p);
    } else {
        e = std::min(padic_valuation(q.a, p), padic_valuation(q.b, p));
    }
    mpq_class scale;
    if (e >= 0) {
        scale = mpq_class(mpz_class(1), pow_ui(p, static_cast<std::size_t>(e)));
    } else {
        scale = mpq_class(pow_ui(p, static_cast<std::size_t>(-e)));
    }
    return {e, canonical(q.a * scale), canonical(q.b * scale)};
}

// (a + b s) mod p^k for p-integral a, b.
mpz_class embed_mod(const mpq_class &a, const mpq_class &b, std::uint64_t p, std::size_t k)
{
    const auto m = pow_ui(p, k);
    const auto s = embedding_root(p, k);
    mpz_class r = mod_div(a.get_num(), a.get_den(), m) + mod_div(b.get_num(), b.get_den(), m) * s;
    r %= m;
    return r;
}

} // namespace

// --- field_element ----------------------------------------------------------

field_element field_element::zero(const field_descriptor &d)
{
    return from_integer(d, 0);
}

field_element field_element::one(const field_descriptor &d)
{
    return from_integer(d, 1);
}

field_element field_element::from_integer(const field_descriptor &d, long n)
{
    switch (d.kind()) {
        case field_kind::rational:
            return field_element(d, mpq_class(n));
        case field_kind::function_field:
            return field_element(d, rational_function{fp_poly::constant(d.p(), n % static_cast<long>(d.p())),
                                                      fp_poly::constant(d.p(), 1)});
        case field_kind::quadratic:
            return field_element(d, quadratic_number{mpq_class(n), mpq_class(0)});
    }
    throw std::logic_error("unknown field kind");
}

field_element field_element::rational(const field_descriptor &d, const mpq_class &q)
{
    switch (d.kind()) {
        case field_kind::rational:
            return field_element(d, canonical(q));
        case field_kind::quadratic:
            return field_element(d, quadratic_number{canonical(q), mpq_class(0)});
        case field_kind::function_field: {
            const auto num = mpz_fdiv_ui(q.get_num().get_mpz_t(), d.p());
            const auto den = mpz_fdiv_ui(q.get_den().get_mpz_t(), d.p());
            if (den == 0u) {
                throw zero_division("rational with denominator divisible by p in F_p(t)");
            }
            return field_element(d, make_fraction(fp_poly::constant(d.p(), static_cast<std::int64_t>(num)),
                                                  fp_poly::constant(d.p(), static_cast<std::int64_t>(den))));
        }
    }
    throw std::logic_error("unknown field kind");
}

field_element field_element::function(const field_descriptor &d, const fp_poly &num, const fp_poly &den)
{
    if (d.kind() != field_kind::function_field || num.modulus() != d.p() || den.modulus() != d.p()) {
        throw descriptor_mismatch("polynomial fraction outside " + d.to_string());
    }
    return field_element(d, make_fraction(num, den));
}

field_element field_element::quadratic(const field_descriptor &d, const mpq_class &a, const mpq_class &b)
{
    if (d.kind() != field_kind::quadratic) {
        throw descriptor_mismatch("a + b alpha outside a quadratic field");
    }
    return field_element(d, quadratic_number{canonical(a), canonical(b)});
}

field_element field_element::generator(const field_descriptor &d)
{
    switch (d.kind()) {
        case field_kind::function_field:
            return function(d, fp_poly::monomial(d.p(), 1, 1), fp_poly::constant(d.p(), 1));
        case field_kind::quadratic:
            return quadratic(d, mpq_class(0), mpq_class(1));
        case field_kind::rational:
            break;
    }
    throw std::invalid_argument("Q has no generator");
}

field_element field_element::uniformizer_power(const field_descriptor &d, long k)
{
    const auto mag = static_cast<std::size_t>(k < 0 ? -k : k);
    if (d.kind() == field_kind::function_field) {
        const auto mono = fp_poly::monomial(d.p(), 1, mag);
        const auto one = fp_poly::constant(d.p(), 1);
        return k >= 0 ? function(d, mono, one) : function(d, one, mono);
    }
    const auto pk = pow_ui(d.p(), mag);
    return rational(d, k >= 0 ? mpq_class(pk) : mpq_class(mpz_class(1), pk));
}

const mpq_class &field_element::as_rational() const
{
    if (const auto *q = std::get_if<mpq_class>(&m_payload)) {
        return *q;
    }
    throw descriptor_mismatch("element of " + m_desc.to_string() + " is not a plain rational");
}

const rational_function &field_element::as_function() const
{
    if (const auto *f = std::get_if<rational_function>(&m_payload)) {
        return *f;
    }
    throw descriptor_mismatch("element of " + m_desc.to_string() + " is not a rational function");
}

const quadratic_number &field_element::as_quadratic() const
{
    if (const auto *q = std::get_if<quadratic_number>(&m_payload)) {
        return *q;
    }
    throw descriptor_mismatch("element of " + m_desc.to_string() + " is not in a quadratic field");
}

bool field_element::is_zero() const
{
    return std::visit(
        [](const auto &v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, mpq_class>) {
                return v == 0;
            } else if constexpr (std::is_same_v<T, rational_function>) {
                return v.num.is_zero();
            } else {
                return v.a == 0 && v.b == 0;
            }
        },
        m_payload);
}

field_element field_element::operator-() const
{
    return std::visit(
        [this](const auto &v) -> field_element {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, mpq_class>) {
                return field_element(m_desc, mpq_class(-v));
            } else if constexpr (std::is_same_v<T, rational_function>) {
                return field_element(m_desc, rational_function{-v.num, v.den});
            } else {
                return field_element(m_desc, quadratic_number{mpq_class(-v.a), mpq_class(-v.b)});
            }
        },
        m_payload);
}

field_element field_element::inverse() const
{
    if (is_zero()) {
        throw zero_division("inverse of zero in " + m_desc.to_string());
    }
    return std::visit(
        [this](const auto &v) -> field_element {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, mpq_class>) {
                return field_element(m_desc, canonical(mpq_class(1) / v));
            } else if constexpr (std::is_same_v<T, rational_function>) {
                return field_element(m_desc, make_fraction(v.den, v.num));
            } else {
                const mpq_class n = v.a * v.a - mpq_class(m_desc.p() + 1u) * v.b * v.b;
                return field_element(m_desc, quadratic_number{canonical(v.a / n), canonical(-v.b / n)});
            }
        },
        m_payload);
}

field_element operator+(const field_element &x, const field_element &y)
{
    check_same(x, y);
    const auto &d = x.m_desc;
    switch (d.kind()) {
        case field_kind::rational:
            return field_element(d, canonical(x.as_rational() + y.as_rational()));
        case field_kind::function_field: {
            const auto &f = x.as_function();
            const auto &g = y.as_function();
            if (f.den == g.den) {
                return field_element(d, make_fraction(f.num + g.num, f.den));
            }
            return field_element(d, make_fraction(f.num * g.den + g.num * f.den, f.den * g.den));
        }
        case field_kind::quadratic: {
            const auto &f = x.as_quadratic();
            const auto &g = y.as_quadratic();
            return field_element(d, quadratic_number{canonical(f.a + g.a), canonical(f.b + g.b)});
        }
    }
    throw std::logic_error("unknown field kind");
}

field_element operator-(const field_element &x, const field_element &y)
{
    return x + (-y);
}

field_element operator*(const field_element &x, const field_element &y)
{
    check_same(x, y);
    const auto &d = x.m_desc;
    switch (d.kind()) {
        case field_kind::rational:
            return field_element(d, canonical(x.as_rational() * y.as_rational()));
        case field_kind::function_field: {
            const auto &f = x.as_function();
            const auto &g = y.as_function();
            return field_element(d, make_fraction(f.num * g.num, f.den * g.den));
        }
        case field_kind::quadratic: {
            const auto &f = x.as_quadratic();
            const auto &g = y.as_quadratic();
            const mpq_class r(d.p() + 1u);
            return field_element(
                d, quadratic_number{canonical(f.a * g.a + r * f.b * g.b), canonical(f.a * g.b + f.b * g.a)});
        }
    }
    throw std::logic_error("unknown field kind");
}

field_element operator/(const field_element &x, const field_element &y)
{
    return x * y.inverse();
}

bool operator==(const field_element &x, const field_element &y)
{
    return x.m_desc == y.m_desc && x.m_payload == y.m_payload;
}

std::string field_element::to_string() const
{
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, mpq_class>) {
                return v.get_str();
            } else if constexpr (std::is_same_v<T, rational_function>) {
                if (v.den.degree() == 0) {
                    return v.num.to_string();
                }
                return "(" + v.num.to_string() + ")/(" + v.den.to_string() + ")";
            } else {
                return v.a.get_str() + " + " + v.b.get_str() + "*alpha";
            }
        },
        m_payload);
}

field_element f_arith(arith_op op, const field_element &x)
{
    switch (op) {
        case arith_op::neg:
            return -x;
        case arith_op::inv:
            return x.inverse();
        case arith_op::add:
        case arith_op::mul:
            break;
    }
    throw std::invalid_argument("binary operation given one operand");
}

field_element f_arith(arith_op op, const field_element &x, const field_element &y)
{
    switch (op) {
        case arith_op::add:
            return x + y;
        case arith_op::mul:
            return x * y;
        case arith_op::neg:
        case arith_op::inv:
            break;
    }
    throw std::invalid_argument("unary operation given two operands");
}

// --- valuations -------------------------------------------------------------

long padic_valuation(const mpz_class &n, std::uint64_t p)
{
    if (n == 0) {
        throw std::domain_error("p-adic valuation of 0");
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) {
        return 0;
    }
    mpz_class rest;
    mpz_class pp(static_cast<unsigned long>(p));
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

long padic_valuation(const mpq_class &q, std::uint64_t p)
{
    return padic_valuation(q.get_num(), p) - padic_valuation(q.get_den(), p);
}

oag::extended_value valuation(const field_element &x)
{
    if (x.is_zero()) {
        return oag::extended_value::infinity();
    }
    const auto p = x.descriptor().p();
    switch (x.descriptor().kind()) {
        case field_kind::rational:
            return oag::extended_value::integer(padic_valuation(x.as_rational(), p));
        case field_kind::function_field: {
            const auto &f = x.as_function();
            return oag::extended_value::integer(static_cast<long>(f.num.t_order())
                                                - static_cast<long>(f.den.t_order()));
        }
        case field_kind::quadratic: {
            const auto ip = make_integral(x.as_quadratic(), p);
            // v(a + b s) + v(a - b s) = v(norm) bounds the search.
            const mpq_class nrm = ip.a * ip.a - mpq_class(p + 1u) * ip.b * ip.b;
            const auto bound = padic_valuation(nrm, p);
            const auto r = embed_mod(ip.a, ip.b, p, static_cast<std::size_t>(bound) + 1u);
            if (r == 0) {
                throw std::logic_error("quadratic valuation exceeded its norm bound");
            }
            return oag::extended_value::integer(ip.shift + padic_valuation(r, p));
        }
    }
    throw std::logic_error("unknown field kind");
}

field_element conjugate(const field_element &x)
{
    const auto &q = x.as_quadratic();
    return field_element::quadratic(x.descriptor(), q.a, -q.b);
}

mpq_class norm(const field_element &x)
{
    const auto &q = x.as_quadratic();
    return canonical(q.a * q.a - mpq_class(x.descriptor().p() + 1u) * q.b * q.b);
}

// --- approximations ---------------------------------------------------------

bool approximation::is_zero() const noexcept
{
    return std::all_of(digits.begin(), digits.end(), [](auto d) { return d == 0u; });
}

approximation oracle_expand(const field_element &x, std::size_t n)
{
    if (n == 0u) {
        throw std::invalid_argument("expansion needs at least one digit");
    }
    const auto &d = x.descriptor();
    const auto p = d.p();
    approximation out{p, 0, std::vector<std::uint64_t>(n, 0u)};
    if (x.is_zero()) {
        return out;
    }
    switch (d.kind()) {
        case field_kind::rational: {
            const auto &q = x.as_rational();
            mpz_class num = q.get_num(), den = q.get_den();
            const long vn = padic_valuation(num, p), vd = padic_valuation(den, p);
            mpz_class pp(static_cast<unsigned long>(p));
            mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
            mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
            out.shift = vn - vd;
            out.digits = long_divide(num, den, p, n);
            return out;
        }
        case field_kind::function_field: {
            const auto &f = x.as_function();
            const auto on = f.num.t_order(), od = f.den.t_order();
            auto num = f.num.shift_down(on);
            const auto den = f.den.shift_down(od);
            out.shift = static_cast<long>(on) - static_cast<long>(od);
            const auto d0_inv = fp_inverse(den.coeff(0), p);
            for (std::size_t i = 0; i < n; ++i) {
                const auto c = (num.coeff(0) * d0_inv) % p;
                out.digits[i] = c;
                num = (num - den.scale(c)).shift_down(1);
            }
            return out;
        }
        case field_kind::quadratic: {
            const auto ip = make_integral(x.as_quadratic(), p);
            const mpq_class nrm = ip.a * ip.a - mpq_class(p + 1u) * ip.b * ip.b;
            const auto k = static_cast<std::size_t>(padic_valuation(nrm, p)) + n + 1u;
            // Numerator of (a + b s) over the common unit denominator, exact mod p^k.
            const mpz_class den = ip.a.get_den() * ip.b.get_den();
            const mpz_class m = pow_ui(p, k);
            mpz_class num = (ip.a.get_num() * ip.b.get_den() + ip.b.get_num() * ip.a.get_den() * embedding_root(p, k)) % m;
            const long v = padic_valuation(num, p);
            mpz_class pp(static_cast<unsigned long>(p));
            mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
            out.shift = ip.shift + v;
            out.digits = long_divide(num, den, p, n);
            return out;
        }
    }
    throw std::logic_error("unknown field kind");
}

field_element resum(const approximation &a, const field_descriptor &desc)
{
    if (a.p != desc.p()) {
        throw descriptor_mismatch("approximation over p=" + std::to_string(a.p) + " resummed in "
                                  + desc.to_string());
    }
    if (desc.kind() == field_kind::function_field) {
        std::vector<std::int64_t> c(a.digits.begin(), a.digits.end());
        const auto body = field_element::function(desc, fp_poly(desc.p(), c), fp_poly::constant(desc.p(), 1));
        return body * field_element::uniformizer_power(desc, a.shift);
    }
    mpz_class body = 0;
    for (std::size_t i = a.digits.size(); i-- > 0;) {
        body = body * static_cast<unsigned long>(a.p) + static_cast<unsigned long>(a.digits[i]);
    }
    return field_element::rational(desc, mpq_class(body)) * field_element::uniformizer_power(desc, a.shift);
}

approximation hensel_sqrt(const field_element &c, std::uint64_t seed, std::size_t n)
{
    const auto p = c.descriptor().p();
    if (p == 2u) {
        throw hensel_error("Hensel square roots need an odd prime");
    }
    if (n == 0u) {
        throw std::invalid_argument("Hensel lifting needs precision >= 1");
    }
    const mpq_class q = c.descriptor().kind() == field_kind::quadratic && c.as_quadratic().b == 0
                            ? c.as_quadratic().a
                            : c.as_rational();
    if (q == 0 || padic_valuation(q, p) != 0) {
        throw hensel_error("Hensel square root needs a p-adic unit");
    }
    seed %= p;
    const auto m = pow_ui(p, n);
    const mpz_class cm = mod_div(q.get_num(), q.get_den(), m);
    const mpz_class s(static_cast<unsigned long>(seed));
    if (seed == 0u || mpz_class((s * s - cm) % static_cast<unsigned long>(p)) != 0) {
        throw hensel_error("seed " + std::to_string(seed) + " is not a simple root mod p");
    }
    const auto root = lift_sqrt(cm, s, p, n);
    if (mpz_class((root * root - cm) % m) != 0) {
        throw std::logic_error("Hensel lift failed verification");
    }
    return approximation{p, 0, base_p_digits(root, p, n)};
}

mpz_class embedding_root(std::uint64_t p, std::size_t precision)
{
    struct entry {
        std::size_t precision;
        mpz_class value;
    };
    static std::mutex mtx;
    static std::map<std::uint64_t, entry> cache;

    std::lock_guard lock(mtx);
    auto it = cache.find(p);
    if (it == cache.end() || it->second.precision < precision) {
        // Over-lift so successive requests rarely recompute.
        const auto target = std::max<std::size_t>(precision, it == cache.end() ? 64u : 2 * it->second.precision);
        const mpz_class c(static_cast<unsigned long>(p + 1u));
        const auto root = lift_sqrt(c, mpz_class(1), p, target);
        it = cache.insert_or_assign(p, entry{target, root}).first;
    }
    mpz_class out;
    mpz_fdiv_r(out.get_mpz_t(), it->second.value.get_mpz_t(), pow_ui(p, precision).get_mpz_t());
    return out;
}

std::optional<cauchy_witness> is_cauchy(std::span<const field_element> xs, const oag::extended_value &level)
{
    if (xs.size() < 2u) {
        return std::nullopt;
    }
    std::optional<cauchy_witness> best;
    // The suffix starting at i is good iff the suffix at i+1 is and x_i is close to all later terms.
    for (std::size_t i = xs.size() - 1u; i-- > 0;) {
        for (std::size_t j = i + 1u; j < xs.size(); ++j) {
            if (!(valuation(xs[i] - xs[j]) > level)) {
                return best;
            }
        }
        best = cauchy_witness{i, level};
    }
    return best;
}

field_element random_element(const field_descriptor &d, std::mt19937_64 &rng, long height)
{
    if (height < 1) {
        throw std::invalid_argument("height must be >= 1");
    }
    std::uniform_int_distribution<long> num(-height, height), den(1, height);
    const auto random_q = [&] { return mpq_class(num(rng), den(rng)); };
    switch (d.kind()) {
        case field_kind::rational:
            return field_element::rational(d, random_q());
        case field_kind::quadratic:
            return field_element::quadratic(d, random_q(), random_q());
        case field_kind::function_field: {
            std::uniform_int_distribution<long> deg(0, height - 1);
            std::uniform_int_distribution<std::int64_t> coeff(0, static_cast<std::int64_t>(d.p()) - 1);
            const auto random_poly = [&] {
                std::vector<std::int64_t> c(static_cast<std::size_t>(deg(rng)) + 1u);
                for (auto &x : c) {
                    x = coeff(rng);
                }
                return fp_poly(d.p(), c);
            };
            auto den_poly = random_poly();
            while (den_poly.is_zero()) {
                den_poly = random_poly();
            }
            return field_element::function(d, random_poly(), den_poly);
        }
    }
    throw std::logic_error("unknown field kind");
}

} // namespace hypertower
