#include <hypertower/oag.hpp>

#include <sstream>

#include <hypertower/errors.hpp>

namespace hypertower::oag
{

namespace
{

void check_arity(const group_element &a, const group_element &b)
{
    if (a.arity() != b.arity()) {
        throw arity_mismatch("group elements of arity " + std::to_string(a.arity()) + " and "
                             + std::to_string(b.arity()));
    }
}

} // namespace

group_element::group_element(std::vector<mpz_class> coords) : m_coords(std::move(coords))
{
    if (m_coords.empty()) {
        throw std::invalid_argument("group element needs arity >= 1");
    }
}

group_element::group_element(const mpz_class &n) : m_coords{n} {}

group_element::group_element(long n) : m_coords{mpz_class(n)} {}

group_element group_element::zero(std::size_t arity)
{
    return group_element(std::vector<mpz_class>(arity, mpz_class(0)));
}

const mpz_class &group_element::integer() const
{
    if (m_coords.size() != 1u) {
        throw arity_mismatch("integer() on a group element of arity " + std::to_string(m_coords.size()));
    }
    return m_coords.front();
}

group_element group_element::operator-() const
{
    std::vector<mpz_class> out(m_coords.size());
    for (std::size_t i = 0; i < m_coords.size(); ++i) {
        out[i] = -m_coords[i];
    }
    return group_element(std::move(out));
}

group_element operator+(const group_element &a, const group_element &b)
{
    check_arity(a, b);
    if (a.arity() == 1u) {
        return group_element(mpz_class(a.m_coords[0] + b.m_coords[0]));
    }
    std::vector<mpz_class> out(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i) {
        out[i] = a.m_coords[i] + b.m_coords[i];
    }
    return group_element(std::move(out));
}

group_element operator-(const group_element &a, const group_element &b)
{
    return a + (-b);
}

std::strong_ordering operator<=>(const group_element &a, const group_element &b)
{
    check_arity(a, b);
    for (std::size_t i = 0; i < a.arity(); ++i) {
        const int c = cmp(a.m_coords[i], b.m_coords[i]);
        if (c < 0) {
            return std::strong_ordering::less;
        }
        if (c > 0) {
            return std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

bool operator==(const group_element &a, const group_element &b)
{
    return (a <=> b) == std::strong_ordering::equal;
}

const group_element &extended_value::finite() const
{
    if (!m_value) {
        throw std::domain_error("finite() on infinity");
    }
    return *m_value;
}

const mpz_class &extended_value::integer() const
{
    return finite().integer();
}

long extended_value::to_long() const
{
    const auto &n = integer();
    if (!n.fits_slong_p()) {
        throw std::overflow_error("extended value does not fit a long");
    }
    return n.get_si();
}

std::strong_ordering operator<=>(const extended_value &a, const extended_value &b)
{
    if (a.is_infinite()) {
        return b.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
    }
    if (b.is_infinite()) {
        return std::strong_ordering::less;
    }
    return *a.m_value <=> *b.m_value;
}

bool operator==(const extended_value &a, const extended_value &b)
{
    return (a <=> b) == std::strong_ordering::equal;
}

extended_value group_add(const extended_value &a, const extended_value &b)
{
    if (a.is_finite() && b.is_finite()) {
        return extended_value(a.finite() + b.finite());
    }
    return extended_value::infinity();
}

std::strong_ordering group_cmp(const extended_value &a, const extended_value &b)
{
    return a <=> b;
}

const extended_value &min(const extended_value &a, const extended_value &b)
{
    return (b < a) ? b : a;
}

trop_set trop_set::singleton(extended_value v)
{
    return trop_set(kind::singleton, std::move(v));
}

trop_set trop_set::up_interval(group_element lower)
{
    return trop_set(kind::up_interval, extended_value(std::move(lower)));
}

trop_set trop_hyperadd(const extended_value &a, const extended_value &b)
{
    const auto c = a <=> b;
    if (c != std::strong_ordering::equal) {
        return trop_set::singleton(c == std::strong_ordering::less ? a : b);
    }
    // inf + inf = {inf}; the interval form only arises for finite operands.
    if (a.is_infinite()) {
        return trop_set::singleton(a);
    }
    return trop_set::up_interval(a.finite());
}

bool trop_member(const extended_value &c, const trop_set &s)
{
    if (s.set_kind() == trop_set::kind::singleton) {
        return c == s.value();
    }
    return s.value() <= c;
}

bool order_from_hyperadd(const extended_value &gamma, const extended_value &delta)
{
    return trop_member(delta, trop_hyperadd(gamma, gamma));
}

std::string to_string(const extended_value &v)
{
    if (v.is_infinite()) {
        return "inf";
    }
    const auto &c = v.finite().coordinates();
    if (c.size() == 1u) {
        return c[0].get_str();
    }
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        out += (i ? "," : "") + c[i].get_str();
    }
    return out + ")";
}

std::string to_string(const trop_set &s)
{
    if (s.set_kind() == trop_set::kind::singleton) {
        return "{" + to_string(s.value()) + "}";
    }
    return "[" + to_string(s.value()) + ",inf]";
}

std::ostream &operator<<(std::ostream &os, const extended_value &v)
{
    return os << to_string(v);
}

std::ostream &operator<<(std::ostream &os, const trop_set &s)
{
    return os << to_string(s);
}

} // namespace hypertower::oag
