#ifndef HYPERTOWER_OAG_HPP
#define HYPERTOWER_OAG_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hypertower::oag
{

// Element of Z^k under the lexicographic order. The arity k identifies the
// group instance; k = 1 is the integers.
class group_element
{
public:
    explicit group_element(std::vector<mpz_class> coords);
    explicit group_element(const mpz_class &n);
    explicit group_element(long n);

    static group_element zero(std::size_t arity);

    std::size_t arity() const noexcept
    {
        return m_coords.size();
    }
    const std::vector<mpz_class> &coordinates() const noexcept
    {
        return m_coords;
    }
    // The single coordinate of an arity-1 element.
    const mpz_class &integer() const;

    group_element operator-() const;

    friend group_element operator+(const group_element &, const group_element &);
    friend group_element operator-(const group_element &, const group_element &);
    friend std::strong_ordering operator<=>(const group_element &, const group_element &);
    friend bool operator==(const group_element &, const group_element &);

private:
    std::vector<mpz_class> m_coords;
};

// Gamma together with the absorbing maximum infinity.
class extended_value
{
public:
    // Default-constructs infinity.
    extended_value() = default;
    extended_value(group_element g) : m_value(std::move(g)) {}

    static extended_value infinity()
    {
        return extended_value{};
    }
    static extended_value integer(long n)
    {
        return extended_value{group_element{n}};
    }
    static extended_value integer(const mpz_class &n)
    {
        return extended_value{group_element{n}};
    }

    bool is_infinite() const noexcept
    {
        return !m_value.has_value();
    }
    bool is_finite() const noexcept
    {
        return m_value.has_value();
    }
    const group_element &finite() const;

    // Arity-1 convenience accessors.
    const mpz_class &integer() const;
    long to_long() const;

    friend std::strong_ordering operator<=>(const extended_value &, const extended_value &);
    friend bool operator==(const extended_value &, const extended_value &);

private:
    std::optional<group_element> m_value;
};

extended_value group_add(const extended_value &a, const extended_value &b);
std::strong_ordering group_cmp(const extended_value &a, const extended_value &b);

inline extended_value operator+(const extended_value &a, const extended_value &b)
{
    return group_add(a, b);
}

const extended_value &min(const extended_value &a, const extended_value &b);

// The multivalued sum of the generalised tropical hyperfield: either a single
// value or the closed interval [lower, inf].
class trop_set
{
public:
    enum class kind { singleton, up_interval };

    static trop_set singleton(extended_value v);
    static trop_set up_interval(group_element lower);

    kind set_kind() const noexcept
    {
        return m_kind;
    }
    const extended_value &value() const noexcept
    {
        return m_value;
    }

    friend bool operator==(const trop_set &, const trop_set &) = default;

private:
    trop_set(kind k, extended_value v) : m_kind(k), m_value(std::move(v)) {}

    kind m_kind;
    extended_value m_value;
};

trop_set trop_hyperadd(const extended_value &a, const extended_value &b);
bool trop_member(const extended_value &c, const trop_set &s);

// gamma <= delta recovered from the hyperaddition alone: delta in gamma + gamma.
bool order_from_hyperadd(const extended_value &gamma, const extended_value &delta);

std::string to_string(const extended_value &);
std::string to_string(const trop_set &);
std::ostream &operator<<(std::ostream &, const extended_value &);
std::ostream &operator<<(std::ostream &, const trop_set &);

} // namespace hypertower::oag

#endif
