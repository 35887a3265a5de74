#ifndef HYPERTOWER_BASEFIELDS_HPP
#define HYPERTOWER_BASEFIELDS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include <hypertower/fp_poly.hpp>
#include <hypertower/oag.hpp>

namespace hypertower
{

enum class field_kind { rational, function_field, quadratic };

// Which valued field (K, v) we are in. All supported fields have value group Z.
//
// - rational: Q with the p-adic valuation;
// - function_field: F_p(t) with the t-adic valuation;
// - quadratic: Q(alpha), alpha^2 = 1 + p, valued through the embedding into
//   Q_p that sends alpha to the square root of 1 + p congruent to 1 mod p.
class field_descriptor
{
public:
    static field_descriptor rational(std::uint64_t p);
    static field_descriptor function_field(std::uint64_t p);
    static field_descriptor quadratic(std::uint64_t p);

    field_kind kind() const noexcept
    {
        return m_kind;
    }
    std::uint64_t p() const noexcept
    {
        return m_p;
    }

    friend bool operator==(const field_descriptor &, const field_descriptor &) = default;

    std::string to_string() const;

private:
    field_descriptor(field_kind k, std::uint64_t p) : m_kind(k), m_p(p) {}

    field_kind m_kind;
    std::uint64_t m_p;
};

bool is_prime(std::uint64_t n);

// Reduced fraction num/den over F_p with monic denominator.
struct rational_function {
    fp_poly num;
    fp_poly den;

    friend bool operator==(const rational_function &, const rational_function &) = default;
};

// a + b * alpha.
struct quadratic_number {
    mpq_class a;
    mpq_class b;

    friend bool operator==(const quadratic_number &x, const quadratic_number &y)
    {
        return x.a == y.a && x.b == y.b;
    }
};

class field_element
{
public:
    using payload_t = std::variant<mpq_class, rational_function, quadratic_number>;

    static field_element zero(const field_descriptor &);
    static field_element one(const field_descriptor &);
    static field_element from_integer(const field_descriptor &, long n);
    static field_element rational(const field_descriptor &, const mpq_class &q);
    static field_element function(const field_descriptor &, const fp_poly &num, const fp_poly &den);
    static field_element quadratic(const field_descriptor &, const mpq_class &a, const mpq_class &b);
    // The generator: t for function fields, alpha for the quadratic field.
    static field_element generator(const field_descriptor &);
    // pi^k for the uniformizer pi (p, or t); k may be negative.
    static field_element uniformizer_power(const field_descriptor &, long k);

    const field_descriptor &descriptor() const noexcept
    {
        return m_desc;
    }
    const payload_t &payload() const noexcept
    {
        return m_payload;
    }
    const mpq_class &as_rational() const;
    const rational_function &as_function() const;
    const quadratic_number &as_quadratic() const;

    bool is_zero() const;

    field_element operator-() const;
    field_element inverse() const;

    friend field_element operator+(const field_element &, const field_element &);
    friend field_element operator-(const field_element &, const field_element &);
    friend field_element operator*(const field_element &, const field_element &);
    friend field_element operator/(const field_element &, const field_element &);
    friend bool operator==(const field_element &, const field_element &);

    std::string to_string() const;

private:
    field_element(field_descriptor d, payload_t p) : m_desc(d), m_payload(std::move(p)) {}

    field_descriptor m_desc;
    payload_t m_payload;
};

enum class arith_op { add, neg, mul, inv };

field_element f_arith(arith_op op, const field_element &x);
field_element f_arith(arith_op op, const field_element &x, const field_element &y);

// p-adic valuation of a nonzero integer / rational; asserts nonzero.
long padic_valuation(const mpz_class &n, std::uint64_t p);
long padic_valuation(const mpq_class &q, std::uint64_t p);

oag::extended_value valuation(const field_element &x);

// Conjugate a - b*alpha and the rational norm a^2 - (1+p) b^2.
field_element conjugate(const field_element &x);
mpq_class norm(const field_element &x);

// Finite window p^shift * sum digits[i] p^i (resp. t^shift * sum digits[i] t^i).
// A zero approximation has shift 0 and all digits 0.
struct approximation {
    std::uint64_t p = 0;
    long shift = 0;
    std::vector<std::uint64_t> digits;

    std::size_t precision() const noexcept
    {
        return digits.size();
    }
    bool is_zero() const noexcept;

    friend bool operator==(const approximation &, const approximation &) = default;
};

// Digit expansion by long division, one digit at a time.
approximation oracle_expand(const field_element &x, std::size_t n);

// Sum the window back into K.
field_element resum(const approximation &a, const field_descriptor &desc);

// Root of c congruent to seed mod p, correct mod p^n, by Newton/Hensel lifting.
approximation hensel_sqrt(const field_element &c, std::uint64_t seed, std::size_t n);

// The embedding root s (s^2 = 1 + p, s = 1 mod p) reduced mod p^precision.
// Cached per prime; safe to call concurrently.
mpz_class embedding_root(std::uint64_t p, std::size_t precision);

struct cauchy_witness {
    std::size_t start_index;
    oag::extended_value level;
};

// Smallest nu0 such that every pair of later terms (at least one pair) has
// v(x_nu - x_mu) > level, if any.
std::optional<cauchy_witness> is_cauchy(std::span<const field_element> xs, const oag::extended_value &level);

// Random element of bounded height: numerators and denominators in [-h, h]
// (resp. polynomial degrees below h) for each rational component.
field_element random_element(const field_descriptor &, std::mt19937_64 &rng, long height);

} // namespace hypertower

#endif
