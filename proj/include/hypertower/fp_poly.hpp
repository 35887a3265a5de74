#ifndef HYPERTOWER_FP_POLY_HPP
#define HYPERTOWER_FP_POLY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hypertower
{

// Dense univariate polynomial over F_p, little-endian coefficients, no
// trailing zeros. The zero polynomial has no coefficients.
class fp_poly
{
public:
    using coeff_t = std::uint64_t;

    explicit fp_poly(std::uint64_t p);
    fp_poly(std::uint64_t p, std::vector<std::int64_t> coeffs);

    static fp_poly constant(std::uint64_t p, std::int64_t c);
    // c * t^k
    static fp_poly monomial(std::uint64_t p, std::int64_t c, std::size_t k);

    std::uint64_t modulus() const noexcept
    {
        return m_p;
    }
    bool is_zero() const noexcept
    {
        return m_c.empty();
    }
    // -1 for the zero polynomial.
    long degree() const noexcept
    {
        return static_cast<long>(m_c.size()) - 1;
    }
    const std::vector<coeff_t> &coefficients() const noexcept
    {
        return m_c;
    }
    coeff_t coeff(std::size_t i) const noexcept
    {
        return i < m_c.size() ? m_c[i] : 0u;
    }
    coeff_t leading() const noexcept
    {
        return m_c.empty() ? 0u : m_c.back();
    }
    // Order of vanishing at t = 0; the zero polynomial has no order.
    std::size_t t_order() const;
    // Divide by t^k; requires t_order() >= k.
    fp_poly shift_down(std::size_t k) const;
    fp_poly shift_up(std::size_t k) const;
    fp_poly truncate(std::size_t n) const;
    fp_poly monic() const;
    fp_poly scale(coeff_t c) const;

    fp_poly operator-() const;
    friend fp_poly operator+(const fp_poly &, const fp_poly &);
    friend fp_poly operator-(const fp_poly &, const fp_poly &);
    friend fp_poly operator*(const fp_poly &, const fp_poly &);
    friend bool operator==(const fp_poly &, const fp_poly &) = default;

    // Euclidean division: (quotient, remainder).
    friend std::pair<fp_poly, fp_poly> divmod(const fp_poly &, const fp_poly &);
    // Monic gcd (zero if both are zero).
    friend fp_poly gcd(const fp_poly &, const fp_poly &);

    std::string to_string(char var = 't') const;

private:
    void trim();

    std::uint64_t m_p;
    std::vector<coeff_t> m_c;
};

// Arithmetic in F_p.
std::uint64_t fp_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t fp_reduce(std::int64_t a, std::uint64_t p);

} // namespace hypertower

#endif
