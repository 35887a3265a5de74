// Independent reference computations for tests. Nothing here calls the
// library's valuation, digit or hyperfield code.
#ifndef HYPERTOWER_TESTS_ORACLE_HPP
#define HYPERTOWER_TESTS_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace oracle
{

constexpr long infinite = 1L << 40;

// p-adic valuation by repeated trial division.
inline long vp(mpz_class n, std::uint64_t p)
{
    if (n == 0) {
        return infinite;
    }
    long k = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
        n /= static_cast<unsigned long>(p);
        ++k;
    }
    return k;
}

inline long vp(const mpq_class &q, std::uint64_t p)
{
    if (q == 0) {
        return infinite;
    }
    return vp(mpz_class(q.get_num()), p) - vp(mpz_class(q.get_den()), p);
}

inline mpz_class power(std::uint64_t p, long k)
{
    mpz_class r = 1;
    for (long i = 0; i < k; ++i) {
        r *= static_cast<unsigned long>(p);
    }
    return r;
}

inline mpq_class ppow(std::uint64_t p, long k)
{
    return k >= 0 ? mpq_class(power(p, k)) : mpq_class(mpz_class(1), power(p, -k));
}

// num * den^{-1} mod m for den coprime to m, found by search over the residue
// that makes num - den * r divisible by m digit by digit.
inline std::vector<std::uint64_t> unit_digits_by_search(const mpq_class &u, std::uint64_t p, std::size_t n)
{
    std::vector<std::uint64_t> digits;
    mpq_class rest = u;
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t found = p;
        for (std::uint64_t d = 0; d < p; ++d) {
            if (vp(mpq_class(rest - mpq_class(static_cast<unsigned long>(d))), p) >= 1) {
                found = d;
                break;
            }
        }
        if (found == p) {
            throw std::logic_error("no digit found: not p-integral");
        }
        digits.push_back(found);
        rest = (rest - mpq_class(static_cast<unsigned long>(found))) / mpq_class(static_cast<unsigned long>(p));
    }
    return digits;
}

struct expansion {
    long shift;
    std::vector<std::uint64_t> digits;
};

// p-adic digits of a rational: shift = v(q), digits of q p^{-v} by search.
inline expansion padic_expand(const mpq_class &q, std::uint64_t p, std::size_t n)
{
    if (q == 0) {
        return {0, std::vector<std::uint64_t>(n, 0u)};
    }
    const long v = vp(q, p);
    return {v, unit_digits_by_search(q * ppow(p, -v), p, n)};
}

// Polynomials over F_p as little-endian coefficient vectors.
using poly = std::vector<std::uint64_t>;

inline long t_order(const poly &a)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0u) {
            return static_cast<long>(i);
        }
    }
    return infinite;
}

// Laurent coefficients of num/den: choose each coefficient c_i in F_p by trying
// all residues until den * series agrees with num through t^i.
inline expansion laurent_expand(const poly &num, const poly &den, std::uint64_t p, std::size_t n)
{
    const long on = t_order(num);
    if (on == infinite) {
        return {0, std::vector<std::uint64_t>(n, 0u)};
    }
    const long od = t_order(den);
    const auto coeff = [](const poly &a, long i) { return i >= 0 && i < static_cast<long>(a.size()) ? a[i] : 0u; };
    std::vector<std::uint64_t> series;
    for (std::size_t i = 0; i < n; ++i) {
        const auto target = coeff(num, on + static_cast<long>(i));
        for (std::uint64_t c = 0; c < p; ++c) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < i; ++j) {
                acc = (acc + series[j] * coeff(den, od + static_cast<long>(i - j))) % p;
            }
            acc = (acc + c * coeff(den, od)) % p;
            if (acc == target) {
                series.push_back(c);
                break;
            }
        }
    }
    return {on - od, series};
}

// All r in [0, p^n) with r^2 = c mod p^n and r = seed mod p.
inline std::vector<mpz_class> brute_sqrt(const mpz_class &c, std::uint64_t p, long n, std::uint64_t seed)
{
    const mpz_class m = power(p, n);
    std::vector<mpz_class> out;
    for (mpz_class r = seed % p; r < m; r += static_cast<unsigned long>(p)) {
        mpz_class diff = r * r - c;
        mpz_class rem;
        mpz_fdiv_r(rem.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
        if (rem == 0) {
            out.push_back(r);
        }
    }
    return out;
}

// 1-unit of level gamma: v(u - 1) > gamma.
inline bool one_unit(const mpq_class &u, std::uint64_t p, long gamma)
{
    return u != 0 && vp(mpq_class(u - 1), p) > gamma;
}

// [a]_gamma = [b]_gamma straight from the quotient: a = b u for a 1-unit u.
inline bool same_class(const mpq_class &a, const mpq_class &b, std::uint64_t p, long gamma)
{
    if (a == 0 || b == 0) {
        return a == 0 && b == 0;
    }
    return one_unit(a / b, p, gamma);
}

// [z] in [x] + [y] from the definition, with explicit 1-unit witnesses
// (t = 1 solving for u, u = 1 solving for t).
inline bool lee_member(const mpq_class &x, const mpq_class &y, const mpq_class &z, std::uint64_t p, long gamma)
{
    if (y == 0) {
        return same_class(z, x, p, gamma);
    }
    if (one_unit((z - x) / y, p, gamma)) {
        return true;
    }
    return z != 0 && x + y != 0 && one_unit((x + y) / z, p, gamma);
}

// Every reduced n/d with |n| <= h, 1 <= d <= h.
inline std::vector<mpq_class> height_box(long h)
{
    std::vector<mpq_class> out{mpq_class(0)};
    for (long d = 1; d <= h; ++d) {
        for (long n = -h; n <= h; ++n) {
            if (n == 0) {
                continue;
            }
            mpz_class g;
            mpz_gcd_ui(g.get_mpz_t(), mpz_class(n).get_mpz_t(), static_cast<unsigned long>(d));
            if (g == 1) {
                out.emplace_back(n, d);
            }
        }
    }
    return out;
}

} // namespace oracle

#endif
