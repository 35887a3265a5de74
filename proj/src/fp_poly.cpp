#include <hypertower/fp_poly.hpp>

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include <hypertower/errors.hpp>

namespace hypertower
{

std::uint64_t fp_reduce(std::int64_t a, std::uint64_t p)
{
    const auto sp = static_cast<std::int64_t>(p);
    auto r = a % sp;
    if (r < 0) {
        r += sp;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t fp_inverse(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0u) {
        throw zero_division("inverse of 0 in F_p");
    }
    // Extended Euclid on signed 128-bit to stay clear of overflow.
    __int128 r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const __int128 q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    __int128 inv = s0 % static_cast<__int128>(p);
    if (inv < 0) {
        inv += p;
    }
    return static_cast<std::uint64_t>(inv);
}

fp_poly::fp_poly(std::uint64_t p) : m_p(p)
{
    if (p < 2u || p > (1ull << 31)) {
        throw std::invalid_argument("fp_poly modulus out of range");
    }
}

fp_poly::fp_poly(std::uint64_t p, std::vector<std::int64_t> coeffs) : fp_poly(p)
{
    m_c.reserve(coeffs.size());
    for (auto c : coeffs) {
        m_c.push_back(fp_reduce(c, p));
    }
    trim();
}

fp_poly fp_poly::constant(std::uint64_t p, std::int64_t c)
{
    return fp_poly(p, {c});
}

fp_poly fp_poly::monomial(std::uint64_t p, std::int64_t c, std::size_t k)
{
    fp_poly out(p);
    const auto r = fp_reduce(c, p);
    if (r != 0u) {
        out.m_c.assign(k + 1u, 0u);
        out.m_c[k] = r;
    }
    return out;
}

void fp_poly::trim()
{
    while (!m_c.empty() && m_c.back() == 0u) {
        m_c.pop_back();
    }
}

std::size_t fp_poly::t_order() const
{
    if (is_zero()) {
        throw std::domain_error("t_order of the zero polynomial");
    }
    std::size_t k = 0;
    while (m_c[k] == 0u) {
        ++k;
    }
    return k;
}

fp_poly fp_poly::shift_down(std::size_t k) const
{
    fp_poly out(m_p);
    if (k < m_c.size()) {
        out.m_c.assign(m_c.begin() + static_cast<std::ptrdiff_t>(k), m_c.end());
    }
    return out;
}

fp_poly fp_poly::shift_up(std::size_t k) const
{
    fp_poly out(m_p);
    if (!is_zero()) {
        out.m_c.assign(k, 0u);
        out.m_c.insert(out.m_c.end(), m_c.begin(), m_c.end());
    }
    return out;
}

fp_poly fp_poly::truncate(std::size_t n) const
{
    fp_poly out(*this);
    if (out.m_c.size() > n) {
        out.m_c.resize(n);
    }
    out.trim();
    return out;
}

fp_poly fp_poly::scale(coeff_t c) const
{
    fp_poly out(*this);
    c %= m_p;
    for (auto &x : out.m_c) {
        x = (x * c) % m_p;
    }
    out.trim();
    return out;
}

fp_poly fp_poly::monic() const
{
    if (is_zero()) {
        return *this;
    }
    return scale(fp_inverse(leading(), m_p));
}

fp_poly fp_poly::operator-() const
{
    fp_poly out(*this);
    for (auto &x : out.m_c) {
        x = (m_p - x) % m_p;
    }
    return out;
}

namespace
{

void check_modulus(const fp_poly &a, const fp_poly &b)
{
    if (a.modulus() != b.modulus()) {
        throw descriptor_mismatch("polynomials over different prime fields");
    }
}

} // namespace

fp_poly operator+(const fp_poly &a, const fp_poly &b)
{
    check_modulus(a, b);
    fp_poly out(a.m_p);
    out.m_c.resize(std::max(a.m_c.size(), b.m_c.size()));
    for (std::size_t i = 0; i < out.m_c.size(); ++i) {
        out.m_c[i] = (a.coeff(i) + b.coeff(i)) % a.m_p;
    }
    out.trim();
    return out;
}

fp_poly operator-(const fp_poly &a, const fp_poly &b)
{
    return a + (-b);
}

fp_poly operator*(const fp_poly &a, const fp_poly &b)
{
    check_modulus(a, b);
    fp_poly out(a.m_p);
    if (a.is_zero() || b.is_zero()) {
        return out;
    }
    out.m_c.assign(a.m_c.size() + b.m_c.size() - 1u, 0u);
    for (std::size_t i = 0; i < a.m_c.size(); ++i) {
        if (a.m_c[i] == 0u) {
            continue;
        }
        for (std::size_t j = 0; j < b.m_c.size(); ++j) {
            out.m_c[i + j] = (out.m_c[i + j] + a.m_c[i] * b.m_c[j]) % a.m_p;
        }
    }
    out.trim();
    return out;
}

std::pair<fp_poly, fp_poly> divmod(const fp_poly &a, const fp_poly &b)
{
    check_modulus(a, b);
    if (b.is_zero()) {
        throw zero_division("polynomial division by zero");
    }
    const auto p = a.m_p;
    fp_poly q(p), r(a);
    if (a.degree() < b.degree()) {
        return {q, r};
    }
    const auto lead_inv = fp_inverse(b.leading(), p);
    q.m_c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0u);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
        const auto factor = (r.leading() * lead_inv) % p;
        q.m_c[shift] = factor;
        for (std::size_t j = 0; j < b.m_c.size(); ++j) {
            auto &slot = r.m_c[j + shift];
            slot = (slot + p - (factor * b.m_c[j]) % p) % p;
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

fp_poly gcd(const fp_poly &a, const fp_poly &b)
{
    fp_poly x(a), y(b);
    while (!y.is_zero()) {
        auto r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::string fp_poly::to_string(char var) const
{
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = m_c.size(); i-- > 0;) {
        if (m_c[i] == 0u) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        if (i == 0u || m_c[i] != 1u) {
            out += std::to_string(m_c[i]);
        }
        if (i >= 1u) {
            out += var;
            if (i > 1u) {
                out += "^" + std::to_string(i);
            }
        }
    }
    return out;
}

} // namespace hypertower
