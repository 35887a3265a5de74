#include <hypertower/json_io.hpp>

#include <limits>
#include <stdexcept>

namespace hypertower::json_io
{

json to_json(const mpz_class &n)
{
    if (mpz_fits_slong_p(n.get_mpz_t())) {
        return n.get_si();
    }
    return n.get_str();
}

json to_json(const oag::group_element &g)
{
    json out = json::array();
    for (const auto &c : g.coordinates()) {
        out.push_back(to_json(c));
    }
    return out;
}

json to_json(const oag::extended_value &e)
{
    if (e.is_infinite()) {
        return "inf";
    }
    return to_json(e.finite());
}

json to_json(const oag::trop_set &s)
{
    const bool single = s.set_kind() == oag::trop_set::kind::singleton;
    return {{"kind", single ? "singleton" : "upinterval"}, {"value", to_json(s.value())}};
}

json to_json(const field_descriptor &d)
{
    const char *kind = "rational";
    if (d.kind() == field_kind::function_field) {
        kind = "function";
    } else if (d.kind() == field_kind::quadratic) {
        kind = "quadratic";
    }
    return {{"kind", kind}, {"p", d.p()}};
}

json to_json(const field_element &x)
{
    switch (x.descriptor().kind()) {
        case field_kind::rational:
            return x.as_rational().get_str();
        case field_kind::function_field: {
            const auto &f = x.as_function();
            return {{"num", f.num.coefficients()}, {"den", f.den.coefficients()}};
        }
        case field_kind::quadratic: {
            const auto &q = x.as_quadratic();
            return {{"a", q.a.get_str()}, {"b", q.b.get_str()}};
        }
    }
    throw std::logic_error("unknown field kind");
}

json to_json(const approximation &a)
{
    return {{"shift", a.shift}, {"digits", a.digits}, {"p", a.p}};
}

json to_json(const krasner::gamma_coset &c)
{
    return {{"level", to_json(c.level())}, {"rep", to_json(c.rep())}};
}

json to_json(const krasner::hyper_sum &s)
{
    json out{{"level", to_json(s.level)},
             {"center", to_json(s.center)},
             {"radius", to_json(s.radius)},
             {"zero", s.contains_zero}};
    if (s.singleton) {
        out["singleton"] = to_json(*s.singleton);
    }
    return out;
}

json to_json(const krasner::value_set &s)
{
    const bool single = s.set_kind == krasner::value_set::kind::singleton;
    return {{"kind", single ? "singleton" : "open_ray"}, {"value", to_json(s.value)}};
}

field_descriptor parse_descriptor(const std::string &kind, std::uint64_t p)
{
    if (kind == "rational") {
        return field_descriptor::rational(p);
    }
    if (kind == "function") {
        return field_descriptor::function_field(p);
    }
    if (kind == "quadratic") {
        return field_descriptor::quadratic(p);
    }
    throw std::invalid_argument("unknown field kind '" + kind + "' (rational, function, quadratic)");
}

namespace
{

mpq_class parse_rational(const std::string &s)
{
    if (s.empty()) {
        throw std::invalid_argument("empty rational");
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    q.canonicalize();
    return q;
}

mpq_class rational_of(const json &j)
{
    if (j.is_number_integer()) {
        return mpq_class(mpz_class(std::to_string(j.get<long long>())));
    }
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    throw std::invalid_argument("expected a rational, got " + j.dump());
}

fp_poly poly_of(const json &j, std::uint64_t p)
{
    if (!j.is_array()) {
        throw std::invalid_argument("expected a coefficient array, got " + j.dump());
    }
    std::vector<std::int64_t> c;
    for (const auto &x : j) {
        if (!x.is_number_integer()) {
            throw std::invalid_argument("polynomial coefficient must be an integer, got " + x.dump());
        }
        c.push_back(x.get<std::int64_t>());
    }
    return fp_poly(p, c);
}

} // namespace

field_element parse_element(const field_descriptor &d, const json &j)
{
    switch (d.kind()) {
        case field_kind::rational:
            return field_element::rational(d, rational_of(j));
        case field_kind::function_field:
            if (j.is_array()) {
                return field_element::function(d, poly_of(j, d.p()), fp_poly::constant(d.p(), 1));
            }
            if (j.is_object()) {
                if (!j.contains("num")) {
                    throw std::invalid_argument("function field element needs \"num\"");
                }
                const auto den = j.contains("den") ? poly_of(j.at("den"), d.p()) : fp_poly::constant(d.p(), 1);
                if (den.is_zero()) {
                    throw std::invalid_argument("zero denominator polynomial");
                }
                return field_element::function(d, poly_of(j.at("num"), d.p()), den);
            }
            return field_element::rational(d, rational_of(j));
        case field_kind::quadratic:
            if (j.is_object()) {
                const auto a = j.contains("a") ? rational_of(j.at("a")) : mpq_class(0);
                const auto b = j.contains("b") ? rational_of(j.at("b")) : mpq_class(0);
                return field_element::quadratic(d, a, b);
            }
            return field_element::rational(d, rational_of(j));
    }
    throw std::logic_error("unknown field kind");
}

field_element parse_element(const field_descriptor &d, const std::string &text)
{
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[' || text[first] == '"')) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error &e) {
            throw std::invalid_argument(std::string("malformed element JSON: ") + e.what());
        }
        return parse_element(d, j);
    }
    return field_element::rational(d, parse_rational(text));
}

approximation parse_approximation(const json &j)
{
    if (!j.is_object() || !j.contains("digits") || !j.contains("p")) {
        throw std::invalid_argument("approximation needs \"p\" and \"digits\"");
    }
    approximation a;
    a.p = j.at("p").get<std::uint64_t>();
    a.shift = j.value("shift", 0L);
    for (const auto &d : j.at("digits")) {
        const auto digit = d.get<std::uint64_t>();
        if (digit >= a.p) {
            throw std::invalid_argument("digit " + std::to_string(digit) + " out of range for p="
                                        + std::to_string(a.p));
        }
        a.digits.push_back(digit);
    }
    return a;
}

} // namespace hypertower::json_io
