#ifndef HYPERTOWER_JSON_IO_HPP
#define HYPERTOWER_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include <hypertower/basefields.hpp>
#include <hypertower/krasner.hpp>
#include <hypertower/oag.hpp>

namespace hypertower::json_io
{

using json = nlohmann::json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
json to_json(const mpz_class &n);
json to_json(const oag::group_element &g);
json to_json(const oag::extended_value &e);
json to_json(const oag::trop_set &s);
json to_json(const field_descriptor &d);
json to_json(const field_element &x);
json to_json(const approximation &a);
json to_json(const krasner::gamma_coset &c);
json to_json(const krasner::hyper_sum &s);
json to_json(const krasner::value_set &s);

// Parsing throws std::invalid_argument on malformed input.
field_descriptor parse_descriptor(const std::string &kind, std::uint64_t p);
// Accepts an inline JSON value or a bare rational such as "-3/25".
field_element parse_element(const field_descriptor &d, const std::string &text);
field_element parse_element(const field_descriptor &d, const json &j);
approximation parse_approximation(const json &j);

} // namespace hypertower::json_io

#endif
