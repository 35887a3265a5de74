#ifndef HYPERTOWER_LAWS_HPP
#define HYPERTOWER_LAWS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <hypertower/basefields.hpp>
#include <hypertower/tower.hpp>

namespace hypertower::laws
{

struct config {
    std::uint64_t seed = 0;
    std::size_t samples = 200;
    long height = 50;
};

// lee, tropical, hom, cone, slice, singlevalued, universal, oracle-roundtrip.
const std::vector<std::string> &suite_names();

// Throws std::invalid_argument for an unknown suite. Suites that include a
// negative control fail if the control does not produce a counterexample.
tower::law_report run_suite(const std::string &name, const config &cfg);

// Membership of z in the union of [x]_gamma + [y]_gamma straight from the
// definition: look for 1-units t, u of level gamma with z t = x + y u, trying
// t = 1 (solve for u) and u = 1 (solve for t). Returns the witness (t, u).
struct lee_witness {
    field_element t;
    field_element u;
};
std::optional<lee_witness> definitional_member(const field_element &x, const field_element &y,
                                               const field_element &z, long gamma);

} // namespace hypertower::laws

#endif
