#ifndef HYPERTOWER_CLI_HPP
#define HYPERTOWER_CLI_HPP

#include <ostream>

namespace hypertower::cli
{

// Exit codes: 0 success (or law suite pass), 1 law suite failure, 2 usage or
// input error. Results are one JSON document on `out`, diagnostics on `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace hypertower::cli

#endif
