#pragma once

#include <iosfwd>

namespace symstat {

// Entry point of the command-line tool; exposed so tests can drive it
// in-process. Exit codes: 0 success, 1 model/classification refusal,
// 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace symstat
