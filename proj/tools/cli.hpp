// Command-line front end. Exit codes: 0 success, 1 usage, 2 runtime.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmlab::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a decimal LLR; accepts inf, +inf, -inf (any case).
double parse_llr(const std::string& text);

}  // namespace rmlab::cli
