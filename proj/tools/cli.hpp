#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace primelab::cli {

/// Parses a non-negative integer given in decimal or scientific notation
/// ("100000000", "1e8", "2.5E3"); rejects values that are not exact integers.
std::uint64_t parse_exact_integer(std::string_view text);

/// Comma-separated list of exact integers.
std::vector<std::uint64_t> parse_integer_list(std::string_view text);

/// Runs one command line (argv[0] excluded). Data goes to `out`, errors to
/// `err` as "ERROR <code>: <message>". Returns the process exit status:
/// 0 success, 2 usage error, 1 any other failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primelab::cli
