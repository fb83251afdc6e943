#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fuzzyclf {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict parse of a whole token as a double (surrounding spaces allowed).
/// Returns false on any trailing garbage or empty input.
bool parse_double(std::string_view text, double& value);
bool parse_int(std::string_view text, long long& value);

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split_view(std::string_view s, char sep);

}  // namespace fuzzyclf
