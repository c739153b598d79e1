#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace segstd {

// Minimal CSV plumbing. Fields are plain comma-separated values with no
// quoting or escaping; every format this tool reads or writes uses simple
// codes and numbers, so that is all we support.

// Split one line on commas. Always returns at least one (possibly empty)
// field; a trailing '\r' (CRLF input) is stripped first.
std::vector<std::string> split_csv(std::string_view line);

std::string join_csv(const std::vector<std::string>& fields);

// Strict numeric parsers: the whole field must be consumed. Empty or
// malformed input yields nullopt.
std::optional<double> parse_double(std::string_view s);
std::optional<int> parse_int(std::string_view s);
std::optional<bool> parse_bool01(std::string_view s);  // "0" or "1" only

// printf %.{sig}g formatting; sig is clamped to [1, 17].
std::string format_g(double v, int sig);

}  // namespace segstd
