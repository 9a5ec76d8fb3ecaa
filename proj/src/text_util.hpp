#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fbmgreeks::detail {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

/// Full-string decimal parse; throws ConfigError on trailing garbage.
double parse_double(std::string_view s);
long long parse_integer(std::string_view s);
unsigned long long parse_unsigned(std::string_view s);

/// Shortest representation that parses back to the same double.
std::string format_double_exact(double x);

/// Decimal with 6 significant digits.
std::string format_double6(double x);

}  // namespace fbmgreeks::detail
