#include "text_util.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "fbmgreeks/errors.hpp"

namespace fbmgreeks::detail {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

namespace {

template <class T>
T parse_number(std::string_view s, const char* what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("expected " + std::string(what) + ", got '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

double parse_double(std::string_view s) { return parse_number<double>(s, "a real number"); }
long long parse_integer(std::string_view s) { return parse_number<long long>(s, "an integer"); }
unsigned long long parse_unsigned(std::string_view s) {
  return parse_number<unsigned long long>(s, "a non-negative integer");
}

std::string format_double_exact(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string format_double6(double x) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6g", x);
  return buf.data();
}

}  // namespace fbmgreeks::detail
