#include "fbmgreeks/scalar_function.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fbmgreeks/errors.hpp"
#include "text_util.hpp"

namespace fbmgreeks {

ScalarFunction ScalarFunction::constant(double c) { return {FunctionTag::constant, {c}}; }
ScalarFunction ScalarFunction::affine(double a, double c) { return {FunctionTag::affine, {a, c}}; }
ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw ConfigError("polynomial needs at least one coefficient");
  return {FunctionTag::polynomial, std::move(coeffs)};
}
ScalarFunction ScalarFunction::paper_sigma() { return {FunctionTag::paper_sigma, {}}; }
ScalarFunction ScalarFunction::paper_sigma_tilde() { return {FunctionTag::paper_sigma_tilde, {}}; }
ScalarFunction ScalarFunction::square() { return {FunctionTag::square, {}}; }
ScalarFunction ScalarFunction::identity() { return {FunctionTag::identity, {}}; }

double ScalarFunction::value(double y) const {
  switch (tag_) {
    case FunctionTag::constant: return params_[0];
    case FunctionTag::affine: return params_[0] * y + params_[1];
    case FunctionTag::polynomial: {
      double acc = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * y + *it;
      return acc;
    }
    case FunctionTag::paper_sigma: return 1.0 + std::exp(-y * y);
    case FunctionTag::paper_sigma_tilde: return 1.0 + std::numbers::pi / 2.0 + std::atan(y);
    case FunctionTag::square: return y * y;
    case FunctionTag::identity: return y;
  }
  return 0.0;
}

double ScalarFunction::derivative(double y) const {
  switch (tag_) {
    case FunctionTag::constant: return 0.0;
    case FunctionTag::affine: return params_[0];
    case FunctionTag::polynomial: {
      double acc = 0.0;
      for (std::size_t i = params_.size(); i-- > 1;) acc = acc * y + static_cast<double>(i) * params_[i];
      return acc;
    }
    case FunctionTag::paper_sigma: return -2.0 * y * std::exp(-y * y);
    case FunctionTag::paper_sigma_tilde: return 1.0 / (1.0 + y * y);
    case FunctionTag::square: return 2.0 * y;
    case FunctionTag::identity: return 1.0;
  }
  return 0.0;
}

bool ScalarFunction::is_constant() const noexcept {
  switch (tag_) {
    case FunctionTag::constant: return true;
    case FunctionTag::affine: return params_[0] == 0.0;
    case FunctionTag::polynomial:
      for (std::size_t i = 1; i < params_.size(); ++i)
        if (params_[i] != 0.0) return false;
      return true;
    default: return false;
  }
}

namespace {

struct CatalogEntry {
  std::string_view name;
  FunctionTag tag;
  int arity;  // -1: one or more
};

constexpr CatalogEntry kCatalog[] = {
    {"constant", FunctionTag::constant, 1},
    {"affine", FunctionTag::affine, 2},
    {"polynomial", FunctionTag::polynomial, -1},
    {"paper_sigma", FunctionTag::paper_sigma, 0},
    {"paper_sigma_tilde", FunctionTag::paper_sigma_tilde, 0},
    {"square", FunctionTag::square, 0},
    {"identity", FunctionTag::identity, 0},
};

}  // namespace

ScalarFunction ScalarFunction::parse(std::string_view text) {
  text = detail::trim(text);
  std::string_view name = text;
  std::vector<double> args;
  if (auto open = text.find('('); open != std::string_view::npos) {
    if (text.back() != ')') throw ConfigError("malformed function '" + std::string(text) + "'");
    name = detail::trim(text.substr(0, open));
    auto inner = detail::trim(text.substr(open + 1, text.size() - open - 2));
    if (!inner.empty()) {
      for (auto piece : detail::split(inner, ',')) args.push_back(detail::parse_double(piece));
    }
  }
  for (const auto& e : kCatalog) {
    if (e.name != name) continue;
    const int n = static_cast<int>(args.size());
    if ((e.arity >= 0 && n != e.arity) || (e.arity < 0 && n == 0)) {
      throw ConfigError("function '" + std::string(name) + "' takes " +
                        (e.arity < 0 ? std::string("at least 1") : std::to_string(e.arity)) +
                        " argument(s), got " + std::to_string(n));
    }
    return {e.tag, std::move(args)};
  }
  throw ConfigError("unknown function '" + std::string(name) + "'");
}

std::string ScalarFunction::to_string() const {
  std::string_view name;
  for (const auto& e : kCatalog)
    if (e.tag == tag_) name = e.name;
  std::string out(name);
  if (params_.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i) out += ", ";
    out += detail::format_double_exact(params_[i]);
  }
  out += ')';
  return out;
}

}  // namespace fbmgreeks
