#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fbmgreeks {

/// Closed catalog of coefficient and payoff functions with exact derivatives.
enum class FunctionTag {
  constant,           // c
  affine,             // a*y + c
  polynomial,         // sum_i coeffs[i] * y^i
  paper_sigma,        // 1 + exp(-y^2)
  paper_sigma_tilde,  // 1 + pi/2 + atan(y)
  square,             // y^2
  identity,           // y
};

class ScalarFunction {
 public:
  static ScalarFunction constant(double c);
  static ScalarFunction affine(double a, double c);
  static ScalarFunction polynomial(std::vector<double> coeffs);
  static ScalarFunction paper_sigma();
  static ScalarFunction paper_sigma_tilde();
  static ScalarFunction square();
  static ScalarFunction identity();

  /// Parses `name` or `name(arg, ...)`; throws ConfigError on unknown names
  /// or wrong arity.
  static ScalarFunction parse(std::string_view text);

  double value(double y) const;
  double derivative(double y) const;

  FunctionTag tag() const noexcept { return tag_; }
  const std::vector<double>& parameters() const noexcept { return params_; }

  /// Canonical `name(args)` form accepted by parse(); round-trips exactly.
  std::string to_string() const;

  /// True when the derivative is identically zero.
  bool is_constant() const noexcept;

  friend bool operator==(const ScalarFunction&, const ScalarFunction&) = default;

 private:
  ScalarFunction(FunctionTag tag, std::vector<double> params)
      : tag_(tag), params_(std::move(params)) {}

  FunctionTag tag_;
  std::vector<double> params_;
};

}  // namespace fbmgreeks
