#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fbmgreeks/errors.hpp"
#include "fbmgreeks/scalar_function.hpp"

using namespace fbmgreeks;

namespace {

std::vector<ScalarFunction> catalog() {
  return {ScalarFunction::constant(2.5),      ScalarFunction::affine(-1.5, 0.25),
          ScalarFunction::polynomial({1, -2, 0.5, 0.3}), ScalarFunction::paper_sigma(),
          ScalarFunction::paper_sigma_tilde(), ScalarFunction::square(),
          ScalarFunction::identity()};
}

}  // namespace

TEST(ScalarFunction, NamedCoefficientsMatchClosedForms) {
  const auto sigma = ScalarFunction::paper_sigma();
  const auto tilde = ScalarFunction::paper_sigma_tilde();
  for (double y : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
    EXPECT_DOUBLE_EQ(sigma.value(y), 1.0 + std::exp(-y * y));
    EXPECT_DOUBLE_EQ(tilde.value(y), 1.0 + std::numbers::pi / 2 + std::atan(y));
    EXPECT_DOUBLE_EQ(ScalarFunction::square().value(y), y * y);
    EXPECT_DOUBLE_EQ(ScalarFunction::identity().value(y), y);
  }
  EXPECT_DOUBLE_EQ(ScalarFunction::polynomial({1, 2, 3}).value(2.0), 17.0);
  EXPECT_DOUBLE_EQ(ScalarFunction::affine(3, -1).value(2.0), 5.0);
}

TEST(ScalarFunction, DerivativesAgreeWithCentralDifferences) {
  const double eps = 1e-5;
  for (const auto& f : catalog()) {
    for (double y : {-1.7, -0.4, 0.0, 0.9, 2.2}) {
      const double fd = (f.value(y + eps) - f.value(y - eps)) / (2 * eps);
      const double d = f.derivative(y);
      EXPECT_NEAR(d, fd, 1e-6 * std::max(1.0, std::abs(d))) << f.to_string() << " at " << y;
    }
  }
}

TEST(ScalarFunction, ToStringRoundTripsExactly) {
  for (const auto& f : catalog()) EXPECT_EQ(ScalarFunction::parse(f.to_string()), f) << f.to_string();
  const auto odd = ScalarFunction::affine(0.1 + 0.2, 1.0 / 3.0);
  EXPECT_EQ(ScalarFunction::parse(odd.to_string()), odd);
}

TEST(ScalarFunction, ParseAcceptsWhitespaceAndBareNames) {
  EXPECT_EQ(ScalarFunction::parse("  affine( 2 , -1 ) "), ScalarFunction::affine(2, -1));
  EXPECT_EQ(ScalarFunction::parse("square"), ScalarFunction::square());
  EXPECT_EQ(ScalarFunction::parse("paper_sigma()"), ScalarFunction::paper_sigma());
  EXPECT_EQ(ScalarFunction::parse("polynomial(1,0,2)"), ScalarFunction::polynomial({1, 0, 2}));
}

TEST(ScalarFunction, ParseRejectsUnknownNamesAndWrongArity) {
  EXPECT_THROW(ScalarFunction::parse("cosh(1)"), ConfigError);
  EXPECT_THROW(ScalarFunction::parse("constant"), ConfigError);
  EXPECT_THROW(ScalarFunction::parse("constant(1,2)"), ConfigError);
  EXPECT_THROW(ScalarFunction::parse("affine(1)"), ConfigError);
  EXPECT_THROW(ScalarFunction::parse("square(2)"), ConfigError);
  EXPECT_THROW(ScalarFunction::parse("constant(abc)"), ConfigError);
  EXPECT_THROW(ScalarFunction::parse("constant(1"), ConfigError);
  EXPECT_THROW(ScalarFunction::parse("polynomial()"), ConfigError);
}

TEST(ScalarFunction, IsConstantDetectsZeroDerivative) {
  EXPECT_TRUE(ScalarFunction::constant(3).is_constant());
  EXPECT_TRUE(ScalarFunction::affine(0, 3).is_constant());
  EXPECT_TRUE(ScalarFunction::polynomial({4}).is_constant());
  EXPECT_FALSE(ScalarFunction::paper_sigma().is_constant());
  EXPECT_FALSE(ScalarFunction::square().is_constant());
}
