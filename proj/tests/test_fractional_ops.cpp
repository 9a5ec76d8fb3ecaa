#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fbmgreeks/errors.hpp"
#include "fbmgreeks/fractional_ops.hpp"

using namespace fbmgreeks;

namespace {

double sup_error(const std::vector<double>& a, const std::vector<double>& b, std::size_t from = 0) {
  double e = 0.0;
  for (std::size_t k = from; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
  return e;
}

double inversion_error(int n2, double alpha) {
  const auto psi = SampledFunction::from(DyadicGrid(n2), [](double t) { return std::cos(t); });
  return sup_error(frac_derivative(frac_integral(psi, alpha), alpha).values, psi.values);
}

// int_0^{min(s,t)} K(t,u) K(s,u) du by tanh-sinh quadrature (endpoint singularities are
// handled by the double-exponential map).
double kernel_product_integral(const VolterraKernel& k, double s, double t) {
  boost::math::quadrature::tanh_sinh<double> q;
  const double m = std::min(s, t);
  return q.integrate([&](double u) { return k(t, u) * k(s, u); }, 0.0, m);
}

}  // namespace

TEST(FracIntegral, AnalyticValues) {
  const DyadicGrid g(8);
  const auto one = SampledFunction::from(g, [](double) { return 1.0; });
  const auto id = SampledFunction::from(g, [](double t) { return t; });
  EXPECT_NEAR(frac_integral(one, 0.5).values.back(), 1.0 / std::tgamma(1.5), 1e-12);
  EXPECT_NEAR(frac_integral(id, 0.5).values.back(), 1.0 / std::tgamma(2.5), 1e-12);
  const auto I = frac_integral(one, 0.3).values;
  for (std::size_t k = 0; k < I.size(); ++k)
    EXPECT_NEAR(I[k], std::pow(g.node(k), 0.3) / std::tgamma(1.3), 1e-12);
}

TEST(FracIntegral, AlphaOneIsTrapezoidRule) {
  const DyadicGrid g(5);
  const auto psi = SampledFunction::from(g, [](double t) { return std::exp(t); });
  const auto I = frac_integral(psi, 1.0).values;
  double acc = 0.0;
  EXPECT_EQ(I[0], 0.0);
  for (std::size_t k = 1; k < I.size(); ++k) {
    acc += 0.5 * g.step() * (psi.values[k - 1] + psi.values[k]);
    EXPECT_NEAR(I[k], acc, 1e-13);
  }
}

TEST(FracIntegral, RejectsOrderOutsideUnitInterval) {
  const auto psi = SampledFunction::from(DyadicGrid(3), [](double) { return 1.0; });
  EXPECT_THROW(frac_integral(psi, 0.0), DomainError);
  EXPECT_THROW(frac_integral(psi, 1.5), DomainError);
  EXPECT_THROW(frac_derivative(psi, -0.1), DomainError);
}

TEST(FracDerivative, AlphaOneCentralDifferences) {
  const DyadicGrid g(7);
  const auto sq = SampledFunction::from(g, [](double t) { return t * t; });
  const auto d = frac_derivative(sq, 1.0).values;
  double err = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) err = std::max(err, std::abs(d[k] - 2 * g.node(k)));
  EXPECT_LE(err, 2.0 / g.steps());
  EXPECT_NEAR(d[g.steps() / 2], 1.0, 1e-12);  // central differences are exact for quadratics
}

TEST(FracDerivative, AnalyticValueOfIdentity) {
  const DyadicGrid g(8);
  const auto id = SampledFunction::from(g, [](double t) { return t; });
  for (double a : {0.3, 0.5, 0.8}) {
    const auto d = frac_derivative(id, a).values;
    for (std::size_t k = 1; k < d.size(); ++k)
      EXPECT_NEAR(d[k], std::pow(g.node(k), 1 - a) / std::tgamma(2 - a), 1e-10) << a;
  }
}

TEST(FracDerivative, InversesFracIntegralUnderRefinement) {
  for (double a : {0.3, 0.5, 0.8}) {
    const double e6 = inversion_error(6, a), e8 = inversion_error(8, a);
    EXPECT_LT(e8, e6 / 1.5) << "alpha=" << a << " e6=" << e6 << " e8=" << e8;
    EXPECT_LT(e8, 1e-2);
  }
}

TEST(FracDerivative, NonFiniteResultIsNumericalError) {
  // psi(0) != 0 makes the derivative singular at t = 0
  const auto psi = SampledFunction::from(DyadicGrid(4), [](double) { return 1.0; });
  EXPECT_THROW(frac_derivative(psi, 0.5), NumericalError);
}

TEST(VolterraKernel, IndicatorAtOneHalf) {
  const VolterraKernel k{HurstParameter(0.5)};
  EXPECT_EQ(volterra_kernel_eval(k, 1.0, 0.3), 1.0);
  EXPECT_EQ(volterra_kernel_eval(k, 0.7, 0.69), 1.0);
  EXPECT_EQ(volterra_kernel_eval(k, 0.7, 0.7), 0.0);
}

TEST(VolterraKernel, DomainRules) {
  const VolterraKernel k{HurstParameter(0.6)};
  EXPECT_EQ(k(0.5, 0.5), 0.0);
  EXPECT_EQ(k(0.5, 0.9), 0.0);
  EXPECT_THROW(k(0.5, 0.0), DomainError);
  EXPECT_THROW(k(0.5, -0.1), DomainError);
  EXPECT_THROW(VolterraKernel(HurstParameter(0.4)), DomainError);
}

TEST(VolterraKernel, BlowsUpAtOriginAndDecaysAtDiagonal) {
  const VolterraKernel k{HurstParameter(0.6)};
  EXPECT_GT(k(1.0, 1e-8), k(1.0, 1e-4));
  EXPECT_GT(k(1.0, 1e-4), k(1.0, 1e-2));
  // K(t,s) ~ (t-s)^(H-1/2) near the diagonal
  EXPECT_LT(k(1.0, 1.0 - 1e-10), k(1.0, 1.0 - 1e-6));
  EXPECT_NEAR(k(1.0, 1.0 - 1e-10) / k(1.0, 1.0 - 1e-6), std::pow(1e-4, 0.1), 1e-4);
}

TEST(VolterraKernel, NormalizationMatchesClosedForm) {
  for (double H : {0.55, 0.6, 0.75, 0.9}) {
    const double c = std::sqrt(H * (2 * H - 1) / boost::math::beta(2 - 2 * H, H - 0.5));
    EXPECT_NEAR(VolterraKernel(HurstParameter(H)).normalization(), c, 1e-12);
  }
}

TEST(VolterraKernel, IntegralFormMatchesDefinition) {
  // K(t,s) = c s^(1/2-H) int_s^t (u-s)^(H-3/2) u^(H-1/2) du
  const double H = 0.7, t = 0.9, s = 0.35;
  const VolterraKernel k{HurstParameter(H)};
  // v = (u-s)^(H-1/2) removes the endpoint singularity; integrating the raw
  // form loses digits to the cancellation in u - s.
  const double a = H - 0.5;
  boost::math::quadrature::tanh_sinh<double> q;
  const double inner =
      q.integrate([&](double v) { return std::pow(s + std::pow(v, 1 / a), a) / a; }, 0.0, std::pow(t - s, a));
  EXPECT_NEAR(k(t, s), k.normalization() * std::pow(s, 0.5 - H) * inner, 1e-9);
}

TEST(VolterraKernel, CovarianceIdentityOnNodeSet) {
  const double nodes[] = {0.25, 0.5, 0.75, 1.0};
  for (double H : {0.55, 0.6, 0.75}) {
    const VolterraKernel k{HurstParameter(H)};
    for (double s : nodes)
      for (double t : nodes) {
        const double exact = fbm_covariance(s, t, HurstParameter(H));
        EXPECT_NEAR(kernel_product_integral(k, s, t), exact, 0.01 * exact) << H << ' ' << s << ' ' << t;
      }
  }
}

TEST(VolterraKernel, PrimitiveMatchesQuadrature) {
  for (double H : {0.55, 0.8}) {
    const VolterraKernel k{HurstParameter(H)};
    boost::math::quadrature::tanh_sinh<double> q;
    for (double s : {0.1, 0.4, 0.8, 1.0}) {
      const double ref = q.integrate([&](double r) { return k(1.0, r); }, 0.0, s);
      EXPECT_NEAR(k.primitive(1.0, s), ref, 1e-9) << H << ' ' << s;
    }
  }
}

TEST(FbmFromBrownian, CumulativeSumAtOneHalf) {
  const DyadicGrid g(6);
  const auto dB = brownian_increments(g, {4, 4});
  const auto p = fbm_from_brownian(VolterraKernel(HurstParameter(0.5)), dB, g);
  double acc = 0.0;
  EXPECT_EQ(p.values[0], 0.0);
  for (std::size_t k = 0; k < dB.size(); ++k) {
    acc += dB[k];
    EXPECT_DOUBLE_EQ(p.values[k + 1], acc);
  }
}

TEST(FbmFromBrownian, ZeroIncrementsGiveZeroPath) {
  const DyadicGrid g(5);
  const std::vector<double> zero(g.steps(), 0.0);
  const auto p = fbm_from_brownian(VolterraKernel(HurstParameter(0.7)), zero, g);
  for (double v : p.values) EXPECT_EQ(v, 0.0);
}

TEST(FbmFromBrownian, RejectsWrongSizeAndLargeGrids) {
  const DyadicGrid g(5);
  const VolterraKernel k{HurstParameter(0.7)};
  EXPECT_THROW(fbm_from_brownian(k, std::vector<double>(3), g), ConfigError);
  const DyadicGrid big(kMaxTableOrder + 1);
  EXPECT_THROW(fbm_from_brownian(k, std::vector<double>(big.steps()), big), DomainError);
}

TEST(FbmFromBrownian, TerminalVarianceNearOne) {
  const DyadicGrid g(8);
  const VolterraKernel k{HurstParameter(0.6)};
  const std::size_t n = 4000;
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = fbm_from_brownian(k, brownian_increments(g, {6, i}), g).values.back();
    v += x * x;
  }
  EXPECT_NEAR(v / n, 1.0, 0.02 + 3 * std::sqrt(2.0 / n));
}

TEST(CmWeightTransform, IdentityAtOneHalf) {
  const auto hd = SampledFunction::from(DyadicGrid(5), [](double t) { return std::sin(3 * t) + 2; });
  const auto u = cm_weight_transform(hd, HurstParameter(0.5));
  EXPECT_EQ(u.values, hd.values);
}

TEST(CmWeightTransform, RejectsRoughRegime) {
  const auto hd = SampledFunction::from(DyadicGrid(3), [](double) { return 1.0; });
  EXPECT_THROW(cm_weight_transform(hd, HurstParameter(0.4)), DomainError);
}

TEST(CmWeightTransform, ConstantDirectionClosedForm) {
  const double H = 0.6, beta = 0.5 - H;
  const double cH = (2 - 2 * H) * boost::math::beta(1.5 - H, 1.5 - H) / std::tgamma(1.5 - H);
  const DyadicGrid g(6);
  const auto u = cm_weight_transform(SampledFunction::from(g, [](double) { return 1.0; }), HurstParameter(H));
  EXPECT_NEAR(u.values.back(), cH, 1e-10);
  for (std::size_t k = 1; k < u.values.size(); ++k)
    EXPECT_NEAR(u.values[k], cH * std::pow(g.node(k), beta), 1e-10);
  EXPECT_TRUE(std::isfinite(u.values[0]));
}

TEST(CmWeightTransform, QuadraticDirectionConvergesUnderRefinement) {
  // hdot = s^2: u_t = (2b+3) B(b+1, b+3) t^(b+2) / Gamma(1+b), b = 1/2 - H
  for (double H : {0.6, 0.8}) {
    const double b = 0.5 - H;
    const auto exact = [&](double t) {
      return (2 * b + 3) * boost::math::beta(b + 1, b + 3) * std::pow(t, b + 2) / std::tgamma(1 + b);
    };
    const auto err = [&](int n2) {
      const DyadicGrid g(n2);
      const auto u = cm_weight_transform(SampledFunction::from(g, [](double t) { return t * t; }), HurstParameter(H));
      double e = 0.0;
      for (std::size_t k = 1; k < u.values.size(); ++k) e = std::max(e, std::abs(u.values[k] - exact(g.node(k))));
      return e;
    };
    const double e5 = err(5), e6 = err(6);
    EXPECT_GE(e5 / e6, 1.5) << "H=" << H << " e5=" << e5 << " e6=" << e6;
    EXPECT_LT(e6, 1e-2);
  }
}

TEST(CmWeightTransform, IsCausal) {
  const DyadicGrid g(5);
  auto hd = SampledFunction::from(g, [](double t) { return 1 + t * t; });
  const auto base = cm_weight_transform(hd, HurstParameter(0.7)).values;
  const std::size_t k = 13;
  for (std::size_t j = k + 1; j < hd.values.size(); ++j) hd.values[j] += 5.0 * j;
  const auto pert = cm_weight_transform(hd, HurstParameter(0.7)).values;
  for (std::size_t j = 0; j <= k; ++j) EXPECT_EQ(base[j], pert[j]) << j;
  EXPECT_NE(base[k + 1], pert[k + 1]);
}

TEST(DivergenceAdapted, UnitIntegrandGivesTerminalValue) {
  const DyadicGrid g(6);
  const auto dB = brownian_increments(g, {1, 2});
  const WeightIntegrand u{g, std::vector<double>(g.nodes(), 1.0)};
  EXPECT_NEAR(divergence_adapted(u, dB), std::accumulate(dB.begin(), dB.end(), 0.0), 1e-13);
}

TEST(DivergenceAdapted, LeftPointSum) {
  const DyadicGrid g(2);
  const WeightIntegrand u{g, {1, 2, 3, 4, 5}};
  EXPECT_DOUBLE_EQ(divergence_adapted(u, std::vector<double>{1, 10, 100, 1000}), 1 + 20 + 300 + 4000);
  EXPECT_THROW(divergence_adapted(u, std::vector<double>{1, 2}), ConfigError);
}

TEST(DivergenceAdapted, DeterministicIntegrandIsCentered) {
  const DyadicGrid g(5);
  const WeightIntegrand u{g, SampledFunction::from(g, [](double t) { return std::cos(4 * t); }).values};
  double var = 0.0;
  for (std::size_t k = 0; k < g.steps(); ++k) var += u.values[k] * u.values[k] * g.step();
  const std::size_t n = 10000;
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += divergence_adapted(u, brownian_increments(g, {12, i}));
  EXPECT_NEAR(mean / n, 0.0, 3 * std::sqrt(var / n));
}

TEST(FbmWeightNormalization, ClosedForm) {
  EXPECT_DOUBLE_EQ(fbm_weight_normalization(HurstParameter(0.5)), 1.0);
  for (double H : {0.6, 0.75}) {
    const double V = std::tgamma(2 - 2 * H) * std::cos(std::numbers::pi * H) / (std::numbers::pi * H * (1 - 2 * H));
    EXPECT_NEAR(fbm_weight_normalization(HurstParameter(H)), std::sqrt(V), 1e-12);
  }
}

TEST(FbmDivergence, DualityWithTerminalValue) {
  // E[B^H_1 delta(I^{-1} h)] = h(1) = 1 for h(t) = t
  const DyadicGrid g(6);
  for (double H : {0.5, 0.6}) {
    const VolterraKernel k{HurstParameter(H)};
    const auto hd = SampledFunction::from(g, [](double) { return 1.0; });
    const std::size_t n = 4000;
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto dB = brownian_increments(g, {21, i});
      const double v = fbm_from_brownian(k, dB, g).values.back() * fbm_divergence(hd, HurstParameter(H), dB);
      s += v;
      s2 += v * v;
    }
    const double mean = s / n, sd = std::sqrt((s2 - n * mean * mean) / (n - 1));
    EXPECT_NEAR(mean, 1.0, 3 * sd / std::sqrt(n)) << "H=" << H;
  }
}
