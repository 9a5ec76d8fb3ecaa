#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fbmgreeks/young_sde.hpp"

namespace fbmgreeks {

enum class EstimatorKind { pathwise_delta, pathwise_vega, weight_delta, finance_mu };

std::string to_string(EstimatorKind kind);

/// Monte Carlo estimate with its asymptotic confidence interval
/// theta +- t_alpha * std / sqrt(n).
struct EstimateReport {
  double theta = 0.0;
  double std = 0.0;  // empirical standard deviation, n-1 denominator
  double ci_low = 0.0;
  double ci_high = 0.0;
  double t_alpha = 0.0;
  std::size_t n = 0;
  int n2 = 0;
  double horizon = 1.0;
  double alpha = 0.05;
  SeedRecord seed;
  EstimatorKind estimator_kind = EstimatorKind::pathwise_delta;
};

struct TraceRecord {
  std::size_t i = 0;
  double theta = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool degenerate = false;  // i == 1: no spread estimate, interval collapsed to theta
};

/// Running estimates; record i uses exactly the first i samples.
struct ConvergenceTrace {
  std::vector<TraceRecord> records;
};

struct EstimateResult {
  EstimateReport report;
  ConvergenceTrace trace;
  std::vector<double> samples;  // per-path summands, in path order
};

/// Standard normal quantile (Acklam's rational approximation with one Halley
/// refinement step).
double normal_quantile(double p);

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
  double t_alpha = 0.0;
};

/// [theta -+ t_alpha std / sqrt(n)] with Phi(t_alpha) = 1 - alpha/2.
ConfidenceInterval confidence_interval(double theta, double std, std::size_t n, double alpha);

/// Throws ConfigError on empty input.
ConvergenceTrace build_trace(std::span<const double> per_path_values, double alpha);

/// Common options of every estimator. Path i is driven by seed.child(i).
struct MonteCarloOptions {
  std::size_t n = 500;
  double alpha = 0.05;
  SeedRecord seed;
};

/// Mean of F'(X_T) Y_T over fBm paths sampled by circulant embedding.
EstimateResult pathwise_delta(const ModelSpec& model, const DyadicGrid& grid, HurstParameter h,
                              const MonteCarloOptions& opts);

/// Mean of F'(X_T) Z_T; requires model.vol_direction.
EstimateResult pathwise_vega(const ModelSpec& model, const DyadicGrid& grid, HurstParameter h,
                             const MonteCarloOptions& opts);

/// Invertibility floor for sigma in the weight estimator.
inline constexpr double kSigmaFloor = 1e-8;

/// Mean of F(X_T) delta_H(I_H^{-1} h) with hdot_t = Y_t / (T sigma(X_t)).
/// The Brownian path is primal and B^H is derived from it through the
/// Volterra kernel (identity at H = 1/2, where the scheme is Euler-Maruyama).
/// Does not evaluate F'. H >= 1/2.
EstimateResult weight_delta(const ModelSpec& model, const DyadicGrid& grid, HurstParameter h,
                            const MonteCarloOptions& opts);

/// Single asset driven by a fractional stochastic volatility factor:
///   dS = b(S) dt + sigma(X) dB^{H1},  dX = mu(X) dB^{H2},  price = c(S).
struct FinanceModelSpec {
  ScalarFunction drift = ScalarFunction::constant(0.0);
  ScalarFunction vol = ScalarFunction::paper_sigma();
  ScalarFunction mu = ScalarFunction::constant(0.3);
  ScalarFunction mu_direction = ScalarFunction::constant(0.1);
  ScalarFunction price_map = ScalarFunction::identity();
  ScalarFunction payoff = ScalarFunction::square();
  double s0 = 1.0;
  double x0 = 0.0;
  HurstParameter h1{0.6};
  HurstParameter h2{0.6};

  friend bool operator==(const FinanceModelSpec&, const FinanceModelSpec&) = default;
};

/// Euler solution of the coupled system and its variation in the direction
/// mu~ (ZS, ZX), on one pair of driving paths.
struct FinanceTrajectory {
  std::vector<double> S, X, ZS, ZX;
};

FinanceTrajectory solve_finance_path(const FinanceModelSpec& fmodel, const FbmPath& path1,
                                     const FbmPath& path2);

/// Mean of (F o c)'(S_T) ZS_T; the fBm pair of path i is
/// sample_fbm_pair(grid, H1, H2, seed.child(i)).
EstimateResult finance_mu_sensitivity(const FinanceModelSpec& fmodel, const DyadicGrid& grid,
                                      const MonteCarloOptions& opts);

/// JSON object with every report field (full precision).
std::string report_to_json(const EstimateReport& report);

/// CSV `i,theta,ci_low,ci_high` with 6 significant digits.
void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace);

}  // namespace fbmgreeks
