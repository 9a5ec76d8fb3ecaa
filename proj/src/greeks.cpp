#include "fbmgreeks/greeks.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>
#include <ostream>

#include "fbmgreeks/errors.hpp"
#include "fbmgreeks/fractional_ops.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

namespace fbmgreeks {

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::pathwise_delta: return "pathwise_delta";
    case EstimatorKind::pathwise_vega: return "pathwise_vega";
    case EstimatorKind::weight_delta: return "weight_delta";
    case EstimatorKind::finance_mu: return "finance_mu";
  }
  return "unknown";
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile needs p in (0,1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley step on Phi(x) - p
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

ConfidenceInterval confidence_interval(double theta, double std, std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("confidence level alpha must lie in (0,1)");
  if (n < 2) throw DomainError("confidence interval needs at least 2 samples");
  if (!(std >= 0.0)) throw DomainError("standard deviation must be non-negative");
  const double t = normal_quantile(1.0 - alpha / 2.0);
  const double half = t * std / std::sqrt(static_cast<double>(n));
  return {theta - half, theta + half, t};
}

ConvergenceTrace build_trace(std::span<const double> values, double alpha) {
  if (values.empty()) throw ConfigError("cannot build a trace from an empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("confidence level alpha must lie in (0,1)");
  ConvergenceTrace trace;
  trace.records.reserve(values.size());
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    const double x = values[i - 1];
    const double delta = x - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (x - mean);
    if (i == 1) {
      trace.records.push_back({1, mean, mean, mean, true});
      continue;
    }
    const double sd = std::sqrt(std::max(m2, 0.0) / static_cast<double>(i - 1));
    const auto ci = confidence_interval(mean, sd, i, alpha);
    trace.records.push_back({i, mean, ci.low, ci.high, false});
  }
  return trace;
}

namespace {

// Sample standard deviation consistent with build_trace's final record.
double running_std(std::span<const double> values) {
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    const double delta = values[i - 1] - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (values[i - 1] - mean);
  }
  return values.size() < 2 ? 0.0 : std::sqrt(std::max(m2, 0.0) / static_cast<double>(values.size() - 1));
}

void require_options(const MonteCarloOptions& opts) {
  if (opts.n < 2) throw ConfigError("at least 2 paths are required");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
}

template <class PerPath>
EstimateResult run_estimator(EstimatorKind kind, const DyadicGrid& grid,
                             const MonteCarloOptions& opts, PerPath&& per_path) {
  require_options(opts);
  std::vector<double> samples(opts.n);
  detail::parallel_for(opts.n, [&](std::size_t i) {
    try {
      samples[i] = per_path(opts.seed.child(i));
    } catch (const NumericalError& e) {
      throw NumericalError("path " + std::to_string(i) + ": " + e.what(), static_cast<long>(i));
    }
  });

  EstimateResult out;
  out.trace = build_trace(samples, opts.alpha);
  const auto& last = out.trace.records.back();
  auto& r = out.report;
  r.theta = last.theta;
  r.std = running_std(samples);
  r.ci_low = last.ci_low;
  r.ci_high = last.ci_high;
  r.t_alpha = normal_quantile(1.0 - opts.alpha / 2.0);
  r.n = opts.n;
  r.n2 = grid.n2();
  r.horizon = grid.horizon();
  r.alpha = opts.alpha;
  r.seed = opts.seed;
  r.estimator_kind = kind;
  out.samples = std::move(samples);
  return out;
}

void require_young(HurstParameter h) {
  if (!h.young_regime()) {
    throw DomainError("estimator requires H > 1/2, got H = " + std::to_string(h.value()));
  }
}

}  // namespace

EstimateResult pathwise_delta(const ModelSpec& model, const DyadicGrid& grid, HurstParameter h,
                              const MonteCarloOptions& opts) {
  require_young(h);
  return run_estimator(EstimatorKind::pathwise_delta, grid, opts, [&](const SeedRecord& s) {
    const auto path = sample_fbm_circulant(grid, h, s);
    const auto X = euler_state(model, path).X;
    const auto Y = euler_tangent(model, path, X);
    return model.payoff.derivative(X.back()) * Y.back();
  });
}

EstimateResult pathwise_vega(const ModelSpec& model, const DyadicGrid& grid, HurstParameter h,
                             const MonteCarloOptions& opts) {
  require_young(h);
  if (!model.vol_direction) throw ConfigError("pathwise vega requires a volatility direction");
  return run_estimator(EstimatorKind::pathwise_vega, grid, opts, [&](const SeedRecord& s) {
    const auto path = sample_fbm_circulant(grid, h, s);
    const auto X = euler_state(model, path).X;
    const auto Z = euler_variation(model, path, X);
    return model.payoff.derivative(X.back()) * Z.back();
  });
}

EstimateResult weight_delta(const ModelSpec& model, const DyadicGrid& grid, HurstParameter h,
                            const MonteCarloOptions& opts) {
  if (h.value() < 0.5) throw DomainError("weight delta requires H >= 1/2");
  const VolterraKernel kernel(h);
  const double T = grid.horizon();
  return run_estimator(EstimatorKind::weight_delta, grid, opts, [&](const SeedRecord& s) {
    const auto dB = brownian_increments(grid, s);
    const auto path = fbm_from_brownian(kernel, dB, grid, s);
    const auto X = detail::euler_state_any_regime(model, path);
    const auto Y = detail::euler_tangent_any_regime(model, path, X);
    SampledFunction h_dot{grid, std::vector<double>(X.size())};
    for (std::size_t k = 0; k < X.size(); ++k) {
      const double sig = model.vol.value(X[k]);
      if (!(std::abs(sig) >= kSigmaFloor)) {
        throw NumericalError("volatility below invertibility floor at step " + std::to_string(k),
                             static_cast<long>(k));
      }
      h_dot.values[k] = Y[k] / (T * sig);
    }
    return model.payoff.value(X.back()) * fbm_divergence(h_dot, h, dB);
  });
}

FinanceTrajectory solve_finance_path(const FinanceModelSpec& m, const FbmPath& path1,
                                     const FbmPath& path2) {
  if (!(path1.grid == path2.grid)) throw ConfigError("driving paths must share one grid");
  const std::size_t n = path1.grid.steps();
  const double dt = path1.grid.step();
  FinanceTrajectory tr;
  tr.S.resize(n + 1);
  tr.X.resize(n + 1);
  tr.ZS.resize(n + 1);
  tr.ZX.resize(n + 1);
  tr.S[0] = m.s0;
  tr.X[0] = m.x0;
  tr.ZS[0] = 0.0;
  tr.ZX[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = tr.S[k], x = tr.X[k];
    const double d1 = path1.values[k + 1] - path1.values[k];
    const double d2 = path2.values[k + 1] - path2.values[k];
    tr.S[k + 1] = s + m.drift.value(s) * dt + m.vol.value(x) * d1;
    tr.X[k + 1] = x + m.mu.value(x) * d2;
    tr.ZX[k + 1] = tr.ZX[k] + (m.mu.derivative(x) * tr.ZX[k] + m.mu_direction.value(x)) * d2;
    tr.ZS[k + 1] = tr.ZS[k] + m.drift.derivative(s) * tr.ZS[k] * dt +
                   m.vol.derivative(x) * tr.ZX[k] * d1;
    for (double v : {tr.S[k + 1], tr.X[k + 1], tr.ZS[k + 1], tr.ZX[k + 1]}) {
      if (!std::isfinite(v) || std::abs(v) > kDivergenceBound) {
        throw NumericalError("finance system diverged at step " + std::to_string(k + 1),
                             static_cast<long>(k + 1));
      }
    }
  }
  return tr;
}

EstimateResult finance_mu_sensitivity(const FinanceModelSpec& fmodel, const DyadicGrid& grid,
                                      const MonteCarloOptions& opts) {
  require_young(fmodel.h1);
  require_young(fmodel.h2);
  return run_estimator(EstimatorKind::finance_mu, grid, opts, [&](const SeedRecord& s) {
    const auto [p1, p2] = sample_fbm_pair(grid, fmodel.h1, fmodel.h2, s);
    const auto tr = solve_finance_path(fmodel, p1, p2);
    const double sT = tr.S.back();
    const double chain = fmodel.payoff.derivative(fmodel.price_map.value(sT)) *
                         fmodel.price_map.derivative(sT);
    return chain * tr.ZS.back();
  });
}

std::string report_to_json(const EstimateReport& r) {
  nlohmann::ordered_json j;
  j["estimator_kind"] = to_string(r.estimator_kind);
  j["theta"] = r.theta;
  j["std"] = r.std;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["t_alpha"] = r.t_alpha;
  j["n"] = r.n;
  j["n2"] = r.n2;
  j["horizon"] = r.horizon;
  j["alpha"] = r.alpha;
  j["seed"] = {{"master", r.seed.master}, {"stream", r.seed.stream}};
  return j.dump(2);
}

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace) {
  os << "i,theta,ci_low,ci_high\n";
  for (const auto& rec : trace.records) {
    os << rec.i << ',' << detail::format_double6(rec.theta) << ','
       << detail::format_double6(rec.ci_low) << ',' << detail::format_double6(rec.ci_high) << '\n';
  }
}

}  // namespace fbmgreeks
