#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "fbmgreeks/gaussian_paths.hpp"
#include "fbmgreeks/scalar_function.hpp"

namespace fbmgreeks {

/// dX = b(X) dt + sigma(X) dB^H, X_0 = x0, with payoff F and an optional
/// volatility direction sigma~ for vega.
struct ModelSpec {
  ScalarFunction drift = ScalarFunction::constant(0.0);
  ScalarFunction vol = ScalarFunction::constant(1.0);
  std::optional<ScalarFunction> vol_direction;
  ScalarFunction payoff = ScalarFunction::identity();
  double x0 = 0.0;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// State X, tangent Y = dX/dx0 and variation Z = dX/dsigma.sigma~ on a grid.
/// Absent sequences are empty.
struct TrajectoryBundle {
  DyadicGrid grid;
  std::vector<double> X;
  std::vector<double> Y;
  std::vector<double> Z;
};

/// Paths are aborted once |X| exceeds this bound.
inline constexpr double kDivergenceBound = 1e12;

/// Euler scheme X_k = X_{k-1} + b(X_{k-1}) T/N1 + sigma(X_{k-1}) dB^H_k.
/// Requires H > 1/2; throws NumericalError (with the step index) on
/// divergence.
TrajectoryBundle euler_state(const ModelSpec& model, const FbmPath& path);

/// Tangent scheme Y_k = Y_{k-1} (1 + b'(X_{k-1}) T/N1 + sigma'(X_{k-1}) dB^H_k), Y_0 = 1.
std::vector<double> euler_tangent(const ModelSpec& model, const FbmPath& path,
                                  const std::vector<double>& X);

/// Variation scheme
/// Z_k = Z_{k-1} (1 + b' T/N1 + sigma' dB^H_k) + sigma~(X_{k-1}) dB^H_k, Z_0 = 0.
/// Throws ConfigError when the model has no volatility direction.
std::vector<double> euler_variation(const ModelSpec& model, const FbmPath& path,
                                    const std::vector<double>& X);

namespace detail {
/// The state and tangent recursions without the H > 1/2 check; at H = 1/2
/// they are the Euler-Maruyama (Ito) schemes.
std::vector<double> euler_state_any_regime(const ModelSpec& model, const FbmPath& path);
std::vector<double> euler_tangent_any_regime(const ModelSpec& model, const FbmPath& path,
                                             const std::vector<double>& X);
}  // namespace detail

/// Self-convergence statistics of the Euler state scheme across dyadic
/// levels sharing one noise realization per path.
struct ConvergenceTable {
  std::vector<int> levels;
  /// Mean over paths of sup_k |X^(l) - X^(finest)| on level-l nodes; one
  /// entry per level except the finest.
  std::vector<double> error_vs_reference;
  /// Mean over paths of sup_k |X^(l) - X^(l+1)| on level-l nodes; one entry
  /// per consecutive pair.
  std::vector<double> error_consecutive;
  /// Least-squares decay order of error_consecutive in log2 scale; empty when
  /// some error is exactly zero.
  std::optional<double> fitted_order;
  /// Same fit applied to error_vs_reference.
  std::optional<double> fitted_order_vs_reference;
};

/// Coarse-level noise is the subsampled finest-level fBm path. Path i uses
/// seed.child(i). Needs at least three strictly increasing levels.
ConvergenceTable convergence_probe(const ModelSpec& model, HurstParameter h,
                                   const std::vector<int>& n2_levels, std::size_t n_paths,
                                   const SeedRecord& seed, double horizon = 1.0);

/// Restriction of a path to the coarser dyadic grid of order `n2`.
FbmPath subsample(const FbmPath& path, int n2);

/// Least-squares slope of log2(values) against levels, negated.
std::optional<double> fitted_log2_order(const std::vector<int>& levels,
                                        const std::vector<double>& values);

/// CSV `k,t,X[,Y][,Z]`.
void write_trajectory_csv(std::ostream& os, const TrajectoryBundle& bundle);

}  // namespace fbmgreeks
