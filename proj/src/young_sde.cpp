#include "fbmgreeks/young_sde.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "fbmgreeks/errors.hpp"
#include "parallel.hpp"

namespace fbmgreeks {
namespace {

void require_young(const FbmPath& path) {
  if (!path.hurst.young_regime()) {
    throw DomainError("Euler solvers require H > 1/2, got H = " +
                      std::to_string(path.hurst.value()));
  }
}

void guard(double value, std::size_t k, const char* what) {
  if (!std::isfinite(value) || std::abs(value) > kDivergenceBound) {
    throw NumericalError(std::string(what) + " diverged at step " + std::to_string(k),
                         static_cast<long>(k));
  }
}

void require_state(const FbmPath& path, const std::vector<double>& X) {
  if (X.size() != path.values.size()) {
    throw ConfigError("state sequence length does not match the path grid");
  }
}

}  // namespace

namespace detail {

std::vector<double> euler_state_any_regime(const ModelSpec& model, const FbmPath& path) {
  const std::size_t n = path.grid.steps();
  const double dt = path.grid.step();
  std::vector<double> X(n + 1);
  X[0] = model.x0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = X[k - 1];
    const double dB = path.values[k] - path.values[k - 1];
    X[k] = x + model.drift.value(x) * dt + model.vol.value(x) * dB;
    guard(X[k], k, "state");
  }
  return X;
}

std::vector<double> euler_tangent_any_regime(const ModelSpec& model, const FbmPath& path,
                                             const std::vector<double>& X) {
  require_state(path, X);
  const std::size_t n = path.grid.steps();
  const double dt = path.grid.step();
  std::vector<double> Y(n + 1);
  Y[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = X[k - 1];
    const double dB = path.values[k] - path.values[k - 1];
    Y[k] = Y[k - 1] + model.drift.derivative(x) * Y[k - 1] * dt +
           model.vol.derivative(x) * Y[k - 1] * dB;
    guard(Y[k], k, "tangent");
  }
  return Y;
}

}  // namespace detail

TrajectoryBundle euler_state(const ModelSpec& model, const FbmPath& path) {
  require_young(path);
  return {path.grid, detail::euler_state_any_regime(model, path), {}, {}};
}

std::vector<double> euler_tangent(const ModelSpec& model, const FbmPath& path,
                                  const std::vector<double>& X) {
  require_young(path);
  return detail::euler_tangent_any_regime(model, path, X);
}

std::vector<double> euler_variation(const ModelSpec& model, const FbmPath& path,
                                    const std::vector<double>& X) {
  if (!model.vol_direction) throw ConfigError("variation requires a volatility direction");
  require_young(path);
  require_state(path, X);
  const auto& direction = *model.vol_direction;
  const std::size_t n = path.grid.steps();
  const double dt = path.grid.step();
  std::vector<double> Z(n + 1);
  Z[0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = X[k - 1];
    const double dB = path.values[k] - path.values[k - 1];
    Z[k] = Z[k - 1] + model.drift.derivative(x) * Z[k - 1] * dt +
           model.vol.derivative(x) * Z[k - 1] * dB + direction.value(x) * dB;
    guard(Z[k], k, "variation");
  }
  return Z;
}

FbmPath subsample(const FbmPath& path, int n2) {
  if (n2 > path.grid.n2()) throw ConfigError("cannot subsample to a finer grid");
  const DyadicGrid coarse(n2, path.grid.horizon());
  const std::size_t stride = std::size_t{1} << (path.grid.n2() - n2);
  FbmPath out{coarse, path.hurst, std::vector<double>(coarse.nodes()), path.seed};
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = path.values[k * stride];
  return out;
}

std::optional<double> fitted_log2_order(const std::vector<int>& levels,
                                        const std::vector<double>& values) {
  const std::size_t m = std::min(levels.size(), values.size());
  if (m < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(values[i] > 0.0)) return std::nullopt;
    const double x = levels[i];
    const double y = std::log2(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double md = static_cast<double>(m);
  const double slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
  return -slope;
}

ConvergenceTable convergence_probe(const ModelSpec& model, HurstParameter h,
                                   const std::vector<int>& n2_levels, std::size_t n_paths,
                                   const SeedRecord& seed, double horizon) {
  if (n2_levels.size() < 3) throw ConfigError("convergence probe needs at least 3 levels");
  for (std::size_t i = 1; i < n2_levels.size(); ++i) {
    if (n2_levels[i] <= n2_levels[i - 1]) throw ConfigError("levels must be strictly increasing");
  }
  if (n_paths == 0) throw ConfigError("convergence probe needs at least one path");

  const std::size_t nl = n2_levels.size();
  const DyadicGrid finest(n2_levels.back(), horizon);
  // per path: [vs reference (nl-1)] [consecutive (nl-1)]
  std::vector<double> per_path(n_paths * 2 * (nl - 1));

  detail::parallel_for(n_paths, [&](std::size_t i) {
    const auto fine_path = sample_fbm_circulant(finest, h, seed.child(i));
    std::vector<std::vector<double>> states(nl);
    for (std::size_t l = 0; l < nl; ++l) {
      states[l] = euler_state(model, subsample(fine_path, n2_levels[l])).X;
    }
    double* slot = per_path.data() + i * 2 * (nl - 1);
    for (std::size_t l = 0; l + 1 < nl; ++l) {
      const std::size_t nodes = states[l].size();
      const std::size_t to_ref = (states[nl - 1].size() - 1) / (nodes - 1);
      const std::size_t to_next = (states[l + 1].size() - 1) / (nodes - 1);
      double sup_ref = 0.0, sup_next = 0.0;
      for (std::size_t k = 0; k < nodes; ++k) {
        sup_ref = std::max(sup_ref, std::abs(states[l][k] - states[nl - 1][k * to_ref]));
        sup_next = std::max(sup_next, std::abs(states[l][k] - states[l + 1][k * to_next]));
      }
      slot[l] = sup_ref;
      slot[(nl - 1) + l] = sup_next;
    }
  });

  ConvergenceTable table;
  table.levels = n2_levels;
  table.error_vs_reference.assign(nl - 1, 0.0);
  table.error_consecutive.assign(nl - 1, 0.0);
  for (std::size_t i = 0; i < n_paths; ++i) {
    const double* slot = per_path.data() + i * 2 * (nl - 1);
    for (std::size_t l = 0; l + 1 < nl; ++l) {
      table.error_vs_reference[l] += slot[l];
      table.error_consecutive[l] += slot[(nl - 1) + l];
    }
  }
  for (std::size_t l = 0; l + 1 < nl; ++l) {
    table.error_vs_reference[l] /= static_cast<double>(n_paths);
    table.error_consecutive[l] /= static_cast<double>(n_paths);
  }
  table.fitted_order = fitted_log2_order(n2_levels, table.error_consecutive);
  table.fitted_order_vs_reference = fitted_log2_order(n2_levels, table.error_vs_reference);
  return table;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryBundle& bundle) {
  const bool has_y = !bundle.Y.empty();
  const bool has_z = !bundle.Z.empty();
  os << "k,t,X" << (has_y ? ",Y" : "") << (has_z ? ",Z" : "") << '\n' << std::setprecision(17);
  for (std::size_t k = 0; k < bundle.X.size(); ++k) {
    os << k << ',' << bundle.grid.node(k) << ',' << bundle.X[k];
    if (has_y) os << ',' << bundle.Y[k];
    if (has_z) os << ',' << bundle.Z[k];
    os << '\n';
  }
}

}  // namespace fbmgreeks
