#include "fbmgreeks/grid.hpp"

#include <cmath>
#include <string>

#include "fbmgreeks/errors.hpp"

namespace fbmgreeks {

HurstParameter::HurstParameter(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) {
    throw DomainError("Hurst parameter must lie in (0,1), got " + std::to_string(value));
  }
}

DyadicGrid::DyadicGrid(int n2, double horizon) : n2_(n2), horizon_(horizon) {
  if (n2 < 1 || n2 > kMaxOrder) {
    throw DomainError("dyadic order must lie in [1," + std::to_string(kMaxOrder) + "], got " +
                      std::to_string(n2));
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("horizon must be positive and finite");
  }
}

std::vector<double> DyadicGrid::times() const {
  std::vector<double> t(nodes());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = node(k);
  return t;
}

void standard_normals(const SeedRecord& seed, std::vector<double>& out) {
  auto engine = seed.engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& z : out) z = normal(engine);
}

std::vector<double> brownian_increments(const DyadicGrid& grid, const SeedRecord& seed) {
  std::vector<double> dB(grid.steps());
  standard_normals(seed, dB);
  const double scale = std::sqrt(grid.step());
  for (auto& x : dB) x *= scale;
  return dB;
}

}  // namespace fbmgreeks
