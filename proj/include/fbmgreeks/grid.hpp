#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace fbmgreeks {

/// Hurst index H, validated to lie in (0, 1).
class HurstParameter {
 public:
  explicit HurstParameter(double value);

  double value() const noexcept { return value_; }

  /// True iff H > 1/2, the regime where the Euler solvers apply.
  bool young_regime() const noexcept { return value_ > 0.5; }

  friend bool operator==(const HurstParameter&, const HurstParameter&) = default;

 private:
  double value_;
};

/// Uniform dyadic partition of [0, T] into 2^n2 steps.
class DyadicGrid {
 public:
  static constexpr int kMaxOrder = 24;

  explicit DyadicGrid(int n2, double horizon = 1.0);

  int n2() const noexcept { return n2_; }
  double horizon() const noexcept { return horizon_; }
  std::size_t steps() const noexcept { return std::size_t{1} << n2_; }
  std::size_t nodes() const noexcept { return steps() + 1; }
  double step() const noexcept { return horizon_ / static_cast<double>(steps()); }
  double node(std::size_t k) const noexcept {
    return horizon_ * static_cast<double>(k) / static_cast<double>(steps());
  }
  std::vector<double> times() const;

  friend bool operator==(const DyadicGrid&, const DyadicGrid&) = default;

 private:
  int n2_;
  double horizon_;
};

/// SplitMix64 finalizer; the mixing function behind substream derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based seed: the generator state of substream `stream` is
/// mt19937_64(splitmix64(master ^ splitmix64(stream))), a pure function of
/// the pair, so paths do not depend on evaluation order or thread count.
struct SeedRecord {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  std::uint64_t state() const noexcept { return splitmix64(master ^ splitmix64(stream)); }

  /// Seed for sub-purpose `index` of this record (e.g. the two legs of a
  /// correlated pair); disjoint from every sibling stream.
  SeedRecord child(std::uint64_t index) const noexcept { return {state(), index}; }

  std::mt19937_64 engine() const { return std::mt19937_64(state()); }

  friend bool operator==(const SeedRecord&, const SeedRecord&) = default;
};

/// Fills `out` with i.i.d. N(0,1) draws from the substream of `seed`.
void standard_normals(const SeedRecord& seed, std::vector<double>& out);

/// Brownian increments B(t_{k+1}) - B(t_k) on `grid` (size N1).
std::vector<double> brownian_increments(const DyadicGrid& grid, const SeedRecord& seed);

}  // namespace fbmgreeks
