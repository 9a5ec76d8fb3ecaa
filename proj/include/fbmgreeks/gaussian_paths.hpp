#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "fbmgreeks/grid.hpp"

namespace fbmgreeks {

/// Fractional Brownian motion sampled at the nodes of a dyadic grid.
struct FbmPath {
  DyadicGrid grid;
  HurstParameter hurst;
  std::vector<double> values;  // size grid.nodes(), values[0] == 0
  SeedRecord seed;

  /// B(t_{k+1}) - B(t_k) for k = 0..N1-1.
  std::vector<double> increments() const;
};

/// cov(B_s, B_t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2 for s, t >= 0.
double fbm_covariance(double s, double t, HurstParameter h);

/// Autocovariance of unit-lag fractional Gaussian noise at lag k.
double fgn_autocovariance(long k, HurstParameter h);

/// Largest dyadic order accepted by the dense Cholesky sampler.
inline constexpr int kMaxCholeskyOrder = 12;

/// Exact-law sampler through a dense Cholesky factor of the node covariance.
/// Intended as an oracle for the circulant sampler; O(N1^3) setup.
FbmPath sample_fbm_cholesky(const DyadicGrid& grid, HurstParameter h, const SeedRecord& seed);

/// Exact-law sampler by circulant embedding of unit-lag fractional Gaussian
/// noise (size 2*N1), rescaled by (T/N1)^H and cumulatively summed.
FbmPath sample_fbm_circulant(const DyadicGrid& grid, HurstParameter h, const SeedRecord& seed);

/// Two independent paths drawn from the disjoint child streams 0 and 1 of
/// `seed`.
std::pair<FbmPath, FbmPath> sample_fbm_pair(const DyadicGrid& grid, HurstParameter h1,
                                            HurstParameter h2, const SeedRecord& seed);

/// Eigenvalues of the size-2*N1 circulant embedding (after clamping of
/// roundoff negatives). Throws NumericalError if an eigenvalue is below
/// -1e-10 * max eigenvalue.
std::vector<double> circulant_eigenvalues(int n2, HurstParameter h);

namespace detail {
/// Spectrum of the symmetric circulant with the given first row, with the
/// negative-eigenvalue clamp/reject rule applied.
std::vector<double> checked_circulant_spectrum(std::span<const double> first_row);
}  // namespace detail

/// CSV with header `k,t,value`.
void write_path_csv(std::ostream& os, const FbmPath& path);

}  // namespace fbmgreeks
