#include "fbmgreeks/gaussian_paths.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <tuple>

#include "cache.hpp"
#include "fbmgreeks/errors.hpp"
#include "fft.hpp"

namespace fbmgreeks {

std::vector<double> FbmPath::increments() const {
  std::vector<double> d(values.size() - 1);
  for (std::size_t k = 0; k + 1 < values.size(); ++k) d[k] = values[k + 1] - values[k];
  return d;
}

double fbm_covariance(double s, double t, HurstParameter h) {
  if (s < 0.0 || t < 0.0) throw DomainError("fbm_covariance requires non-negative times");
  const double two_h = 2.0 * h.value();
  return 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
}

double fgn_autocovariance(long k, HurstParameter h) {
  const double two_h = 2.0 * h.value();
  const double a = std::abs(static_cast<double>(k));
  return 0.5 * (std::pow(a + 1.0, two_h) + std::pow(std::abs(a - 1.0), two_h) -
                2.0 * std::pow(a, two_h));
}

namespace detail {

std::vector<double> checked_circulant_spectrum(std::span<const double> first_row) {
  std::vector<std::complex<double>> buf(first_row.begin(), first_row.end());
  fft_forward(buf);
  std::vector<double> lambda(buf.size());
  double max_eig = 0.0;
  double min_eig = 0.0;
  for (std::size_t j = 0; j < buf.size(); ++j) {
    lambda[j] = buf[j].real();
    max_eig = std::max(max_eig, lambda[j]);
    min_eig = std::min(min_eig, lambda[j]);
  }
  if (min_eig < -1e-10 * max_eig) {
    std::ostringstream msg;
    msg << "circulant embedding is not non-negative definite: most negative eigenvalue "
        << std::setprecision(17) << min_eig;
    throw NumericalError(msg.str());
  }
  for (auto& l : lambda) l = std::max(l, 0.0);
  return lambda;
}

}  // namespace detail

namespace {

struct CirculantFactor {
  // sqrt(lambda_j / M), M = 2 N1
  std::vector<double> scale;
};

CirculantFactor make_circulant_factor(int n2, HurstParameter h) {
  const std::size_t n = std::size_t{1} << n2;
  const std::size_t m = 2 * n;
  std::vector<double> row(m);
  for (std::size_t k = 0; k <= n; ++k) row[k] = fgn_autocovariance(static_cast<long>(k), h);
  for (std::size_t k = n + 1; k < m; ++k) row[k] = row[m - k];
  const auto lambda = detail::checked_circulant_spectrum(row);
  CirculantFactor f;
  f.scale.resize(m);
  for (std::size_t j = 0; j < m; ++j) f.scale[j] = std::sqrt(lambda[j] / static_cast<double>(m));
  return f;
}

std::shared_ptr<const CirculantFactor> circulant_factor(int n2, HurstParameter h) {
  static detail::ReadMostlyCache<std::pair<int, double>, CirculantFactor> cache;
  return cache.get({n2, h.value()}, [&] { return make_circulant_factor(n2, h); });
}

// Dense lower-triangular factor of the covariance on nodes t_1..t_N, row-major.
struct CholeskyFactor {
  std::size_t n;
  std::vector<double> lower;
};

CholeskyFactor make_cholesky_factor(const DyadicGrid& grid, HurstParameter h) {
  const std::size_t n = grid.steps();
  CholeskyFactor f{n, std::vector<double>(n * n, 0.0)};
  auto& a = f.lower;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      a[i * n + j] = fbm_covariance(grid.node(i + 1), grid.node(j + 1), h);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) {
      throw NumericalError("covariance is not numerically positive definite at pivot " +
                               std::to_string(j),
                           static_cast<long>(j));
    }
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / ljj;
    }
  }
  return f;
}

std::shared_ptr<const CholeskyFactor> cholesky_factor(const DyadicGrid& grid, HurstParameter h) {
  static detail::ReadMostlyCache<std::tuple<int, double, double>, CholeskyFactor> cache;
  return cache.get({grid.n2(), grid.horizon(), h.value()},
                   [&] { return make_cholesky_factor(grid, h); });
}

}  // namespace

std::vector<double> circulant_eigenvalues(int n2, HurstParameter h) {
  const auto f = circulant_factor(n2, h);
  const double m = static_cast<double>(f->scale.size());
  std::vector<double> lambda(f->scale.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) lambda[j] = f->scale[j] * f->scale[j] * m;
  return lambda;
}

FbmPath sample_fbm_cholesky(const DyadicGrid& grid, HurstParameter h, const SeedRecord& seed) {
  if (grid.n2() > kMaxCholeskyOrder) {
    throw DomainError("Cholesky sampler limited to N2 <= " + std::to_string(kMaxCholeskyOrder));
  }
  const auto f = cholesky_factor(grid, h);
  const std::size_t n = f->n;
  std::vector<double> z(n);
  standard_normals(seed, z);
  FbmPath path{grid, h, std::vector<double>(n + 1, 0.0), seed};
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = f->lower.data() + i * n;
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += row[j] * z[j];
    path.values[i + 1] = s;
  }
  return path;
}

FbmPath sample_fbm_circulant(const DyadicGrid& grid, HurstParameter h, const SeedRecord& seed) {
  const auto f = circulant_factor(grid.n2(), h);
  const std::size_t n = grid.steps();
  const std::size_t m = f->scale.size();

  std::vector<double> z(2 * m);
  standard_normals(seed, z);
  std::vector<std::complex<double>> w(m);
  for (std::size_t j = 0; j < m; ++j) w[j] = f->scale[j] * std::complex<double>(z[2 * j], z[2 * j + 1]);
  detail::fft_forward(w);

  // Self-similarity: increments over a step of length T/N1 are (T/N1)^H times unit-lag fGn.
  const double step_scale = std::pow(grid.step(), h.value());
  FbmPath path{grid, h, std::vector<double>(n + 1, 0.0), seed};
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += step_scale * w[k].real();
    path.values[k + 1] = acc;
  }
  return path;
}

std::pair<FbmPath, FbmPath> sample_fbm_pair(const DyadicGrid& grid, HurstParameter h1,
                                            HurstParameter h2, const SeedRecord& seed) {
  return {sample_fbm_circulant(grid, h1, seed.child(0)),
          sample_fbm_circulant(grid, h2, seed.child(1))};
}

void write_path_csv(std::ostream& os, const FbmPath& path) {
  os << "k,t,value\n" << std::setprecision(17);
  for (std::size_t k = 0; k < path.values.size(); ++k)
    os << k << ',' << path.grid.node(k) << ',' << path.values[k] << '\n';
}

}  // namespace fbmgreeks
