#include "fbmgreeks/fractional_ops.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <tuple>

#include "cache.hpp"
#include "fbmgreeks/errors.hpp"

namespace fbmgreeks {
namespace {

namespace bm = boost::math;

void require_order(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("fractional order must lie in (0,1], got " + std::to_string(alpha));
  }
}

// i^e for i = 0..n
std::vector<double> integer_powers(std::size_t n, double e) {
  std::vector<double> p(n + 1);
  for (std::size_t i = 0; i <= n; ++i) p[i] = std::pow(static_cast<double>(i), e);
  return p;
}

void require_finite(const SampledFunction& f) {
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    if (!std::isfinite(f.values[k])) {
      throw NumericalError("fractional derivative is not finite at node " + std::to_string(k) +
                               " (input not regular enough)",
                           static_cast<long>(k));
    }
  }
}

// Exact t-derivative of int_0^t (t-s)^(-alpha) r(s) ds at the nodes for the
// piecewise-linear r with r(0) = 0, divided by Gamma(1-alpha).
std::vector<double> linear_rl_derivative(const std::vector<double>& r, double dt, double alpha) {
  const std::size_t n = r.size() - 1;
  const auto pw = integer_powers(n, 1.0 - alpha);
  const double scale = std::pow(dt, 1.0 - alpha) / ((1.0 - alpha) * std::tgamma(1.0 - alpha));
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double slope = (r[j + 1] - r[j]) / dt;
      acc += slope * (pw[k - j] - pw[k - j - 1]);
    }
    out[k] = scale * acc;
  }
  return out;
}

}  // namespace

SampledFunction frac_integral(const SampledFunction& psi, double alpha) {
  require_order(alpha);
  const std::size_t n = psi.grid.steps();
  const double dt = psi.grid.step();
  const auto& v = psi.values;
  const auto pa = integer_powers(n, alpha);
  const auto pa1 = integer_powers(n, alpha + 1.0);
  const double da = std::pow(dt, alpha);
  const double gamma = std::tgamma(alpha);

  SampledFunction out{psi.grid, std::vector<double>(n + 1, 0.0)};
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      // cell [t_j, t_j+1], distances to t_k are (k-j) dt and (k-j-1) dt
      const std::size_t far = k - j, near = k - j - 1;
      const double p = da * (pa[far] - pa[near]) / alpha;
      const double q = static_cast<double>(far) * dt * p -
                       da * dt * (pa1[far] - pa1[near]) / (alpha + 1.0);
      const double slope = (v[j + 1] - v[j]) / dt;
      acc += v[j] * p + slope * q;
    }
    out.values[k] = acc / gamma;
  }
  return out;
}

SampledFunction frac_derivative(const SampledFunction& psi, double alpha) {
  require_order(alpha);
  const std::size_t n = psi.grid.steps();
  const double dt = psi.grid.step();
  const auto& v = psi.values;
  SampledFunction out{psi.grid, std::vector<double>(n + 1)};

  if (alpha == 1.0) {
    out.values[0] = (v[1] - v[0]) / dt;
    out.values[n] = (v[n] - v[n - 1]) / dt;
    for (std::size_t k = 1; k < n; ++k) out.values[k] = (v[k + 1] - v[k - 1]) / (2.0 * dt);
    require_finite(out);
    return out;
  }

  // psi = psi0 + c s^a / Gamma(1+a) + r, with r(t_1)/t_1 = r(t_2)/t_2.
  const double g1a = std::tgamma(1.0 + alpha);
  const double r1 = v[1] - v[0];
  const double r2 = v[2] - v[0];
  const double c = g1a * (r2 - 2.0 * r1) / (std::pow(dt, alpha) * (std::pow(2.0, alpha) - 2.0));

  std::vector<double> r(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    r[k] = v[k] - v[0] - c * std::pow(psi.grid.node(k), alpha) / g1a;
  r[0] = 0.0;

  const auto dr = linear_rl_derivative(r, dt, alpha);
  const double g1m = std::tgamma(1.0 - alpha);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = psi.grid.node(k);
    const double start = v[0] == 0.0 ? 0.0 : v[0] * std::pow(t, -alpha) / g1m;
    out.values[k] = start + c + dr[k];
  }
  require_finite(out);
  return out;
}

// ---------------------------------------------------------------------------

VolterraKernel::VolterraKernel(HurstParameter h) : h_(h) {
  const double H = h.value();
  if (H < 0.5) throw DomainError("Volterra kernel is only provided for H >= 1/2");
  if (H > 0.5) c_ = std::sqrt(H * (2.0 * H - 1.0) / bm::beta(2.0 - 2.0 * H, H - 0.5));
}

double VolterraKernel::inner(double x) const {
  // int_x^1 y^(p-1) (1-y)^(b-1) dy with p = 1-2H < 0, b = H-1/2, after one
  // integration by parts: -x^p (1-x)^b / p + (1/2) B_{1-x}(b, 2-2H).
  const double H = h_.value();
  const double p = 1.0 - 2.0 * H;
  const double b = H - 0.5;
  const double boundary = x >= 1.0 ? 0.0 : -std::pow(x, p) * std::pow(1.0 - x, b) / p;
  const double tail = x >= 1.0 ? 0.0 : 0.5 * bm::beta(b, 2.0 - 2.0 * H, 1.0 - x);
  return boundary + tail;
}

double VolterraKernel::operator()(double t, double s) const {
  if (!(s > 0.0)) throw DomainError("Volterra kernel is singular at s <= 0");
  if (s >= t) return 0.0;
  const double H = h_.value();
  if (H == 0.5) return 1.0;
  return c_ * std::pow(s, H - 0.5) * inner(s / t);
}

double VolterraKernel::primitive(double t, double s) const {
  if (s <= 0.0) return 0.0;
  if (s > t) s = t;
  const double H = h_.value();
  if (H == 0.5) return s;
  const double q = H + 0.5;
  const double x = s / t;
  return (c_ / q) * (std::pow(t, q) * bm::beta(1.5 - H, H - 0.5, x) + std::pow(s, q) * inner(x));
}

double volterra_kernel_eval(const VolterraKernel& kern, double t, double s) { return kern(t, s); }

namespace {

// Packed lower-triangular table; row k (1..N) holds k entries.
struct TriangularTable {
  std::size_t n = 0;
  std::vector<double> data;
  const double* row(std::size_t k) const { return data.data() + k * (k - 1) / 2; }
  double* row(std::size_t k) { return data.data() + k * (k - 1) / 2; }
};

using TableKey = std::tuple<int, double, double>;

void require_table_order(const DyadicGrid& grid) {
  if (grid.n2() > kMaxTableOrder) {
    throw DomainError("dense kernel tables are limited to N2 <= " + std::to_string(kMaxTableOrder));
  }
}

TriangularTable make_kernel_table(const VolterraKernel& kern, const DyadicGrid& grid) {
  const std::size_t n = grid.steps();
  const double dt = grid.step();
  TriangularTable tab{n, std::vector<double>(n * (n + 1) / 2)};
  std::vector<double> prim(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = grid.node(k);
    for (std::size_t j = 0; j <= k; ++j) prim[j] = kern.primitive(t, grid.node(j));
    double* row = tab.row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = (prim[j + 1] - prim[j]) / dt;
  }
  return tab;
}

std::shared_ptr<const TriangularTable> kernel_table(const VolterraKernel& kern,
                                                    const DyadicGrid& grid) {
  static detail::ReadMostlyCache<TableKey, TriangularTable> cache;
  return cache.get({grid.n2(), grid.horizon(), kern.hurst().value()},
                   [&] { return make_kernel_table(kern, grid); });
}

// Row k (1..N) holds the coefficients of hdot_0..hdot_k (k+1 entries).
struct WeightTable {
  std::size_t n = 0;
  std::vector<double> data;
  const double* row(std::size_t k) const { return data.data() + (k * (k + 1)) / 2 - 1; }
  double* row(std::size_t k) { return data.data() + (k * (k + 1)) / 2 - 1; }
};

WeightTable make_weight_table(const DyadicGrid& grid, double H) {
  const std::size_t n = grid.steps();
  const double dt = grid.step();
  const double beta = 0.5 - H;
  const double b = beta + 1.0;
  const double gamma = std::tgamma(1.0 + beta);

  WeightTable tab{n, std::vector<double>((n + 1) * (n + 2) / 2 - 1, 0.0)};
  std::vector<double> w(n + 1), v(n + 1);
  std::vector<double> inc0(n + 1), inc1(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = grid.node(k);
    const double kd = static_cast<double>(k);
    // incomplete beta at x_j = j/k for the two moment orders
    for (std::size_t j = 0; j <= k; ++j) {
      const double x = static_cast<double>(j) / kd;
      inc0[j] = bm::beta(beta + 1.0, b, x);
      inc1[j] = bm::beta(beta + 2.0, b, x);
    }
    const double s0 = std::pow(t, 2.0 * beta + 1.0);
    const double s1 = std::pow(t, 2.0 * beta + 2.0);
    std::fill(w.begin(), w.begin() + static_cast<long>(k) + 1, 0.0);
    std::fill(v.begin(), v.begin() + static_cast<long>(k) + 1, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      // M0 = int_cell (t-s)^beta s^beta ds, M1 = int_cell (t-s)^beta s^(beta+1) ds
      const double m0 = s0 * (inc0[j + 1] - inc0[j]);
      const double m1 = s1 * (inc1[j + 1] - inc1[j]);
      const double lin = (m1 - grid.node(j) * m0) / dt;  // coefficient of the slope
      w[j] += m0 - lin;
      w[j + 1] += lin;
      v[j] -= m1 / dt;
      v[j + 1] += m1 / dt;
    }
    // u = t^-beta / Gamma(1+beta) * ((2 beta + 1) W + V) / t
    const double scale = std::pow(t, -beta) / (gamma * t);
    double* row = tab.row(k);
    for (std::size_t j = 0; j <= k; ++j) row[j] = scale * ((2.0 * beta + 1.0) * w[j] + v[j]);
  }
  return tab;
}

std::shared_ptr<const WeightTable> weight_table(const DyadicGrid& grid, double H) {
  static detail::ReadMostlyCache<TableKey, WeightTable> cache;
  return cache.get({grid.n2(), grid.horizon(), H}, [&] { return make_weight_table(grid, H); });
}

}  // namespace

FbmPath fbm_from_brownian(const VolterraKernel& kern, std::span<const double> brownian_increments,
                          const DyadicGrid& grid, const SeedRecord& seed) {
  if (brownian_increments.size() != grid.steps()) {
    throw ConfigError("increment count does not match the grid");
  }
  const HurstParameter h = kern.hurst();
  FbmPath path{grid, h, std::vector<double>(grid.nodes(), 0.0), seed};
  const std::size_t n = grid.steps();
  if (h.value() == 0.5) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) path.values[k + 1] = (acc += brownian_increments[k]);
    return path;
  }
  require_table_order(grid);
  const auto tab = kernel_table(kern, grid);
  for (std::size_t k = 1; k <= n; ++k) {
    const double* row = tab->row(k);
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) acc += row[j] * brownian_increments[j];
    path.values[k] = acc;
  }
  return path;
}

WeightIntegrand cm_weight_transform(const SampledFunction& h_dot, HurstParameter h) {
  const double H = h.value();
  if (H < 0.5) throw DomainError("Cameron-Martin weight transform requires H >= 1/2");
  const auto& grid = h_dot.grid;
  if (h_dot.values.size() != grid.nodes()) throw ConfigError("sample count does not match grid");
  WeightIntegrand u{grid, h_dot.values};
  if (H == 0.5) return u;

  require_table_order(grid);
  const auto tab = weight_table(grid, H);
  const std::size_t n = grid.steps();
  for (std::size_t k = 1; k <= n; ++k) {
    const double* row = tab->row(k);
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += row[j] * h_dot.values[j];
    u.values[k] = acc;
  }
  // average over [0, t_1] of c_H t^(1/2-H) hdot_0, c_H = (2-2H) B(3/2-H, 3/2-H) / Gamma(3/2-H)
  const double beta = 0.5 - H;
  const double c = (2.0 - 2.0 * H) * bm::beta(1.5 - H, 1.5 - H) / std::tgamma(1.5 - H);
  u.values[0] = h_dot.values[0] * c * std::pow(grid.step(), beta) / (1.0 + beta);
  return u;
}

double divergence_adapted(const WeightIntegrand& u, std::span<const double> brownian_increments) {
  if (u.values.size() != brownian_increments.size() + 1) {
    throw ConfigError("integrand has " + std::to_string(u.values.size()) + " nodes but " +
                      std::to_string(brownian_increments.size()) + " increments were given");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < brownian_increments.size(); ++k) acc += u.values[k] * brownian_increments[k];
  return acc;
}

double fbm_weight_normalization(HurstParameter h) {
  const double H = h.value();
  if (H == 0.5) return 1.0;
  const double v = std::tgamma(2.0 - 2.0 * H) * std::cos(std::numbers::pi * H) /
                   (std::numbers::pi * H * (1.0 - 2.0 * H));
  return std::sqrt(v);
}

double fbm_divergence(const SampledFunction& h_dot, HurstParameter h,
                      std::span<const double> brownian_increments) {
  return fbm_weight_normalization(h) *
         divergence_adapted(cm_weight_transform(h_dot, h), brownian_increments);
}

}  // namespace fbmgreeks
