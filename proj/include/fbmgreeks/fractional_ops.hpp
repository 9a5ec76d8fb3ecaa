#pragma once

#include <span>
#include <vector>

#include "fbmgreeks/gaussian_paths.hpp"

namespace fbmgreeks {

/// Node samples of a function on a dyadic grid.
struct SampledFunction {
  DyadicGrid grid;
  std::vector<double> values;  // size grid.nodes()

  /// Samples f at every node.
  template <class F>
  static SampledFunction from(const DyadicGrid& grid, F&& f) {
    SampledFunction s{grid, std::vector<double>(grid.nodes())};
    for (std::size_t k = 0; k < s.values.size(); ++k) s.values[k] = f(grid.node(k));
    return s;
  }
};

/// Adapted integrand of a Brownian divergence: values[k] only depends on
/// inputs with index <= k.
struct WeightIntegrand {
  DyadicGrid grid;
  std::vector<double> values;
};

// ---------------------------------------------------------------------------
// Riemann-Liouville operators

/// (1/Gamma(a)) int_0^t (t-s)^(a-1) psi(s) ds at every node, by product
/// integration of the piecewise-linear interpolant (exact for such psi).
/// alpha = 1 reduces to the running trapezoid rule.
SampledFunction frac_integral(const SampledFunction& psi, double alpha);

/// Fractional derivative of order alpha in (0,1].
///
/// For alpha < 1 the input is split as
///   psi(s) = psi(0) + c s^alpha / Gamma(1+alpha) + r(s),
/// with c fitted on the first two cells so that a leading s^alpha behaviour
/// (as produced by frac_integral when psi(0) != 0) is differentiated
/// analytically. The remainder r is interpolated piecewise linearly and its
/// (1-alpha)-integral is differentiated exactly in t. The split is exact for
/// linear data. alpha = 1 uses central differences (one-sided at the ends).
///
/// Throws NumericalError if a non-finite value is produced, e.g. at t = 0
/// when psi(0) != 0.
SampledFunction frac_derivative(const SampledFunction& psi, double alpha);

// ---------------------------------------------------------------------------
// Volterra representation B^H_t = int_0^t K_H(t,s) dB_s, H >= 1/2

class VolterraKernel {
 public:
  /// Rejects H < 1/2.
  explicit VolterraKernel(HurstParameter h);

  HurstParameter hurst() const noexcept { return h_; }

  /// Constant c_H in K_H(t,s) = c_H s^(1/2-H) int_s^t (u-s)^(H-3/2) u^(H-1/2) du,
  /// normalised so that int_0^t K_H(t,u)^2 du = t^(2H).
  double normalization() const noexcept { return c_; }

  /// K_H(t,s); 0 for s >= t, 1 for s < t at H = 1/2. Throws DomainError for s <= 0.
  double operator()(double t, double s) const;

  /// int_0^s K_H(t,r) dr for 0 <= s <= t, in closed form.
  double primitive(double t, double s) const;

 private:
  double inner(double x) const;  // int_x^1 y^(-2H) (1-y)^(H-3/2) dy

  HurstParameter h_;
  double c_ = 1.0;
};

double volterra_kernel_eval(const VolterraKernel& kern, double t, double s);

/// Largest dyadic order for the dense O(N1^2) kernel and weight tables.
inline constexpr int kMaxTableOrder = 12;

/// B^H at the nodes from Brownian increments:
/// B^H(t_k) = sum_{j<k} Kbar(t_k, j) dB_j with cell-averaged kernel weights
/// Kbar(t_k, j) = (1/dt) int_{t_j}^{t_{j+1}} K_H(t_k, s) ds.
/// At H = 1/2 the result is the cumulative sum of the increments.
FbmPath fbm_from_brownian(const VolterraKernel& kern, std::span<const double> brownian_increments,
                          const DyadicGrid& grid, const SeedRecord& seed = {});

// ---------------------------------------------------------------------------
// Cameron-Martin weights

/// u_t = t^(H-1/2) / Gamma(3/2-H) * d/dt int_0^t (t-s)^(1/2-H) s^(1/2-H) hdot(s) ds
/// for piecewise-linear hdot. The singular weights are integrated exactly
/// (incomplete beta functions) and d/dt is taken analytically, so u_k only
/// depends on hdot_0..hdot_k. At t = 0 the value is the first-cell average
/// of u for constant hdot. H = 1/2 is the identity. Throws DomainError for
/// H < 1/2.
WeightIntegrand cm_weight_transform(const SampledFunction& h_dot, HurstParameter h);

/// Left-point Ito sum sum_k u(t_k) dB_k. Throws ConfigError on size mismatch.
double divergence_adapted(const WeightIntegrand& u, std::span<const double> brownian_increments);

/// sqrt(V_H) with V_H = Gamma(2-2H) cos(pi H) / (pi H (1-2H)); V_{1/2} = 1.
///
/// cm_weight_transform inverts the Volterra operator whose kernel carries no
/// normalisation constant; that operator produces an fBm of variance
/// V_H t^(2H). For the unit-variance fBm of fbm_from_brownian the inverse
/// picks up this factor.
double fbm_weight_normalization(HurstParameter h);

/// delta_H(I_H^{-1} h) for the unit-variance fBm built from `brownian_increments`
/// by fbm_from_brownian: fbm_weight_normalization(H) times the adapted
/// divergence of cm_weight_transform(h_dot).
double fbm_divergence(const SampledFunction& h_dot, HurstParameter h,
                      std::span<const double> brownian_increments);

}  // namespace fbmgreeks
