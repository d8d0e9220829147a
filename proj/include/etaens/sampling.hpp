#pragma once

// Monte Carlo machinery: rejection sampling, the chained conditional sampler
// for the Gaussian weight, the eigenvalue-space sampler for the Bessel
// weight, Haar-random 2x2 unitaries, the closed-form 2x2 eigensolver, and
// the power-sum determinant identity.

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "etaens/bessel.hpp"
#include "etaens/detail/conditional_grid.hpp"
#include "etaens/rng.hpp"
#include "etaens/types.hpp"

namespace etaens::sampling {

// ---------------------------------------------------------------------------
// rejection sampling

struct GaussianEnvelope {
  double mu = 0.0;
  double sigma = 1.0;
  double scale = 1.0;  // envelope density = scale * N(mu, sigma) pdf
};

// Piecewise-constant majorant over [lo, hi]; samples proportionally to the
// cell heights. build() sets each cell to the max of the endpoint density
// values times a 10% safety margin.
class GridTableEnvelope {
 public:
  static GridTableEnvelope build(const std::function<double(double)>& density,
                                 double lo, double hi, int n_cells,
                                 double margin = 1.1);
  double density(double x) const;  // 0 outside [lo, hi]
  double sample(RngStream& rng) const;
  std::pair<double, double> support() const { return {lo_, hi_}; }

 private:
  double lo_ = 0.0, hi_ = 0.0, cell_ = 0.0;
  std::vector<double> heights_;
  std::vector<double> cum_;  // cumulative cell masses, last = total
};

// Exact sampler for `density` under a verified dominating envelope. The
// envelope is checked on a 4096-point probe grid (extended 25% beyond the
// nominal range) at construction; a violation throws envelope_violation_error.
// draw() throws starvation_error once the running acceptance rate falls
// below 1e-4.
class RejectionSampler {
 public:
  RejectionSampler(std::function<double(double)> density, GaussianEnvelope env,
                   std::pair<double, double> probe_range);
  RejectionSampler(std::function<double(double)> density,
                   GridTableEnvelope env);

  double draw(RngStream& rng) const;
  double acceptance_rate() const;

 private:
  void verify(std::pair<double, double> probe_range) const;
  double envelope_density(double x) const;
  double envelope_draw(RngStream& rng) const;

  std::function<double(double)> density_;
  std::optional<GaussianEnvelope> gauss_env_;
  std::optional<GridTableEnvelope> grid_env_;
  mutable std::atomic<std::int64_t> proposals_{0};
  mutable std::atomic<std::int64_t> accepts_{0};
};

// ---------------------------------------------------------------------------
// Gaussian-weight chained conditional sampler

// Draws (x, y, t, s) jointly from the entry jpd by the marginal chain
// x ~ p1, y ~ p2/p1, t ~ p3/p2, s ~ jpd/p3. The x stage uses rejection under
// a scaled-Gaussian envelope; the conditional stages use tabulated
// inverse-CDF grids (2048 points, rebuilt per conditioning value, geometric
// clustering around the conditional's singular point, tails truncated below
// 1e-12 relative mass). Lookup tables are built once at construction; the
// object is immutable afterwards and safe to share across threads.
class GaussianChainSampler {
 public:
  explicit GaussianChainSampler(double eta);  // eta in [0, 3/2)
  HermitianEntries sample_entries(RngStream& rng) const;
  double eta() const { return eta_; }
  double p1_acceptance_rate() const;

 private:
  double p1_fast(double x) const;
  double gamma_tail(double xi) const;  // Gamma(1-eta, xi^2), xi >= 0
  double p3_shape_fast(double a) const;

  double eta_;
  // log-log tables with exact-evaluation fallback outside their windows
  double gt_w0_ = 0.0, gt_dw_ = 0.0;
  std::vector<double> gt_;
  double u_w0_ = 0.0, u_dw_ = 0.0;
  std::vector<double> u_;
  std::unique_ptr<RejectionSampler> p1_sampler_;
};

// ---------------------------------------------------------------------------
// Bessel-weight eigenvalue-space sampler

// 2-D rejection for the jpd ~ phi(l1) phi(l2) |l2-l1|^{2-2 eta} under the
// product envelope [sqrt(2) phi (1 + l^2)] per coordinate, each coordinate
// drawn from a grid-table majorant.
class BesselEigenSampler {
 public:
  explicit BesselEigenSampler(const bessel::BesselWeightParams& p);
  SpectralPair sample(RngStream& rng) const;
  double acceptance_rate() const;
  const bessel::PhiEvaluator& phi() const { return phi_; }

 private:
  bessel::BesselWeightParams params_;
  bessel::PhiEvaluator phi_;
  GridTableEnvelope envelope_;
  // eta = 1 factorizes; coordinates are then drawn iid by inverse CDF
  std::unique_ptr<detail::ConditionalGrid> iid_grid_;
  mutable std::atomic<std::int64_t> proposals_{0};
  mutable std::atomic<std::int64_t> accepts_{0};
};

// ---------------------------------------------------------------------------
// matrix-level helpers

struct Unitary2x2 {
  std::complex<double> u00, u01, u10, u11;
};

// Haar-distributed 2x2 unitary (Ginibre + Gram-Schmidt with phase fixing).
Unitary2x2 haar_unitary_2x2(RngStream& rng);

// Entries of U diag(lambda1, lambda2) U^dagger.
HermitianEntries conjugate_to_entries(const SpectralPair& pair,
                                      const Unitary2x2& u);

// Closed-form eigenvalues (x+y)/2 +- sqrt((x-y)^2/4 + (t^2+s^2)/2), ordered.
SpectralPair eigenvalues_2x2(const HermitianEntries& e);

// Hankel matrix of power sums s_k = sum lambda_i^k (s_0 = n) and its
// determinant, together with prod_{j<k} (lambda_j - lambda_k)^2. The two are
// equal analytically; n in [2, 8].
struct PowerSumDet {
  double det = 0.0;
  double vdm_sq = 0.0;
};
PowerSumDet vandermonde_power_sum_det(std::span<const double> eigenvalues);

}  // namespace etaens::sampling
