#include "etaens/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etaens/errors.hpp"
#include "etaens/gaussian.hpp"
#include "etaens/quadrature.hpp"
#include "etaens/specfun.hpp"

namespace etaens::sampling {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSqrtPi = 1.77245385090551602729816748334114518;

double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
}

}  // namespace

// ---------------------------------------------------------------------------
// GridTableEnvelope

GridTableEnvelope GridTableEnvelope::build(
    const std::function<double(double)>& density, double lo, double hi,
    int n_cells, double margin) {
  if (!(lo < hi) || n_cells < 1) {
    throw std::domain_error("GridTableEnvelope: invalid range");
  }
  GridTableEnvelope env;
  env.lo_ = lo;
  env.hi_ = hi;
  env.cell_ = (hi - lo) / n_cells;
  env.heights_.resize(n_cells);
  env.cum_.resize(n_cells);
  double prev = density(lo);
  double acc = 0.0;
  for (int i = 0; i < n_cells; ++i) {
    const double next = density(lo + env.cell_ * (i + 1));
    env.heights_[i] = margin * std::max(prev, next);
    prev = next;
    acc += env.heights_[i] * env.cell_;
    env.cum_[i] = acc;
  }
  return env;
}

double GridTableEnvelope::density(double x) const {
  if (x < lo_ || x >= hi_) return 0.0;
  const auto i = static_cast<std::size_t>((x - lo_) / cell_);
  return heights_[std::min(i, heights_.size() - 1)];
}

double GridTableEnvelope::sample(RngStream& rng) const {
  const double target = rng.next_double() * cum_.back();
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
  const std::size_t i =
      std::min(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
  const double base = i == 0 ? 0.0 : cum_[i - 1];
  const double frac = (target - base) / (cum_[i] - base);
  return lo_ + cell_ * (static_cast<double>(i) + frac);
}

// ---------------------------------------------------------------------------
// RejectionSampler

RejectionSampler::RejectionSampler(std::function<double(double)> density,
                                   GaussianEnvelope env,
                                   std::pair<double, double> probe_range)
    : density_(std::move(density)), gauss_env_(env) {
  verify(probe_range);
}

RejectionSampler::RejectionSampler(std::function<double(double)> density,
                                   GridTableEnvelope env)
    : density_(std::move(density)), grid_env_(std::move(env)) {
  verify(grid_env_->support());
}

double RejectionSampler::envelope_density(double x) const {
  if (gauss_env_) {
    return gauss_env_->scale * normal_pdf(x, gauss_env_->mu, gauss_env_->sigma);
  }
  return grid_env_->density(x);
}

double RejectionSampler::envelope_draw(RngStream& rng) const {
  if (gauss_env_) {
    return gauss_env_->mu + gauss_env_->sigma * rng.next_normal();
  }
  return grid_env_->sample(rng);
}

void RejectionSampler::verify(std::pair<double, double> probe_range) const {
  const auto [lo, hi] = probe_range;
  const double pad = 0.25 * (hi - lo);
  const double a = lo - pad, b = hi + pad;
  const int n = 4096;
  for (int i = 0; i < n; ++i) {
    const double x = a + (b - a) * (i + 0.5) / n;
    const double d = density_(x);
    const double e = envelope_density(x);
    if (d > e * (1.0 + 1e-12)) {
      throw envelope_violation_error(
          "rejection_sample: density exceeds envelope at x=" +
          std::to_string(x));
    }
  }
}

double RejectionSampler::draw(RngStream& rng) const {
  long consecutive = 0;
  while (true) {
    const double x = envelope_draw(rng);
    const double e = envelope_density(x);
    proposals_.fetch_add(1, std::memory_order_relaxed);
    if (e > 0.0) {
      const double u = rng.next_double();
      if (u * e <= density_(x)) {
        accepts_.fetch_add(1, std::memory_order_relaxed);
        return x;
      }
    }
    if (++consecutive >= 200000) {
      throw starvation_error(
          "rejection_sample: acceptance rate below the 1e-4 floor");
    }
  }
}

double RejectionSampler::acceptance_rate() const {
  const auto p = proposals_.load(std::memory_order_relaxed);
  const auto a = accepts_.load(std::memory_order_relaxed);
  return p == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(p);
}

// ---------------------------------------------------------------------------
// tabulated inverse-CDF conditional grids (detail/conditional_grid.hpp)

namespace {
thread_local detail::ConditionalGrid tl_grid;
}  // namespace

// ---------------------------------------------------------------------------
// GaussianChainSampler

namespace {

constexpr int kGammaTailNodes = 8192;
constexpr int kShapeNodes = 16384;

double loglog_lookup(const std::vector<double>& tab, double w0, double dw,
                     double w) {
  const double fi = (w - w0) / dw;
  int i = static_cast<int>(fi);
  i = std::clamp(i, 1, static_cast<int>(tab.size()) - 3);
  const double u = fi - i;
  const double ym1 = tab[i - 1], y0 = tab[i], y1 = tab[i + 1], y2 = tab[i + 2];
  const double c0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double c1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double c2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double c3 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return c0 * ym1 + c1 * y0 + c2 * y1 + c3 * y2;
}

}  // namespace

GaussianChainSampler::GaussianChainSampler(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta < 1.5)) {
    throw std::domain_error("GaussianChainSampler: eta must lie in [0, 3/2)");
  }
  // Gamma(1 - eta, xi^2) on xi in [1e-14, 20]
  gt_w0_ = std::log(1e-14);
  gt_dw_ = (std::log(20.0) - gt_w0_) / (kGammaTailNodes - 1);
  gt_.resize(kGammaTailNodes);
  for (int i = 0; i < kGammaTailNodes; ++i) {
    const double xi = std::exp(gt_w0_ + gt_dw_ * i);
    gt_[i] = std::log(
        std::max(specfun::upper_incomplete_gamma(1.0 - eta, xi * xi), 1e-320));
  }
  // p3 shape factor on a in [1e-28, 1500]
  u_w0_ = std::log(1e-28);
  u_dw_ = (std::log(1500.0) - u_w0_) / (kShapeNodes - 1);
  u_.resize(kShapeNodes);
  for (int i = 0; i < kShapeNodes; ++i) {
    const double a = std::exp(u_w0_ + u_dw_ * i);
    u_[i] = std::log(std::max(gaussian::detail::p3_shape(eta, a), 1e-320));
  }
  // scaled-Gaussian envelope for the p1 rejection stage
  const double sigma = 1.1;
  double ratio = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = -10.0 + 20.0 * i / 400.0;
    ratio = std::max(ratio, p1_fast(x) / normal_pdf(x, 0.0, sigma));
  }
  GaussianEnvelope env{0.0, sigma, ratio * 1.1};
  p1_sampler_ = std::make_unique<RejectionSampler>(
      [this](double x) { return p1_fast(x); }, env,
      std::pair<double, double>{-12.0, 12.0});
}

double GaussianChainSampler::gamma_tail(double xi) const {
  if (xi < 1e-14 || xi > 20.0) {
    const double q = std::max(xi, 1e-150);
    return specfun::upper_incomplete_gamma(1.0 - eta_, q * q);
  }
  return std::exp(loglog_lookup(gt_, gt_w0_, gt_dw_, std::log(xi)));
}

double GaussianChainSampler::p3_shape_fast(double a) const {
  if (a < 1e-28 || a > 1500.0) {
    return gaussian::detail::p3_shape(eta_, std::max(a, 1e-300));
  }
  return std::exp(loglog_lookup(u_, u_w0_, u_dw_, std::log(a)));
}

double GaussianChainSampler::p1_fast(double x) const {
  auto integrand = [&](double w) {
    const double xw = x + w;
    return gamma_tail(std::fabs(w)) * std::exp(-xw * xw);
  };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  spec.abs_tol = 1e-300;
  spec.initial_panels = 10;
  spec.singular_hi = eta_ > 0.0;
  const double left =
      quad::integrate(integrand, quad::Domain::finite(-12.0, 0.0), spec).value;
  spec.singular_hi = false;
  spec.singular_lo = eta_ > 0.0;
  const double right =
      quad::integrate(integrand, quad::Domain::finite(0.0, 12.0), spec).value;
  return (left + right) / (2.0 * kSqrtPi * specfun::gamma(1.5 - eta_));
}

double GaussianChainSampler::p1_acceptance_rate() const {
  return p1_sampler_->acceptance_rate();
}

HermitianEntries GaussianChainSampler::sample_entries(RngStream& rng) const {
  const double x = p1_sampler_->draw(rng);

  // y | x ~ exp(-(x+y)^2/4) Gamma(1-eta, (x-y)^2/4)
  auto f2 = [&](double y) {
    const double sum = x + y;
    return std::exp(-0.25 * sum * sum) * gamma_tail(0.5 * std::fabs(x - y));
  };
  const double ylo = std::min(-x, x) - 14.0;
  const double yhi = std::max(-x, x) + 14.0;
  tl_grid.build(f2, ylo, yhi,
                eta_ > 0.0 ? std::optional<double>(x) : std::nullopt);
  double y = tl_grid.sample(rng.next_double());

  double d = x - y;
  if (d == 0.0 && eta_ >= 1.0) {
    // measure-zero coincidence makes the t-conditional non-normalizable;
    // retry once with a perturbed conditioning value
    y += 1e-12 * (1.0 + std::fabs(y));
    d = x - y;
  }

  // |t| | (x, y) ~ exp(-t^2/2) * shape(d^2 + 2 t^2)
  const double d2 = d * d;
  auto f3 = [&](double t) {
    return std::exp(-0.5 * t * t) * p3_shape_fast(d2 + 2.0 * t * t);
  };
  tl_grid.build(f3, 0.0, 14.0, 0.0);
  double t = tl_grid.sample(rng.next_double());
  if (rng.next_double() < 0.5) t = -t;

  double a = d2 + 2.0 * t * t;
  if (a == 0.0 && eta_ >= 0.5) {
    t = 1e-12;
    a = d2 + 2.0 * t * t;
  }

  // |s| | (x, y, t) ~ exp(-s^2/2) (a + 2 s^2)^{-eta}
  auto f4 = [&](double s) {
    return std::exp(-0.5 * s * s - eta_ * std::log(a + 2.0 * s * s));
  };
  tl_grid.build(f4, 0.0, 14.0, 0.0);
  double s = tl_grid.sample(rng.next_double());
  if (rng.next_double() < 0.5) s = -s;

  return HermitianEntries{x, y, t, s};
}

// ---------------------------------------------------------------------------
// BesselEigenSampler

BesselEigenSampler::BesselEigenSampler(const bessel::BesselWeightParams& p)
    : params_(p),
      phi_(p),
      envelope_(GridTableEnvelope::build(
          [this](double l) {
            // sqrt(2) phi (1 + l^2) dominates phi(l1) phi(l2) |dl|^{2-2eta}
            // as a product; cap the eta = 1 log divergence via the grid step
            const double al = std::max(std::fabs(l), 1e-9);
            return std::sqrt(2.0) * phi_(al) * (1.0 + l * l);
          },
          -phi_.support_radius(), phi_.support_radius(), 4096)) {
  if (std::fabs(params_.eta - 1.0) < 1e-12) {
    // factorized case: coordinates are independent with density ~ phi,
    // sampled exactly by a singularity-aware inverse-CDF grid
    const double R = phi_.support_radius();
    iid_grid_ = std::make_unique<detail::ConditionalGrid>();
    iid_grid_->build(
        [this](double l) { return phi_(std::max(std::fabs(l), 1e-300)); }, -R,
        R, 0.0, 8192);
  } else {
    // verify domination of the per-coordinate bound on a probe grid
    const double R = phi_.support_radius();
    for (int i = 0; i < 4096; ++i) {
      const double l = -R + 2.0 * R * (i + 0.37) / 4096.0;
      const double psi = std::sqrt(2.0) * phi_(std::fabs(l)) * (1.0 + l * l);
      if (psi > envelope_.density(l) * (1.0 + 1e-12) &&
          std::fabs(l) > 1e-6) {
        throw envelope_violation_error(
            "BesselEigenSampler: envelope fails to dominate");
      }
    }
  }
}

SpectralPair BesselEigenSampler::sample(RngStream& rng) const {
  if (iid_grid_) {
    const double l1 = iid_grid_->sample(rng.next_double());
    const double l2 = iid_grid_->sample(rng.next_double());
    accepts_.fetch_add(1, std::memory_order_relaxed);
    proposals_.fetch_add(1, std::memory_order_relaxed);
    return SpectralPair::ordered(l1, l2);
  }
  const double power = 2.0 - 2.0 * params_.eta;
  long consecutive = 0;
  while (true) {
    const double l1 = envelope_.sample(rng);
    const double l2 = envelope_.sample(rng);
    proposals_.fetch_add(1, std::memory_order_relaxed);
    const double e = envelope_.density(l1) * envelope_.density(l2);
    const double dl = std::fabs(l2 - l1);
    const double target =
        phi_(l1) * phi_(l2) * (dl > 0.0 ? std::pow(dl, power) : 0.0);
    if (rng.next_double() * e <= target) {
      accepts_.fetch_add(1, std::memory_order_relaxed);
      return SpectralPair::ordered(l1, l2);
    }
    if (++consecutive >= 200000) {
      throw starvation_error("BesselEigenSampler: acceptance collapsed");
    }
  }
}

double BesselEigenSampler::acceptance_rate() const {
  const auto p = proposals_.load(std::memory_order_relaxed);
  const auto a = accepts_.load(std::memory_order_relaxed);
  return p == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(p);
}

// ---------------------------------------------------------------------------
// matrix helpers

Unitary2x2 haar_unitary_2x2(RngStream& rng) {
  using C = std::complex<double>;
  const C a{rng.next_normal(), rng.next_normal()};
  const C c{rng.next_normal(), rng.next_normal()};
  const C b{rng.next_normal(), rng.next_normal()};
  const C d{rng.next_normal(), rng.next_normal()};
  const double n1 = std::sqrt(std::norm(a) + std::norm(c));
  const C e1a = a / n1, e1c = c / n1;
  const C proj = std::conj(e1a) * b + std::conj(e1c) * d;
  C w1 = b - proj * e1a;
  C w2 = d - proj * e1c;
  const double n2 = std::sqrt(std::norm(w1) + std::norm(w2));
  w1 /= n2;
  w2 /= n2;
  return Unitary2x2{e1a, w1, e1c, w2};
}

HermitianEntries conjugate_to_entries(const SpectralPair& pair,
                                      const Unitary2x2& u) {
  const double l1 = pair.lambda1, l2 = pair.lambda2;
  const double x = l1 * std::norm(u.u00) + l2 * std::norm(u.u01);
  const double y = l1 * std::norm(u.u10) + l2 * std::norm(u.u11);
  const std::complex<double> off =
      l1 * u.u00 * std::conj(u.u10) + l2 * u.u01 * std::conj(u.u11);
  const double rt2 = std::sqrt(2.0);
  return HermitianEntries{x, y, rt2 * off.real(), rt2 * off.imag()};
}

SpectralPair eigenvalues_2x2(const HermitianEntries& e) {
  const double mid = 0.5 * (e.x + e.y);
  const double half = 0.5 * (e.x - e.y);
  const double r = std::sqrt(half * half + 0.5 * (e.t * e.t + e.s * e.s));
  return SpectralPair{mid - r, mid + r};
}

PowerSumDet vandermonde_power_sum_det(std::span<const double> eigenvalues) {
  const int n = static_cast<int>(eigenvalues.size());
  if (n < 2 || n > 8) {
    throw std::domain_error("vandermonde_power_sum_det: n must lie in [2, 8]");
  }
  long double s[15] = {};
  s[0] = n;
  for (int k = 1; k <= 2 * (n - 1); ++k) {
    long double acc = 0.0;
    for (double l : eigenvalues) acc += std::pow(static_cast<long double>(l), k);
    s[k] = acc;
  }
  long double m[8][8];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = s[i + j];
  }
  // LU with partial pivoting
  long double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(static_cast<double>(m[r][col])) >
          std::fabs(static_cast<double>(m[piv][col]))) {
        piv = r;
      }
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m[piv][j], m[col][j]);
      det = -det;
    }
    det *= m[col][col];
    if (m[col][col] == 0.0L) break;
    for (int r = col + 1; r < n; ++r) {
      const long double f = m[r][col] / m[col][col];
      for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  long double vdm = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const long double diff = eigenvalues[i] - eigenvalues[j];
      vdm *= diff * diff;
    }
  }
  return PowerSumDet{static_cast<double>(det), static_cast<double>(vdm)};
}

}  // namespace etaens::sampling
