#include "etaens/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etaens/errors.hpp"
#include "etaens/quadrature.hpp"
#include "etaens/specfun.hpp"

namespace etaens::bessel {

namespace {

constexpr double kExpFloor = 745.0;  // exp(-x) underflows past this

double phi_integrand(double t, double zeta, double alpha, double x2) {
  // t^{-zeta} exp(-t/(8 alpha) - 2 alpha x^2 t^{-zeta})
  const double tz = std::pow(t, -zeta);
  const double arg = t / (8.0 * alpha) + 2.0 * alpha * x2 * tz;
  if (arg > kExpFloor) return 0.0;
  return tz * std::exp(-arg);
}

double phi_by_quadrature(double x, const BesselWeightParams& p) {
  const double zeta = p.zeta();
  const double x2 = x * x;
  if (zeta >= 1.0 && x2 == 0.0) {
    throw singular_point_error("phi: diverges at x = 0 for eta = 1");
  }
  auto f = [&](double t) { return phi_integrand(t, zeta, p.alpha, x2); };
  const double split = 8.0 * p.alpha;
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.abs_tol = 1e-300;
  spec.initial_panels = 12;
  spec.singular_lo = zeta > 0.0;
  const double head =
      quad::integrate(f, quad::Domain::finite(0.0, split), spec).value;
  spec.singular_lo = false;
  const double tail =
      quad::integrate(f, quad::Domain::half_line(split), spec).value;
  return p.b_norm * (head + tail);
}

}  // namespace

void BesselWeightParams::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("BesselWeightParams: eta must lie in [0, 1]");
  }
  if (!(alpha > 0.0)) {
    throw std::domain_error("BesselWeightParams: alpha must be > 0");
  }
  if (!(b_norm > 0.0)) {
    throw std::domain_error("BesselWeightParams: b_norm must be > 0");
  }
}

double phi(double x, const BesselWeightParams& p) {
  p.validate();
  return phi_by_quadrature(x, p);
}

double gap_tail(double s, const BesselWeightParams& p) {
  p.validate();
  if (!(p.eta >= 0.5)) {
    throw std::domain_error("gap_tail: defined for eta in [1/2, 1]");
  }
  const double two_eta_m1 = 2.0 * p.eta - 1.0;
  const double mid = std::fabs(two_eta_m1) < 1e-12
                         ? 1.0
                         : std::pow(two_eta_m1, -1.0 + 0.5 / p.eta);
  const double exponent = p.eta * mid *
                          std::pow(2.0 * p.alpha, -1.0 + 1.0 / p.eta) *
                          std::pow(s, 1.0 / p.eta);
  return std::exp(-exponent);
}

PhiEvaluator::PhiEvaluator(const BesselWeightParams& p) : params_(p) {
  p.validate();
  if (std::fabs(p.eta - 1.0) < 1e-12) {
    mode_ = Mode::bessel_k0;
    // 2 b K0(|x|): e^{-x} falloff; keep a generous support radius
    radius_ = 60.0;
    return;
  }
  if (std::fabs(p.eta - 0.5) < 1e-12) {
    mode_ = Mode::gauss;
    radius_ = std::sqrt(kExpFloor / (2.0 * p.alpha));
    return;
  }
  mode_ = Mode::spline;
  x_lo_ = 0.02;
  // find where phi becomes negligible relative to its central scale
  const double scale = phi_by_quadrature(x_lo_, p);
  double r = 4.0;
  while (r < 240.0 && phi_by_quadrature(r, p) > 1e-18 * scale) r *= 1.5;
  radius_ = r;
  const int n = 4000;
  w0_ = std::log(x_lo_);
  dw_ = (std::log(radius_) - w0_) / (n - 1);
  logphi_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = std::exp(w0_ + dw_ * i);
    const double v = phi_by_quadrature(x, p);
    logphi_[i] = std::log(std::max(v, 1e-320));
  }
}

double PhiEvaluator::operator()(double x) const {
  const double ax = std::fabs(x);
  switch (mode_) {
    case Mode::bessel_k0:
      if (ax == 0.0) {
        throw singular_point_error("phi: diverges at x = 0 for eta = 1");
      }
      if (ax > 700.0) return 0.0;
      return 2.0 * params_.b_norm * specfun::bessel_k0(ax);
    case Mode::gauss: {
      const double arg = 2.0 * params_.alpha * ax * ax;
      if (arg > kExpFloor) return 0.0;
      return params_.b_norm * 8.0 * params_.alpha * std::exp(-arg);
    }
    case Mode::spline:
      break;
  }
  if (ax < x_lo_ || ax >= radius_) return phi_by_quadrature(ax, params_);
  const double w = std::log(ax);
  const double fi = (w - w0_) / dw_;
  const int n = static_cast<int>(logphi_.size());
  int i = static_cast<int>(fi);
  i = std::clamp(i, 1, n - 3);
  const double u = fi - i;
  // 4-point Lagrange interpolation in (log x, log phi)
  const double ym1 = logphi_[i - 1], y0 = logphi_[i], y1 = logphi_[i + 1],
               y2 = logphi_[i + 2];
  const double c0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double c1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double c2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double c3 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return std::exp(c0 * ym1 + c1 * y0 + c2 * y1 + c3 * y2);
}

namespace {

// (phi * phi)(s) = int phi(l) phi(l + s) dl, split at the cusp/singular
// points l = 0 and l = -s.
double phi_self_convolution(const PhiEvaluator& phi, double s) {
  auto f = [&](double l) {
    const double a = phi(l);
    if (a == 0.0) return 0.0;
    const double b = phi(l + s);
    return a * b;
  };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  spec.abs_tol = 1e-300;
  spec.initial_panels = 10;
  const double R = phi.support_radius();
  double total = 0.0;
  if (s > 0.0) {
    // segments (-R-s, -s), (-s, -s/2), (-s/2, 0), (0, R)
    spec.singular_hi = true;
    total += quad::integrate(f, quad::Domain::finite(-R - s, -s), spec).value;
    spec.singular_hi = false;
    spec.singular_lo = true;
    total += quad::integrate(f, quad::Domain::finite(-s, -0.5 * s), spec).value;
    spec.singular_lo = false;
    spec.singular_hi = true;
    total +=
        quad::integrate(f, quad::Domain::finite(-0.5 * s, 0.0), spec).value;
    spec.singular_hi = false;
    spec.singular_lo = true;
    total += quad::integrate(f, quad::Domain::finite(0.0, R), spec).value;
  } else {
    spec.singular_hi = true;
    total += quad::integrate(f, quad::Domain::finite(-R, 0.0), spec).value;
    spec.singular_hi = false;
    spec.singular_lo = true;
    total += quad::integrate(f, quad::Domain::finite(0.0, R), spec).value;
  }
  return total;
}

}  // namespace

GapLaw::GapLaw(const BesselWeightParams& p) : params_(p), phi_(p) {
  const double power = 2.0 - 2.0 * p.eta;
  auto unnorm = [&](double s) {
    const double conv = phi_self_convolution(phi_, s);
    if (s == 0.0) return power == 0.0 ? conv : 0.0;
    return std::pow(s, power) * conv;
  };
  // establish the spacing range that carries all but ~1e-16 of the mass
  double peak = 0.0;
  for (double s : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) peak = std::max(peak, unnorm(s));
  double smax = 4.0;
  while (smax < 120.0 && unnorm(smax) > 1e-16 * peak) smax *= 1.3;
  s_max_ = smax;
  cdf_ = std::make_unique<stats::CdfTable>(unnorm, 0.0, s_max_, 200, false);
  norm_ = cdf_->total_mass();
  // rebuild normalized
  auto normed = [&](double s) { return unnorm(s) / norm_; };
  cdf_ = std::make_unique<stats::CdfTable>(normed, 0.0, s_max_, 200, false);
}

double GapLaw::unnormalized(double s) const {
  if (s < 0.0) throw std::domain_error("GapLaw: requires s >= 0");
  const double power = 2.0 - 2.0 * params_.eta;
  const double conv = phi_self_convolution(phi_, s);
  if (s == 0.0) return power == 0.0 ? conv : 0.0;
  return std::pow(s, power) * conv;
}

double GapLaw::density(double s) const { return unnormalized(s) / norm_; }

double GapLaw::cdf(double s) const {
  if (s < 0.0) throw std::domain_error("GapLaw: requires s >= 0");
  return (*cdf_)(s);
}

SpectralDensity::SpectralDensity(const BesselWeightParams& p,
                                 DensityMethod method)
    : params_(p), method_(method), phi_(p) {
  auto f = [&](double l) { return unnormalized(l); };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-7;
  spec.abs_tol = 1e-300;
  spec.initial_panels = 10;
  const double R = phi_.support_radius() * 1.2;
  spec.singular_hi = true;
  double total = quad::integrate(f, quad::Domain::finite(-R, 0.0), spec).value;
  spec.singular_hi = false;
  spec.singular_lo = true;
  total += quad::integrate(f, quad::Domain::finite(0.0, R), spec).value;
  norm_ = total;
}

double SpectralDensity::unnormalized(double lambda) const {
  const double zeta = params_.zeta();
  const double alpha = params_.alpha;
  const double fl = phi_(lambda);
  if (fl == 0.0) return 0.0;
  if (method_ == DensityMethod::direct) {
    const double R = phi_.support_radius();
    auto coupled = [&](double x) {
      // F(x) = int_0^inf s^{1-zeta} phi(s + x) ds
      auto g = [&](double s) {
        const double v = phi_(s + x);
        return v == 0.0 ? 0.0 : std::pow(s, 1.0 - zeta) * v;
      };
      quad::QuadratureSpec spec;
      spec.rel_tol = 1e-8;
      spec.abs_tol = 1e-300;
      spec.initial_panels = 8;
      double acc = 0.0;
      if (x < 0.0) {
        spec.singular_lo = true;
        spec.singular_hi = true;
        acc += quad::integrate(g, quad::Domain::finite(0.0, -x), spec).value;
        spec.singular_lo = true;
        spec.singular_hi = false;
        acc +=
            quad::integrate(g, quad::Domain::finite(-x, -x + R), spec).value;
      } else {
        spec.singular_lo = true;
        acc += quad::integrate(g, quad::Domain::finite(0.0, x + R), spec).value;
      }
      return acc;
    };
    return fl * (coupled(lambda) + coupled(-lambda));
  }
  // reduced single-integral form
  const double l2 = lambda * lambda;
  auto g = [&](double t) {
    const double tz = std::pow(t, -zeta);
    const double w = 2.0 * alpha * l2 * tz;
    const double damp = t / (8.0 * alpha);
    if (damp > kExpFloor) return 0.0;
    const double kum = specfun::kummer_1f1_scaled(1.0 - 0.5 * zeta, 0.5, w);
    return std::pow(t, -0.5 * zeta * zeta) * std::exp(-damp) * kum;
  };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  spec.abs_tol = 1e-300;
  spec.initial_panels = 10;
  spec.singular_lo = zeta > 0.0;
  const double split = 8.0 * alpha;
  double acc = quad::integrate(g, quad::Domain::finite(0.0, split), spec).value;
  spec.singular_lo = false;
  acc += quad::integrate(g, quad::Domain::half_line(split), spec).value;
  return fl * acc;
}

double SpectralDensity::operator()(double lambda) const {
  return unnormalized(lambda) / norm_;
}

SpectralPair eigen_from_traces(double s1, double s2) {
  const double disc = 2.0 * s2 - s1 * s1;
  if (disc < 0.0) {
    throw std::domain_error(
        "eigen_from_traces: 2 s2 < s1^2 is not realizable by a Hermitian "
        "matrix");
  }
  const double root = std::sqrt(disc);
  return SpectralPair::ordered(0.5 * (s1 - root), 0.5 * (s1 + root));
}

}  // namespace etaens::bessel
