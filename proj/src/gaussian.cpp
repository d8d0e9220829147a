#include "etaens/gaussian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "etaens/errors.hpp"
#include "etaens/specfun.hpp"

namespace etaens::gaussian {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSqrtPi = 1.77245385090551602729816748334114518;
constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;
constexpr double kEtaHalfWindow = 1e-6;  // K0-branch switch for p3

void require_eta_below_3_2(double eta, const char* who) {
  if (!(eta < 1.5)) {
    throw std::domain_error(std::string(who) + ": requires eta < 3/2");
  }
}

void require_eta_range(double eta, const char* who) {
  if (!(eta >= 0.0 && eta < 1.5)) {
    throw std::domain_error(std::string(who) + ": requires eta in [0, 3/2)");
  }
}

}  // namespace

NormConstants norm_constants(double eta) {
  require_eta_below_3_2(eta, "norm_constants");
  const double g = specfun::gamma(1.5 - eta);
  const double k = 1.0 / (kSqrtPi * std::pow(2.0, 3.0 - 2.0 * eta) * g);
  return NormConstants{k / kPi, k};
}

double jpd_entries(const HermitianEntries& e, double eta) {
  require_eta_range(eta, "jpd_entries");
  const double v = e.vstar();
  if (v == 0.0 && eta > 0.0) {
    throw singular_point_error("jpd_entries: vstar = 0 with eta > 0");
  }
  const double c = norm_constants(eta).c_eta;
  return c * std::exp(-0.5 * e.trace2()) * std::pow(v, -eta);
}

double marginal_p1(double x, double eta) {
  require_eta_range(eta, "marginal_p1");
  auto integrand = [&](double w) {
    return specfun::upper_incomplete_gamma(1.0 - eta, w * w) *
           std::exp(-(x + w) * (x + w));
  };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-300;  // pure relative control; p1 spans many decades
  spec.initial_panels = 16;
  // Gamma(1-eta, w^2) has an integrable (log or power) feature at w = 0 for
  // eta > 0; beyond |w| = 12 the integrand is below 1e-60.
  spec.singular_hi = eta > 0.0;
  const double left =
      quad::integrate(integrand, quad::Domain::finite(-12.0, 0.0), spec).value;
  spec.singular_hi = false;
  spec.singular_lo = eta > 0.0;
  const double right =
      quad::integrate(integrand, quad::Domain::finite(0.0, 12.0), spec).value;
  return (left + right) / (2.0 * kSqrtPi * specfun::gamma(1.5 - eta));
}

double marginal_p2(double x, double y, double eta) {
  require_eta_range(eta, "marginal_p2");
  const double q = 0.25 * (x - y) * (x - y);
  if (q == 0.0 && eta >= 1.0) {
    throw singular_point_error("marginal_p2: diverges at x = y for eta >= 1");
  }
  const double sum = 0.25 * (x + y) * (x + y);
  return std::exp(-sum) * specfun::upper_incomplete_gamma(1.0 - eta, q) /
         (4.0 * kSqrtPi * specfun::gamma(1.5 - eta));
}

namespace detail {

double p3_shape(double eta, double a) {
  if (std::fabs(eta - 0.5) < kEtaHalfWindow) {
    if (a <= 0.0) {
      throw singular_point_error("marginal_p3: diverges at a = 0");
    }
    // exp(a/8) K0(a/8) / sqrt(2), the 0/0-free form at eta = 1/2
    return specfun::bessel_k0_scaled(0.125 * a) / std::sqrt(2.0);
  }
  if (a == 0.0) {
    if (eta > 0.5) {
      throw singular_point_error("marginal_p3: diverges at a = 0");
    }
    return std::pow(2.0, 0.5 - 2.0 * eta) * specfun::gamma(0.5 - eta);
  }
  const double z = 0.25 * a;
  if (z > 20.0) {
    // large-argument expansion of the underlying Tricomi function; the two
    // 1F1 terms below would cancel catastrophically here
    double term = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 0; k < 50; ++k) {
      term *= -(eta + k) * (0.5 + k) / ((k + 1) * z);
      if (std::fabs(term) > prev) break;
      sum += term;
      prev = std::fabs(term);
      if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return kSqrt2Pi * std::pow(4.0, -eta) * std::pow(z, -eta) * sum;
  }
  double first = 0.0;
  if (eta > 1e-14) {
    first = std::pow(a, 0.5 - eta) * std::sqrt(0.5 * kPi) *
            specfun::gamma(eta - 0.5) / specfun::gamma(eta) *
            specfun::kummer_1f1(0.5, 1.5 - eta, z);
  }
  const double second = std::pow(2.0, 0.5 - 2.0 * eta) *
                        specfun::gamma(0.5 - eta) *
                        specfun::kummer_1f1(eta, 0.5 + eta, z);
  return first + second;
}

}  // namespace detail

double marginal_p3(double x, double y, double t, double eta) {
  require_eta_range(eta, "marginal_p3");
  const double a = (x - y) * (x - y) + 2.0 * t * t;
  const double c = norm_constants(eta).c_eta;
  return c * std::exp(-0.5 * (x * x + y * y + t * t)) *
         detail::p3_shape(eta, a);
}

double jpd_eigen(double lambda1, double lambda2, double eta) {
  require_eta_below_3_2(eta, "jpd_eigen");
  const double k = norm_constants(eta).k_eta;
  const double gauss = std::exp(-0.5 * (lambda1 * lambda1 + lambda2 * lambda2));
  const double d = std::fabs(lambda2 - lambda1);
  const double p = 2.0 - 2.0 * eta;
  if (d == 0.0) {
    if (p < 0.0) {
      throw singular_point_error("jpd_eigen: diverges at lambda1 = lambda2");
    }
    return p == 0.0 ? k * gauss : 0.0;
  }
  return k * gauss * std::pow(d, p);
}

double spectral_density(double lambda, double eta) {
  require_eta_below_3_2(eta, "spectral_density");
  const double z = 0.5 * lambda * lambda;
  // e^{-l^2} 1F1(..., l^2/2) = e^{-l^2/2} * [e^{-z} 1F1(..., z)]
  return std::exp(-z) * specfun::kummer_1f1_scaled(1.5 - eta, 0.5, z) /
         (std::pow(2.0, 1.5 - eta) * kSqrtPi);
}

double gap_density(double s, double eta) {
  require_eta_below_3_2(eta, "gap_density");
  if (s < 0.0) throw std::domain_error("gap_density: requires s >= 0");
  const double k = norm_constants(eta).k_eta;
  const double p = 2.0 - 2.0 * eta;
  if (s == 0.0) {
    if (p < 0.0) {
      throw singular_point_error("gap_density: diverges at s = 0");
    }
    return p == 0.0 ? 2.0 * kSqrtPi * k : 0.0;
  }
  return 2.0 * kSqrtPi * k * std::pow(s, p) * std::exp(-0.25 * s * s);
}

double gap_cdf(double s, double eta) {
  require_eta_below_3_2(eta, "gap_cdf");
  if (s < 0.0) throw std::domain_error("gap_cdf: requires s >= 0");
  if (s == 0.0) return 0.0;
  const double a = 1.5 - eta;
  return 1.0 -
         specfun::upper_incomplete_gamma(a, 0.25 * s * s) / specfun::gamma(a);
}

double p1_asymptotic(double x, double eta) {
  const double ax = std::fabs(x);
  return std::pow(0.5 * ax, -2.0 * eta) * std::exp(-0.5 * ax * ax) /
         (2.0 * std::sqrt(2.0) * specfun::gamma(1.5 - eta));
}

double jpd_eigen_real_twin(double lambda1, double lambda2, double eta_hat) {
  if (!(eta_hat < 2.0)) {
    throw std::domain_error("jpd_eigen_real_twin: requires eta_hat < 2");
  }
  return jpd_eigen(lambda1, lambda2, 0.5 * (eta_hat + 1.0));
}

AntiEtaInfo anti_eta_check(double eta) {
  if (!(eta > 1.0 && eta < 1.5)) {
    throw std::domain_error("anti_eta_check: requires eta in (1, 3/2)");
  }
  const NormConstants nc = norm_constants(eta);
  AntiEtaInfo info;
  info.beta_eff = 2.0 - 2.0 * eta;
  info.normalizable = std::isfinite(nc.k_eta) && nc.k_eta > 0.0;
  return info;
}

}  // namespace etaens::gaussian
