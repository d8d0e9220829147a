#pragma once

// The Generalized Bessel weight: the interpolating function phi, the
// factorized-weight gap law with its Poisson-Wigner crossover, the
// saddle-point tail shape, and the spectral density in both the reduced
// single-integral form and a direct double-quadrature form.

#include <functional>
#include <memory>
#include <vector>

#include "etaens/stats.hpp"
#include "etaens/types.hpp"

namespace etaens::bessel {

struct BesselWeightParams {
  double eta = 0.75;   // in [0, 1]
  double alpha = 1.0;  // > 0
  double b_norm = 1.0; // overall scale of phi; cancels in every observable

  double zeta() const { return 2.0 * eta - 1.0; }
  void validate() const;
};

// phi(x) = b_norm * int_0^inf t^{1-2 eta}
//            exp(-t/(8 alpha) - 2 alpha x^2 / t^{2 eta - 1}) dt,
// evaluated by adaptive quadrature split at t = 8 alpha. Even in x.
double phi(double x, const BesselWeightParams& p);

// Unnormalized saddle-point tail shape
// exp[-eta (2 eta - 1)^{-1 + 1/(2 eta)} (2 alpha)^{-1 + 1/eta} s^{1/eta}],
// with the (2 eta - 1)-factor read as 1 at eta = 1/2 by continuity.
// Defined for eta in [1/2, 1].
double gap_tail(double s, const BesselWeightParams& p);

// Fast phi evaluator: exact closed forms at eta = 1/2 and eta = 1, a verified
// log-log spline elsewhere, with direct quadrature below the spline window
// and past its upper end. Relative accuracy ~1e-9. Immutable after
// construction, safe to share across threads.
class PhiEvaluator {
 public:
  explicit PhiEvaluator(const BesselWeightParams& p);
  double operator()(double x) const;
  const BesselWeightParams& params() const { return params_; }
  double support_radius() const { return radius_; }

 private:
  enum class Mode { bessel_k0, gauss, spline };
  BesselWeightParams params_;
  Mode mode_;
  double radius_ = 0.0;
  double x_lo_ = 0.0;
  // log-log spline data
  double w0_ = 0.0, dw_ = 0.0;
  std::vector<double> logphi_;
};

// Normalized spacing law s^{2-2 eta} * int phi(l) phi(l+s) dl / Z.
// The normalization and a CDF table are computed eagerly at construction;
// the object is immutable afterwards.
class GapLaw {
 public:
  explicit GapLaw(const BesselWeightParams& p);
  double density(double s) const;
  double cdf(double s) const;
  double unnormalized(double s) const;  // s^{2-2 eta} (phi*phi)(s)
  double norm_constant() const { return norm_; }
  double s_max() const { return s_max_; }

 private:
  BesselWeightParams params_;
  PhiEvaluator phi_;
  double norm_ = 0.0;
  double s_max_ = 0.0;
  std::unique_ptr<stats::CdfTable> cdf_;
};

enum class DensityMethod { reduced, direct };

// Spectral density, normalized to unit mass at construction.
//  - direct:  rho ~ phi(l) * [F(l) + F(-l)], F(x) = int_0^inf s^{1-z} phi(s+x) ds
//  - reduced: rho ~ phi(l) * int_0^inf t^{-z^2/2} e^{-t/(8a)}
//                    [e^{-w} 1F1(1 - z/2, 1/2, w)] dt,  w = 2 a l^2 t^{-z}
// with z = 2 eta - 1.
class SpectralDensity {
 public:
  SpectralDensity(const BesselWeightParams& p, DensityMethod method);
  double operator()(double lambda) const;
  DensityMethod method() const { return method_; }
  double norm_constant() const { return norm_; }

 private:
  double unnormalized(double lambda) const;
  BesselWeightParams params_;
  DensityMethod method_;
  PhiEvaluator phi_;
  double norm_ = 0.0;
};

// lambda_{1,2} = (s1 -+ sqrt(2 s2 - s1^2)) / 2 from the first two power sums.
// Throws std::domain_error when 2 s2 < s1^2 (not realizable by a Hermitian
// matrix).
SpectralPair eigen_from_traces(double s1, double s2);

}  // namespace etaens::bessel
