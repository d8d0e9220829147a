#pragma once

// The Gaussian-weight ensemble: normalization constants, entry jpd, the
// marginal tower p1/p2/p3, eigenvalue jpd, spectral density, gap law,
// large-|x| asymptotics of p1, the real-symmetric twin, and the extended
// eta range with negative effective Dyson index. All functions are pure.

#include "etaens/quadrature.hpp"
#include "etaens/types.hpp"

namespace etaens::gaussian {

struct NormConstants {
  double c_eta = 0.0;  // entry-jpd normalization
  double k_eta = 0.0;  // eigenvalue-jpd normalization
};

// k = (sqrt(pi) 2^{3-2 eta} Gamma(3/2 - eta))^{-1}, c = k / pi.
// Requires eta < 3/2.
NormConstants norm_constants(double eta);

// C_eta exp(-(x^2+y^2+t^2+s^2)/2) / [2(x^2+y^2+t^2+s^2) - (x+y)^2]^eta.
double jpd_entries(const HermitianEntries& e, double eta);

// Single-entry marginal, computed as the convolution of Gamma(1-eta, w^2)
// with a Gaussian. eta in [0, 3/2).
double marginal_p1(double x, double eta);

// exp(-(x+y)^2/4) Gamma(1-eta, (x-y)^2/4) / (4 sqrt(pi) Gamma(3/2-eta)).
double marginal_p2(double x, double y, double eta);

// Three-entry marginal; closed form in 1F1 with a K0-based branch inside
// |eta - 1/2| < 1e-6 where the general form has a 0/0 cancellation.
double marginal_p3(double x, double y, double t, double eta);

// K_eta exp(-(l1^2+l2^2)/2) |l2-l1|^{2-2 eta}; symmetric under swap.
double jpd_eigen(double lambda1, double lambda2, double eta);

// rho_eta(lambda) = e^{-lambda^2} 1F1(3/2-eta, 1/2, lambda^2/2)
//                   / (2^{3/2-eta} sqrt(pi)).
double spectral_density(double lambda, double eta);

// Raw-spacing density P_eta(s) = 2 sqrt(pi) K_eta s^{2-2 eta} e^{-s^2/4}.
double gap_density(double s, double eta);

// Closed-form CDF of the spacing law: 1 - Gamma(3/2-eta, s^2/4)/Gamma(3/2-eta).
double gap_cdf(double s, double eta);

// Large-|x| form (x/2)^{-2 eta} e^{-x^2/2} / (2 sqrt(2) Gamma(3/2-eta)).
double p1_asymptotic(double x, double eta);

// Real-symmetric twin jpd, proportional to e^{-(l1^2+l2^2)/2}|l2-l1|^{1-eta_hat}
// and normalized; identical to jpd_eigen(l1, l2, (eta_hat+1)/2).
double jpd_eigen_real_twin(double lambda1, double lambda2, double eta_hat);

struct AntiEtaInfo {
  double beta_eff = 0.0;
  bool normalizable = false;
};

// Extended range 1 < eta < 3/2: negative effective Dyson index with a still
// normalizable eigenvalue jpd (level attraction).
AntiEtaInfo anti_eta_check(double eta);

namespace detail {
// The bracketed factor of p3 as a function of a = (x-y)^2 + 2 t^2, so that
// p3 = c_eta * exp(-(x^2+y^2+t^2)/2) * p3_shape(eta, a). Shared with the
// conditional samplers.
double p3_shape(double eta, double a);
}  // namespace detail

}  // namespace etaens::gaussian
