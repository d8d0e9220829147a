#pragma once

#include <stdexcept>

namespace etaens {

enum class Weight { gaussian, generalized_bessel };
enum class Symmetry { unitary_2x2, real_symmetric_2x2 };

// Full model configuration. `eta` is the ensemble's running parameter: eta
// itself for the unitary classes, eta_hat for the real-symmetric twin.
struct EnsembleParams {
  Weight weight = Weight::gaussian;
  double eta = 0.0;
  double alpha = 1.0;  // Bessel weight scale; unused for the Gaussian weight
  Symmetry symmetry = Symmetry::unitary_2x2;

  double beta_eff() const {
    return symmetry == Symmetry::unitary_2x2 ? 2.0 - 2.0 * eta : 1.0 - eta;
  }
  double zeta() const { return 2.0 * eta - 1.0; }

  // Twin map: the real-symmetric ensemble at eta_hat = 2*eta - 1 shares the
  // eigenvalue jpd of the unitary one at eta.
  EnsembleParams real_twin() const {
    EnsembleParams p = *this;
    p.eta = 2.0 * eta - 1.0;
    p.symmetry = Symmetry::real_symmetric_2x2;
    return p;
  }

  void validate() const {
    if (weight == Weight::gaussian) {
      if (symmetry == Symmetry::unitary_2x2) {
        if (!(eta < 1.5))
          throw std::domain_error(
              "EnsembleParams: Gaussian unitary requires eta < 3/2");
      } else {
        if (!(eta < 2.0))
          throw std::domain_error(
              "EnsembleParams: Gaussian real-symmetric requires eta_hat < 2");
      }
    } else {
      if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error(
            "EnsembleParams: Bessel weight requires eta in [0, 1]");
      if (!(alpha > 0.0))
        throw std::domain_error("EnsembleParams: alpha must be > 0");
      if (symmetry != Symmetry::unitary_2x2)
        throw std::domain_error(
            "EnsembleParams: Bessel weight is defined for the unitary class");
    }
  }
};

// The four real variables of the 2x2 Hermitian matrix with off-diagonal
// (t + i s)/sqrt(2).
struct HermitianEntries {
  double x = 0.0, y = 0.0, t = 0.0, s = 0.0;

  double trace() const { return x + y; }
  double trace2() const { return x * x + y * y + t * t + s * s; }
  // 2 Tr X^2 - (Tr X)^2, computed in the manifestly non-negative form
  // (x - y)^2 + 2 t^2 + 2 s^2; equals the squared eigenvalue spacing.
  double vstar() const {
    const double d = x - y;
    return d * d + 2.0 * (t * t + s * s);
  }
};

// Ordered eigenvalue pair with raw (unfolded) spacing.
struct SpectralPair {
  double lambda1 = 0.0;  // lambda1 <= lambda2
  double lambda2 = 0.0;

  static SpectralPair ordered(double a, double b) {
    return a <= b ? SpectralPair{a, b} : SpectralPair{b, a};
  }
  double spacing() const { return lambda2 - lambda1; }
};

}  // namespace etaens
