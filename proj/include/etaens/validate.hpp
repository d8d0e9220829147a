#pragma once

// Cross-module invariant battery behind the `validate` command: analytic
// normalizations, limit collapses, the marginal tower, spectral twinning,
// the power-sum determinant identity, and the Bessel-weight consistency
// checks (Poisson/Wigner limits, Fourier constraint, reduced-vs-direct
// spectral density).

#include <string>
#include <vector>

namespace etaens::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // the figure the check gates on
  double threshold = 0.0;
  std::string note;
};

struct ValidateOptions {
  bool gaussian = true;
  bool bessel = true;
  // Test hook: scales K_eta inside the normalization checks so the battery
  // itself can be shown to catch a mis-normalized build.
  double keta_fault_scale = 1.0;
};

std::vector<CheckResult> run_validation(const ValidateOptions& opt);

}  // namespace etaens::validate
