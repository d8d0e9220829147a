#pragma once

#include <stdexcept>
#include <string>

namespace etaens {

// Argument outside the mathematical domain of an operation.
// (std::domain_error is used directly for plain domain violations.)

// A point where a density/function has an integrable divergence and no
// finite value can be returned.
class singular_point_error : public std::domain_error {
 public:
  explicit singular_point_error(const std::string& what)
      : std::domain_error(what) {}
};

// An iterative numerical scheme failed to reach its tolerance.
class nonconvergence_error : public std::runtime_error {
 public:
  explicit nonconvergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

// A rejection-sampling envelope fails to dominate the target density.
class envelope_violation_error : public std::runtime_error {
 public:
  explicit envelope_violation_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Rejection sampling acceptance rate collapsed below the usable floor.
class starvation_error : public std::runtime_error {
 public:
  explicit starvation_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace etaens
