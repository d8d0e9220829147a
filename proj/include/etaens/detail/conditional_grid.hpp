#pragma once

// Inverse-CDF sampling grid for one 1-D density: uniform coverage of
// [lo, hi] merged with geometric clustering around an optional singular or
// cusp point, trapezoid cell masses, quadratic within-cell inversion.
// Library-internal.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "etaens/errors.hpp"

namespace etaens::sampling::detail {

class ConditionalGrid {
 public:
  template <class F>
  void build(F&& f, double lo, double hi, std::optional<double> feature,
             int n_points = 2048) {
    make_nodes(lo, hi, feature, n_points);
    const std::size_t m = nodes_.size();
    fvals_.resize(m);
    cum_.resize(m);
    for (std::size_t i = 0; i < m; ++i) fvals_[i] = f(nodes_[i]);
    double acc = 0.0;
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      acc += 0.5 * (fvals_[i - 1] + fvals_[i]) * (nodes_[i] - nodes_[i - 1]);
      cum_[i] = acc;
    }
    if (!(acc > 0.0) || !std::isfinite(acc)) {
      throw singular_point_error(
          "conditional sampler: non-normalizable conditional density");
    }
  }

  double total_mass() const { return cum_.back(); }

  double sample(double u01) const {
    const double target = u01 * cum_.back();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    std::size_t i = static_cast<std::size_t>(it - cum_.begin());
    if (i == 0) i = 1;
    if (i >= cum_.size()) i = cum_.size() - 1;
    const double m = target - cum_[i - 1];
    const double h = nodes_[i] - nodes_[i - 1];
    const double f0 = fvals_[i - 1], f1 = fvals_[i];
    const double df = f1 - f0;
    double xi;
    if (std::fabs(df) < 1e-14 * (f0 + f1)) {
      xi = f0 > 0.0 ? m / (f0 * h) : 0.5;
    } else {
      // invert the quadratic CDF of the linear density on the cell
      const double disc = f0 * f0 + 2.0 * df * m / h;
      xi = (std::sqrt(std::max(disc, 0.0)) - f0) / df;
    }
    xi = std::clamp(xi, 0.0, 1.0);
    return nodes_[i - 1] + xi * h;
  }

 private:
  void make_nodes(double lo, double hi, std::optional<double> feature,
                  int n_points) {
    nodes_.clear();
    const double range = hi - lo;
    if (!feature || *feature <= lo || *feature >= hi) {
      nodes_.resize(n_points);
      for (int i = 0; i < n_points; ++i) {
        nodes_[i] = lo + range * i / (n_points - 1);
      }
      return;
    }
    const double c = *feature;
    const double eps = 1e-13 * range;
    const int n_uniform = n_points / 2;
    const int per_side = (n_points - n_uniform) / 2;
    scratch_.clear();
    scratch_.reserve(static_cast<std::size_t>(n_points));
    if (c - lo > 2.0 * eps) {
      const double span = c - lo;
      const double g = std::pow(span / eps, 1.0 / (per_side - 1));
      double d = span;
      for (int j = 0; j < per_side; ++j) {
        scratch_.push_back(c - d);
        d /= g;
      }
    }
    const std::size_t right_begin = scratch_.size();
    if (hi - c > 2.0 * eps) {
      const double span = hi - c;
      const double g = std::pow(span / eps, 1.0 / (per_side - 1));
      double d = span;
      for (int j = 0; j < per_side; ++j) {
        scratch_.push_back(c + d);
        d /= g;
      }
      std::reverse(scratch_.begin() + right_begin, scratch_.end());
    }
    nodes_.reserve(scratch_.size() + n_uniform);
    std::size_t gi = 0;
    for (int i = 0; i < n_uniform; ++i) {
      const double xu = lo + range * i / (n_uniform - 1);
      while (gi < scratch_.size() && scratch_[gi] <= xu) {
        if (nodes_.empty() || scratch_[gi] > nodes_.back()) {
          nodes_.push_back(scratch_[gi]);
        }
        ++gi;
      }
      if (nodes_.empty() || xu > nodes_.back()) nodes_.push_back(xu);
    }
    while (gi < scratch_.size()) {
      if (scratch_[gi] > nodes_.back()) nodes_.push_back(scratch_[gi]);
      ++gi;
    }
  }

  std::vector<double> nodes_, fvals_, cum_, scratch_;
};

}  // namespace etaens::sampling::detail
