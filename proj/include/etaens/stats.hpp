#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace etaens::stats {

// Density-normalized histogram. `counts`/`total` cover in-range data only;
// out-of-range points are reported separately, never dropped.
struct Histogram {
  std::vector<double> bin_edges;          // ascending, size = n_bins + 1
  std::vector<long> counts;               // size = n_bins
  long total = 0;                         // sum of counts
  std::vector<double> normalized_heights; // sum(height * width) == 1
  long n_underflow = 0;
  long n_overflow = 0;
};

Histogram build_histogram(std::span<const double> data, int n_bins,
                          std::pair<double, double> range);

struct GofStats {
  double ks_distance = 0.0;        // sup |F_emp - F| over sample points
  double sup_norm_vs_curve = 0.0;  // sup |hist height - curve| at bin centers
  long n = 0;
};

// Two-sided KS statistic of `data` against a monotone cdf with limits 0, 1.
// Both one-sided gaps (i/n and (i-1)/n) are evaluated at each sorted point.
// sup_norm_vs_curve is left at 0; fill it with sup_vs_curve when a histogram
// comparison is wanted as well.
GofStats ks_distance(std::span<const double> data,
                     const std::function<double(double)>& cdf);

// Max absolute difference between normalized histogram heights and a density
// curve evaluated at bin centers.
double sup_vs_curve(const Histogram& hist,
                    const std::function<double(double)>& density);

// Cumulative table of a 1-D density on [lo, hi], built panel-by-panel with a
// Gauss-Kronrod rule and evaluated by cubic Hermite interpolation (the
// density itself supplies the derivative). Used to turn analytic densities
// into the CDFs the KS tests need.
class CdfTable {
 public:
  CdfTable(const std::function<double(double)>& density, double lo, double hi,
           int n_panels, bool normalize = true);

  double operator()(double x) const;  // cdf value, clamped to [0, 1]
  double total_mass() const { return total_; }

 private:
  std::vector<double> x_, cdf_, pdf_;
  double total_ = 0.0;
};

}  // namespace etaens::stats
