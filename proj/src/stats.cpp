#include "etaens/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etaens/quadrature.hpp"

namespace etaens::stats {

Histogram build_histogram(std::span<const double> data, int n_bins,
                          std::pair<double, double> range) {
  if (data.empty()) throw std::invalid_argument("build_histogram: empty data");
  if (n_bins < 1) throw std::domain_error("build_histogram: n_bins >= 1");
  const auto [lo, hi] = range;
  if (!(lo < hi)) throw std::domain_error("build_histogram: requires lo < hi");

  Histogram h;
  h.bin_edges.resize(n_bins + 1);
  const double width = (hi - lo) / n_bins;
  for (int i = 0; i <= n_bins; ++i) h.bin_edges[i] = lo + width * i;
  h.bin_edges.back() = hi;
  h.counts.assign(n_bins, 0);

  for (double v : data) {
    if (v < lo) {
      ++h.n_underflow;
    } else if (v >= hi) {
      // closed top edge: count v == hi in the last bin
      if (v == hi) {
        ++h.counts[n_bins - 1];
        ++h.total;
      } else {
        ++h.n_overflow;
      }
    } else {
      int idx = static_cast<int>((v - lo) / width);
      if (idx >= n_bins) idx = n_bins - 1;
      ++h.counts[idx];
      ++h.total;
    }
  }

  h.normalized_heights.assign(n_bins, 0.0);
  if (h.total > 0) {
    for (int i = 0; i < n_bins; ++i) {
      const double w = h.bin_edges[i + 1] - h.bin_edges[i];
      h.normalized_heights[i] = static_cast<double>(h.counts[i]) /
                                (static_cast<double>(h.total) * w);
    }
  }
  return h;
}

GofStats ks_distance(std::span<const double> data,
                     const std::function<double(double)>& cdf) {
  if (data.empty()) throw std::invalid_argument("ks_distance: empty data");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::fabs((i + 1) / n - f));
    d = std::max(d, std::fabs(i / n - f));
  }
  GofStats g;
  g.ks_distance = d;
  g.n = static_cast<long>(sorted.size());
  return g;
}

double sup_vs_curve(const Histogram& hist,
                    const std::function<double(double)>& density) {
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < hist.bin_edges.size(); ++i) {
    const double c = 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
    sup = std::max(sup,
                   std::fabs(hist.normalized_heights[i] - density(c)));
  }
  return sup;
}

CdfTable::CdfTable(const std::function<double(double)>& density, double lo,
                   double hi, int n_panels, bool normalize) {
  if (!(lo < hi) || n_panels < 1) {
    throw std::domain_error("CdfTable: invalid range or panel count");
  }
  x_.resize(n_panels + 1);
  pdf_.resize(n_panels + 1);
  cdf_.resize(n_panels + 1);
  const double w = (hi - lo) / n_panels;
  for (int i = 0; i <= n_panels; ++i) {
    x_[i] = lo + w * i;
    pdf_[i] = density(x_[i]);
  }
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.abs_tol = 1e-14;
  double acc = 0.0;
  cdf_[0] = 0.0;
  for (int i = 0; i < n_panels; ++i) {
    acc += quad::integrate(density, quad::Domain::finite(x_[i], x_[i + 1]),
                           spec)
               .value;
    cdf_[i + 1] = acc;
  }
  total_ = acc;
  if (normalize && total_ > 0.0) {
    for (auto& c : cdf_) c /= total_;
    for (auto& p : pdf_) p /= total_;
  }
}

double CdfTable::operator()(double x) const {
  if (x <= x_.front()) return 0.0;
  if (x >= x_.back()) return 1.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double u = (x - x_[i]) / h;
  // cubic Hermite with pdf values as exact derivatives of the cdf
  const double y0 = cdf_[i], y1 = cdf_[i + 1];
  const double m0 = pdf_[i] * h, m1 = pdf_[i + 1] * h;
  const double u2 = u * u, u3 = u2 * u;
  double v = (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 +
             (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * m1;
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace etaens::stats
