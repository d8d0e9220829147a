#pragma once

// Seeded Monte Carlo experiments: draw matrices, diagonalize, pool
// eigenvalues and raw spacings into histograms, and score the samples
// against the analytic curves. Sampling is partitioned by sample index with
// one counter-based RNG stream per sample, so the result is byte-identical
// for any worker count.

#include <cstdint>
#include <utility>
#include <vector>

#include "etaens/stats.hpp"
#include "etaens/types.hpp"

namespace etaens::experiment {

struct ExperimentConfig {
  EnsembleParams params;
  long n_samples = 75000;
  std::uint64_t seed = 1;
  int n_bins = 60;
  std::pair<double, double> eigen_range = {-4.0, 4.0};
  std::pair<double, double> spacing_range = {0.0, 6.0};
  int workers = 1;
};

struct SampleRecord {
  double x, y, t, s, lambda1, lambda2, spacing;
};

struct ExperimentResult {
  EnsembleParams params;
  long n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<SampleRecord> samples;
  stats::Histogram eigen_histogram;
  stats::Histogram spacing_histogram;
  stats::GofStats gof_density;
  stats::GofStats gof_spacing;
  double elapsed_seconds = 0.0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace etaens::experiment
