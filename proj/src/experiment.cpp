#include "etaens/experiment.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

#include "etaens/bessel.hpp"
#include "etaens/gaussian.hpp"
#include "etaens/rng.hpp"
#include "etaens/sampling.hpp"

namespace etaens::experiment {

namespace {

stats::CdfTable gaussian_density_cdf(double eta) {
  return stats::CdfTable(
      [eta](double l) { return gaussian::spectral_density(l, eta); }, -9.0,
      9.0, 1200);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.params.validate();
  if (cfg.n_samples < 1) {
    throw std::invalid_argument("run_experiment: n_samples must be >= 1");
  }
  const auto t0 = std::chrono::steady_clock::now();

  ExperimentResult res;
  res.params = cfg.params;
  res.n_samples = cfg.n_samples;
  res.seed = cfg.seed;
  res.samples.resize(cfg.n_samples);

  const bool gaussian_weight = cfg.params.weight == Weight::gaussian;
  std::unique_ptr<sampling::GaussianChainSampler> chain;
  std::unique_ptr<sampling::BesselEigenSampler> eig;
  bessel::BesselWeightParams bp;
  if (gaussian_weight) {
    chain = std::make_unique<sampling::GaussianChainSampler>(cfg.params.eta);
  } else {
    bp.eta = cfg.params.eta;
    bp.alpha = cfg.params.alpha;
    eig = std::make_unique<sampling::BesselEigenSampler>(bp);
  }

  auto work = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
      HermitianEntries e;
      SpectralPair pair;
      if (gaussian_weight) {
        e = chain->sample_entries(rng);
        pair = sampling::eigenvalues_2x2(e);
      } else {
        pair = eig->sample(rng);
        const auto u = sampling::haar_unitary_2x2(rng);
        e = sampling::conjugate_to_entries(pair, u);
      }
      res.samples[i] = SampleRecord{e.x,          e.y,          e.t,
                                    e.s,          pair.lambda1, pair.lambda2,
                                    pair.spacing()};
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    work(0, cfg.n_samples);
  } else {
    std::vector<std::thread> pool;
    const long block = (cfg.n_samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long b = w * block;
      const long e2 = std::min<long>(cfg.n_samples, b + block);
      if (b >= e2) break;
      pool.emplace_back(work, b, e2);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> eigenvalues;
  eigenvalues.reserve(2 * cfg.n_samples);
  std::vector<double> spacings;
  spacings.reserve(cfg.n_samples);
  for (const auto& r : res.samples) {
    eigenvalues.push_back(r.lambda1);
    eigenvalues.push_back(r.lambda2);
    spacings.push_back(r.spacing);
  }

  res.eigen_histogram =
      stats::build_histogram(eigenvalues, cfg.n_bins, cfg.eigen_range);
  res.spacing_histogram =
      stats::build_histogram(spacings, cfg.n_bins, cfg.spacing_range);

  if (gaussian_weight) {
    const double eta = cfg.params.eta;
    const auto cdf = gaussian_density_cdf(eta);
    res.gof_density = stats::ks_distance(
        eigenvalues, [&cdf](double x) { return cdf(x); });
    res.gof_density.sup_norm_vs_curve = stats::sup_vs_curve(
        res.eigen_histogram,
        [eta](double l) { return gaussian::spectral_density(l, eta); });
    res.gof_spacing = stats::ks_distance(
        spacings, [eta](double s) { return gaussian::gap_cdf(s, eta); });
    res.gof_spacing.sup_norm_vs_curve = stats::sup_vs_curve(
        res.spacing_histogram,
        [eta](double s) { return gaussian::gap_density(s, eta); });
  } else {
    const bessel::SpectralDensity rho(bp, bessel::DensityMethod::direct);
    const double lim = 1.25 * std::max(std::fabs(cfg.eigen_range.first),
                                       std::fabs(cfg.eigen_range.second));
    const stats::CdfTable cdf([&rho](double l) { return rho(l); }, -lim, lim,
                              400);
    res.gof_density =
        stats::ks_distance(eigenvalues, [&cdf](double x) { return cdf(x); });
    res.gof_density.sup_norm_vs_curve =
        stats::sup_vs_curve(res.eigen_histogram, [&rho](double l) { return rho(l); });
    const bessel::GapLaw gap(bp);
    res.gof_spacing = stats::ks_distance(
        spacings, [&gap](double s) { return gap.cdf(s); });
    res.gof_spacing.sup_norm_vs_curve = stats::sup_vs_curve(
        res.spacing_histogram, [&gap](double s) { return gap.density(s); });
  }

  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

}  // namespace etaens::experiment
