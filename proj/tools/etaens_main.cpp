// Command-line front end: evaluate analytic curves, run seeded sampling
// experiments, check spectral twinning, and run the validation battery.
// Exit codes: 0 success, 1 usage, 2 domain error, 3 numerical failure,
// 4 validation failure.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "etaens/bessel.hpp"
#include "etaens/errors.hpp"
#include "etaens/experiment.hpp"
#include "etaens/gaussian.hpp"
#include "etaens/io.hpp"
#include "etaens/validate.hpp"

namespace {

using namespace etaens;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct Options {
  std::string weight = "gaussian";
  double eta = 0.0;
  double alpha = 1.0;
  std::string grid = "-4:4:201";
  long n_samples = 75000;
  std::uint64_t seed = 1;
  int bins = 60;
  int workers = 1;
  std::string out;
  std::string format = "csv";
  std::string method = "direct";
  int marginal_k = 1;
  double fix_y = 0.0;
  double fix_t = 0.0;
  double fault_keta = 1.0;
};

std::string default_out(const std::string& name) {
  const char* dir = std::getenv("ETAENS_OUT_DIR");
  if (dir != nullptr && *dir != '\0') {
    return (std::filesystem::path(dir) / name).string();
  }
  return name;
}

std::vector<std::pair<std::string, std::string>> common_header(
    const Options& o, const std::string& command) {
  return {{"command", command},
          {"weight", o.weight},
          {"eta", io::fmt17(o.eta)},
          {"alpha", io::fmt17(o.alpha)},
          {"grid", o.grid}};
}

int cmd_density(const Options& o) {
  const auto g = io::parse_grid(o.grid);
  io::CurveFile curve;
  curve.header = common_header(o, "density");
  curve.columns = {"lambda", "rho"};
  if (o.weight == "gaussian") {
    curve.header.emplace_back("method", "closed-form");
    for (int i = 0; i < g.n; ++i) {
      const double l = g.lo + (g.hi - g.lo) * i / (g.n - 1);
      curve.rows.push_back({l, gaussian::spectral_density(l, o.eta)});
    }
  } else {
    bessel::BesselWeightParams p{o.eta, o.alpha, 1.0};
    const auto method = o.method == "reduced" ? bessel::DensityMethod::reduced
                                              : bessel::DensityMethod::direct;
    curve.header.emplace_back("method", o.method);
    const bessel::SpectralDensity rho(p, method);
    for (int i = 0; i < g.n; ++i) {
      const double l = g.lo + (g.hi - g.lo) * i / (g.n - 1);
      curve.rows.push_back({l, rho(l)});
    }
  }
  io::write_curve_csv(curve, o.out.empty() ? default_out("density.csv") : o.out);
  return 0;
}

int cmd_spacing(const Options& o) {
  const auto g = io::parse_grid(o.grid);
  io::CurveFile curve;
  curve.header = common_header(o, "spacing");
  curve.columns = {"s", "p"};
  if (o.weight == "gaussian") {
    for (int i = 0; i < g.n; ++i) {
      const double s = g.lo + (g.hi - g.lo) * i / (g.n - 1);
      if (s < 0.0) throw std::domain_error("spacing grid must have s >= 0");
      curve.rows.push_back({s, gaussian::gap_density(s, o.eta)});
    }
  } else {
    bessel::BesselWeightParams p{o.eta, o.alpha, 1.0};
    const bessel::GapLaw gap(p);
    for (int i = 0; i < g.n; ++i) {
      const double s = g.lo + (g.hi - g.lo) * i / (g.n - 1);
      if (s < 0.0) throw std::domain_error("spacing grid must have s >= 0");
      curve.rows.push_back({s, gap.density(s)});
    }
  }
  io::write_curve_csv(curve, o.out.empty() ? default_out("spacing.csv") : o.out);
  return 0;
}

int cmd_marginal(const Options& o) {
  if (o.weight != "gaussian") {
    throw std::domain_error(
        "marginal curves are defined for the gaussian weight only");
  }
  const auto g = io::parse_grid(o.grid);
  io::CurveFile curve;
  curve.header = common_header(o, "marginal");
  curve.header.emplace_back("k", std::to_string(o.marginal_k));
  if (o.marginal_k < 1 || o.marginal_k > 3) {
    throw std::domain_error("marginal order k must be 1, 2 or 3");
  }
  curve.columns = {"x", "p" + std::to_string(o.marginal_k)};
  for (int i = 0; i < g.n; ++i) {
    const double x = g.lo + (g.hi - g.lo) * i / (g.n - 1);
    switch (o.marginal_k) {
      case 1:
        curve.rows.push_back({x, gaussian::marginal_p1(x, o.eta)});
        break;
      case 2:
        curve.rows.push_back({x, gaussian::marginal_p2(x, o.fix_y, o.eta)});
        break;
      default:
        curve.rows.push_back(
            {x, gaussian::marginal_p3(x, o.fix_y, o.fix_t, o.eta)});
        break;
    }
  }
  if (o.marginal_k >= 2) curve.header.emplace_back("y", io::fmt17(o.fix_y));
  if (o.marginal_k == 3) curve.header.emplace_back("t", io::fmt17(o.fix_t));
  io::write_curve_csv(curve,
                      o.out.empty() ? default_out("marginal.csv") : o.out);
  return 0;
}

int cmd_sample(const Options& o) {
  if (o.n_samples < 1) {
    std::cerr << "usage error: --n must be >= 1\n";
    return kExitUsage;
  }
  experiment::ExperimentConfig cfg;
  cfg.params.weight =
      o.weight == "gaussian" ? Weight::gaussian : Weight::generalized_bessel;
  cfg.params.eta = o.eta;
  cfg.params.alpha = o.alpha;
  cfg.n_samples = o.n_samples;
  cfg.seed = o.seed;
  cfg.n_bins = o.bins;
  cfg.workers = o.workers;
  const auto result = experiment::run_experiment(cfg);
  const std::string prefix = o.out.empty() ? default_out("sample") : o.out;
  io::write_samples_csv(result, prefix + "_samples.csv");
  io::write_summary_json(result, prefix + "_summary.json");
  std::cerr << "sampled " << result.n_samples << " matrices in "
            << result.elapsed_seconds << " s (workers=" << o.workers
            << "), KS(density)=" << result.gof_density.ks_distance
            << ", KS(spacing)=" << result.gof_spacing.ks_distance << "\n";
  return 0;
}

int cmd_twin_check(const Options& o) {
  if (!(o.eta >= 0.5 && o.eta <= 1.0)) {
    throw std::domain_error("twin-check requires eta in [1/2, 1]");
  }
  const auto g = io::parse_grid(o.grid);
  const double eta_hat = 2.0 * o.eta - 1.0;
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const double l1 = g.lo + (g.hi - g.lo) * i / (g.n - 1);
      const double l2 = g.lo + (g.hi - g.lo) * j / (g.n - 1) + 1e-3;
      worst = std::max(worst,
                       std::fabs(gaussian::jpd_eigen(l1, l2, o.eta) -
                                 gaussian::jpd_eigen_real_twin(l1, l2, eta_hat)));
    }
  }
  const bool pass = worst < 1e-12;
  nlohmann::json j;
  j["version"] = io::kVersion;
  j["eta"] = o.eta;
  j["eta_hat"] = eta_hat;
  j["grid"] = o.grid;
  j["max_abs_diff"] = worst;
  j["pass"] = pass;
  const std::string path =
      o.out.empty() ? default_out("twin_check.json") : o.out;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  std::cerr << "twin-check eta=" << o.eta << " eta_hat=" << eta_hat
            << " max|diff|=" << worst << (pass ? " pass" : " FAIL") << "\n";
  return pass ? 0 : kExitValidation;
}

int cmd_validate(const Options& o, bool weight_given) {
  validate::ValidateOptions vo;
  if (weight_given) {
    vo.gaussian = o.weight == "gaussian";
    vo.bessel = o.weight == "bessel";
  }
  vo.keta_fault_scale = o.fault_keta;
  const auto checks = validate::run_validation(vo);
  nlohmann::json j;
  j["version"] = io::kVersion;
  nlohmann::json items = nlohmann::json::array();
  int failures = 0;
  for (const auto& c : checks) {
    items.push_back({{"name", c.name},
                     {"pass", c.pass},
                     {"measured", c.measured},
                     {"threshold", c.threshold},
                     {"note", c.note}});
    if (!c.pass) {
      ++failures;
      std::cerr << "FAIL " << c.name << " measured=" << c.measured
                << " threshold=" << c.threshold << "\n";
    }
  }
  j["checks"] = items;
  j["failures"] = failures;
  const std::string path = o.out.empty() ? default_out("validate.json") : o.out;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  std::cerr << checks.size() - failures << "/" << checks.size()
            << " checks passed\n";
  return failures == 0 ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant 2x2 eta-ensembles: curves, sampling, validation"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--weight", o.weight, "gaussian | bessel")
        ->check(CLI::IsMember({"gaussian", "bessel"}));
    cmd->add_option("--eta", o.eta, "ensemble parameter");
    cmd->add_option("--alpha", o.alpha, "Bessel weight scale");
    cmd->add_option("--out", o.out, "output path (or prefix for sample)");
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* density = app.add_subcommand("density", "spectral density curve");
  add_common(density);
  density->add_option("--grid", o.grid, "lo:hi:n");
  density->add_option("--method", o.method, "bessel density route")
      ->check(CLI::IsMember({"direct", "reduced"}));

  auto* spacing = app.add_subcommand("spacing", "spacing law curve");
  add_common(spacing);
  spacing->add_option("--grid", o.grid, "lo:hi:n");

  auto* marginal = app.add_subcommand("marginal", "entry marginal curve");
  add_common(marginal);
  marginal->add_option("--grid", o.grid, "lo:hi:n");
  marginal->add_option("--k", o.marginal_k, "marginal order (1, 2 or 3)");
  marginal->add_option("--fix-y", o.fix_y, "conditioning y for k >= 2");
  marginal->add_option("--fix-t", o.fix_t, "conditioning t for k = 3");

  auto* sample = app.add_subcommand("sample", "seeded sampling experiment");
  add_common(sample);
  sample->add_option("--n", o.n_samples, "number of matrices");
  sample->add_option("--seed", o.seed, "RNG seed");
  sample->add_option("--bins", o.bins, "histogram bins");
  sample->add_option("--workers", o.workers, "worker threads");

  auto* twin = app.add_subcommand("twin-check", "unitary vs real-twin jpd");
  add_common(twin);
  twin->add_option("--grid", o.grid, "lo:hi:n");

  auto* validate_cmd = app.add_subcommand("validate", "invariant battery");
  add_common(validate_cmd);
  validate_cmd
      ->add_option("--fault-keta-scale", o.fault_keta,
                   "test hook: scale K_eta inside the battery")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (density->parsed()) return cmd_density(o);
    if (spacing->parsed()) return cmd_spacing(o);
    if (marginal->parsed()) return cmd_marginal(o);
    if (sample->parsed()) return cmd_sample(o);
    if (twin->parsed()) return cmd_twin_check(o);
    if (validate_cmd->parsed()) {
      return cmd_validate(o, validate_cmd->count("--weight") > 0);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
