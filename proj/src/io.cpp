#include "etaens/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace etaens::io {

namespace {

std::string weight_name(Weight w) {
  return w == Weight::gaussian ? "gaussian" : "bessel";
}

class AtomicFile {
 public:
  explicit AtomicFile(const std::string& path)
      : path_(path), tmp_(path + ".tmp"), out_(tmp_, std::ios::binary) {
    if (!out_) {
      throw std::runtime_error("cannot open output file: " + tmp_);
    }
  }
  std::ofstream& stream() { return out_; }
  void commit() {
    out_.close();
    if (!out_) {
      std::filesystem::remove(tmp_);
      throw std::runtime_error("write failed: " + path_);
    }
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }
  ~AtomicFile() {
    if (!committed_) {
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

 private:
  std::string path_, tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_curve_csv(const CurveFile& curve, const std::string& path) {
  AtomicFile file(path);
  auto& out = file.stream();
  out << "# " << kVersion << "\n";
  for (const auto& [k, v] : curve.header) {
    out << "# " << k << ": " << v << "\n";
  }
  for (std::size_t i = 0; i < curve.columns.size(); ++i) {
    out << (i ? "," : "") << curve.columns[i];
  }
  out << "\n";
  for (const auto& row : curve.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << fmt17(row[i]);
    }
    out << "\n";
  }
  file.commit();
}

void write_samples_csv(const experiment::ExperimentResult& result,
                       const std::string& path) {
  AtomicFile file(path);
  auto& out = file.stream();
  out << "# " << kVersion << "\n";
  out << "# command: sample\n";
  out << "# weight: " << weight_name(result.params.weight) << "\n";
  out << "# eta: " << fmt17(result.params.eta) << "\n";
  out << "# alpha: " << fmt17(result.params.alpha) << "\n";
  out << "# n_samples: " << result.n_samples << "\n";
  out << "# seed: " << result.seed << "\n";
  out << "x,y,t,s,lambda1,lambda2,spacing\n";
  for (const auto& r : result.samples) {
    out << fmt17(r.x) << ',' << fmt17(r.y) << ',' << fmt17(r.t) << ','
        << fmt17(r.s) << ',' << fmt17(r.lambda1) << ',' << fmt17(r.lambda2)
        << ',' << fmt17(r.spacing) << "\n";
  }
  file.commit();
}

namespace {

nlohmann::json histogram_json(const stats::Histogram& h) {
  return nlohmann::json{{"bin_edges", h.bin_edges},
                        {"counts", h.counts},
                        {"total", h.total},
                        {"normalized_heights", h.normalized_heights},
                        {"n_underflow", h.n_underflow},
                        {"n_overflow", h.n_overflow}};
}

nlohmann::json gof_json(const stats::GofStats& g) {
  return nlohmann::json{{"ks_distance", g.ks_distance},
                        {"sup_norm_vs_curve", g.sup_norm_vs_curve},
                        {"n", g.n}};
}

}  // namespace

void write_summary_json(const experiment::ExperimentResult& result,
                        const std::string& path) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["params"] = {{"weight", weight_name(result.params.weight)},
                 {"eta", result.params.eta},
                 {"alpha", result.params.alpha}};
  j["n_samples"] = result.n_samples;
  j["seed"] = result.seed;
  j["eigen_histogram"] = histogram_json(result.eigen_histogram);
  j["spacing_histogram"] = histogram_json(result.spacing_histogram);
  j["gof_density"] = gof_json(result.gof_density);
  j["gof_spacing"] = gof_json(result.gof_spacing);
  AtomicFile file(path);
  file.stream() << j.dump(2) << "\n";
  file.commit();
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument("grid must have the form lo:hi:n");
  }
  try {
    g.lo = std::stod(text.substr(0, c1));
    g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.n = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must have the form lo:hi:n");
  }
  if (!(g.lo < g.hi) || g.n < 2) {
    throw std::invalid_argument("grid requires lo < hi and n >= 2");
  }
  return g;
}

}  // namespace etaens::io
