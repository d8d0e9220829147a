#pragma once

// Machine-readable output: CSV curves with '#'-prefixed header comments and
// a column-name row, JSON summaries. Numeric fields are written with 17
// significant digits so values round-trip exactly.

#include <string>
#include <utility>
#include <vector>

#include "etaens/experiment.hpp"

namespace etaens::io {

inline constexpr const char* kVersion = "etaens 0.1.0";

// %.17g formatting
std::string fmt17(double v);

struct CurveFile {
  std::vector<std::pair<std::string, std::string>> header;  // key, value
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Writes via a temporary file and renames, so failures never leave partial
// output behind.
void write_curve_csv(const CurveFile& curve, const std::string& path);

// Raw sample rows (x, y, t, s, lambda1, lambda2, spacing). The header
// records the distribution-defining parameters and seed only; execution
// details like worker count do not change the bytes.
void write_samples_csv(const experiment::ExperimentResult& result,
                       const std::string& path);

// Histograms and goodness-of-fit summary as JSON (deterministic content).
void write_summary_json(const experiment::ExperimentResult& result,
                        const std::string& path);

// Grid helper shared with the CLI: parses "lo:hi:n".
struct GridSpec {
  double lo = 0.0, hi = 0.0;
  int n = 0;
};
GridSpec parse_grid(const std::string& text);

}  // namespace etaens::io
