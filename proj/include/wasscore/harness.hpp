#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wasscore/distances.hpp"
#include "wasscore/gbd.hpp"

namespace wasscore {

// ---- feature files ---------------------------------------------------------

enum class FeatureFormat { Csv, Fmat };
FeatureFormat feature_format_from_string(std::string_view name);
std::string_view to_string(FeatureFormat format);

// CSV: one sample per line, comma separated. A first row containing any
// non-numeric field is treated as a header and skipped.
FeatureMatrix parse_csv_features(std::string_view text);

// fmat: "FMAT", u32 LE N, u32 LE d, then N*d IEEE-754 float32 LE values,
// row-major.
FeatureMatrix parse_fmat_features(std::span<const unsigned char> bytes);
std::vector<unsigned char> encode_fmat(const FeatureMatrix& features);

// Throws IoError, ParseError (with row / byte position) or ShapeError.
FeatureMatrix load_features(const std::filesystem::path& path, FeatureFormat format);
void save_fmat(const std::filesystem::path& path, const FeatureMatrix& features);

// ---- runs ------------------------------------------------------------------

enum class Strategy { Gbd, KMedoids, KCenters, Random, Oracle };
enum class WarmStart { KCenters, KMedoids, Random };
Strategy strategy_from_string(std::string_view name);
std::string_view to_string(Strategy strategy);
WarmStart warm_start_from_string(std::string_view name);
std::string_view to_string(WarmStart warm_start);

struct RunConfig {
  std::string input_path;
  FeatureFormat format = FeatureFormat::Csv;
  Metric metric = Metric::Euclidean;
  Strategy strategy = Strategy::Gbd;
  std::vector<std::size_t> rounds;  // new points per round
  GbdConfig gbd;
  WarmStart warm_start = WarmStart::KCenters;
  // Per-round GBD wall-clock budget; unset splits gbd.total_time_limit_s
  // evenly over the rounds still to run.
  std::optional<double> round_time_limit_s;
  std::string output_dir;
  std::uint64_t seed = 0;

  // Throws InvalidArgument when budgets are non-positive or exceed n.
  void validate(std::size_t n) const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

struct RoundReport {
  int round = 0;
  std::size_t budget = 0;  // cumulative selection size after this round
  std::vector<int> selected;
  double wasserstein = 0.0;
  double elapsed_s = 0.0;
  std::string status;
  std::optional<BoundsTrace> trace;  // GBD rounds only
};

struct Report {
  std::vector<RoundReport> rounds;
  nlohmann::json config_echo;
  std::optional<std::string> error;
};

// W(C(pi), D) for an explicit index list. Throws IndexOutOfRange / DuplicateIndex.
double evaluate_selection(const DistanceMatrix& dist, std::span<const int> indices);

// Sequential rounds: round r selects (sum of budgets up to r) points with every
// earlier pick fixed. Writes report.json and trace CSVs when output_dir is set;
// on a failing round the partial report is flushed before rethrowing.
Report run_rounds(const RunConfig& config);
Report run_rounds(const DistanceMatrix& dist, const RunConfig& config);

nlohmann::json report_to_json(const Report& report);
std::string trace_to_csv(const BoundsTrace& trace);
void write_report(const Report& report, const std::filesystem::path& dir);

}  // namespace wasscore
