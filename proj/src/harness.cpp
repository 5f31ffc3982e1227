#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wasscore/baselines.hpp"
#include "wasscore/error.hpp"
#include "wasscore/harness.hpp"
#include "wasscore/oracle.hpp"
#include "wasscore/transport.hpp"

namespace wasscore {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Selection warm_start_for(const DistanceMatrix& dist, std::size_t budget,
                         const std::vector<int>& fixed_one, WarmStart kind, std::uint64_t seed) {
  switch (kind) {
    case WarmStart::KMedoids:
      return kmedoids_select(dist, budget, seed, fixed_one);
    case WarmStart::Random:
      return random_select(dist.n(), budget, fixed_one, seed);
    case WarmStart::KCenters:
      break;
  }
  return kcenters_select(dist, budget, fixed_one, seed);
}

}  // namespace

Strategy strategy_from_string(std::string_view name) {
  if (name == "gbd") return Strategy::Gbd;
  if (name == "kmedoids") return Strategy::KMedoids;
  if (name == "kcenters") return Strategy::KCenters;
  if (name == "random") return Strategy::Random;
  if (name == "oracle") return Strategy::Oracle;
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Gbd: return "gbd";
    case Strategy::KMedoids: return "kmedoids";
    case Strategy::KCenters: return "kcenters";
    case Strategy::Random: return "random";
    case Strategy::Oracle: return "oracle";
  }
  return "gbd";
}

WarmStart warm_start_from_string(std::string_view name) {
  if (name == "kcenters") return WarmStart::KCenters;
  if (name == "kmedoids") return WarmStart::KMedoids;
  if (name == "random") return WarmStart::Random;
  throw Error(ErrorCode::InvalidArgument, "unknown warm start '" + std::string(name) + "'");
}

std::string_view to_string(WarmStart warm_start) {
  switch (warm_start) {
    case WarmStart::KMedoids: return "kmedoids";
    case WarmStart::Random: return "random";
    case WarmStart::KCenters: break;
  }
  return "kcenters";
}

void RunConfig::validate(std::size_t n) const {
  if (rounds.empty()) throw Error(ErrorCode::InvalidArgument, "at least one round is required");
  std::size_t total = 0;
  for (const std::size_t b : rounds) {
    if (b == 0) throw Error(ErrorCode::InvalidArgument, "round budgets must be positive");
    total += b;
  }
  if (total > n) {
    throw Error(ErrorCode::InvalidArgument, "cumulative budget " + std::to_string(total) +
                                                " exceeds pool size " + std::to_string(n));
  }
  if (round_time_limit_s && *round_time_limit_s <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "round time limit must be positive");
  }
  gbd.validate();
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json g = {
      {"epsilon", gbd.epsilon},
      {"time_limit_s", gbd.total_time_limit_s},
      {"master_time_limit_s", gbd.master_time_limit_s},
      {"master_gap", gbd.master_gap_tol},
      {"eoc", gbd.use_eoc},
      {"pruning", gbd.use_pruning},
      {"beta_plus", gbd.beta_plus},
      {"beta_minus", gbd.beta_minus},
      {"cut_mode", std::string(to_string(gbd.cut_mode))},
      {"dual_ineq_guard", gbd.dual_ineq_guard},
  };
  nlohmann::json j = {
      {"input", input_path},
      {"format", std::string(to_string(format))},
      {"metric", std::string(to_string(metric))},
      {"strategy", std::string(to_string(strategy))},
      {"rounds", rounds},
      {"gbd", g},
      {"warm_start", std::string(to_string(warm_start))},
      {"output_dir", output_dir},
      {"seed", seed},
  };
  j["round_time_limit_s"] = round_time_limit_s ? nlohmann::json(*round_time_limit_s) : nlohmann::json();
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (j.contains("input")) c.input_path = j.at("input").get<std::string>();
    if (j.contains("format")) c.format = feature_format_from_string(j.at("format").get<std::string>());
    if (j.contains("metric")) c.metric = metric_from_string(j.at("metric").get<std::string>());
    if (j.contains("strategy")) c.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    if (j.contains("rounds")) c.rounds = j.at("rounds").get<std::vector<std::size_t>>();
    if (j.contains("warm_start")) {
      c.warm_start = warm_start_from_string(j.at("warm_start").get<std::string>());
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("round_time_limit_s") && !j.at("round_time_limit_s").is_null()) {
      c.round_time_limit_s = j.at("round_time_limit_s").get<double>();
    }
    if (j.contains("gbd")) {
      const auto& g = j.at("gbd");
      c.gbd.epsilon = g.value("epsilon", c.gbd.epsilon);
      c.gbd.total_time_limit_s = g.value("time_limit_s", c.gbd.total_time_limit_s);
      c.gbd.master_time_limit_s = g.value("master_time_limit_s", c.gbd.master_time_limit_s);
      c.gbd.master_gap_tol = g.value("master_gap", c.gbd.master_gap_tol);
      c.gbd.use_eoc = g.value("eoc", c.gbd.use_eoc);
      c.gbd.use_pruning = g.value("pruning", c.gbd.use_pruning);
      c.gbd.beta_plus = g.value("beta_plus", c.gbd.beta_plus);
      c.gbd.beta_minus = g.value("beta_minus", c.gbd.beta_minus);
      c.gbd.dual_ineq_guard = g.value("dual_ineq_guard", c.gbd.dual_ineq_guard);
      if (g.contains("cut_mode")) c.gbd.cut_mode = cut_mode_from_string(g.at("cut_mode").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("run config: ") + e.what());
  }
  c.gbd.seed = c.seed;
  return c;
}

double evaluate_selection(const DistanceMatrix& dist, std::span<const int> indices) {
  const Selection sel = Selection::from_indices(dist.n(), indices);
  return 4 * sel.budget() <= dist.n() ? wasserstein_reduced(dist, sel).value
                                      : wasserstein(dist, sel).value;
}

Report run_rounds(const RunConfig& config) {
  const FeatureMatrix features = load_features(config.input_path, config.format);
  return run_rounds(compute_distance_matrix(features, config.metric), config);
}

Report run_rounds(const DistanceMatrix& dist, const RunConfig& config) {
  config.validate(dist.n());
  const auto run_start = Clock::now();
  Report report;
  report.config_echo = config.to_json();

  std::vector<int> fixed;
  std::size_t cumulative = 0;
  const std::size_t n_rounds = config.rounds.size();
  for (std::size_t r = 0; r < n_rounds; ++r) {
    const auto round_start = Clock::now();
    cumulative += config.rounds[r];
    const std::uint64_t seed = config.seed + r;
    RoundReport round;
    round.round = static_cast<int>(r) + 1;
    round.budget = cumulative;
    try {
      Selection chosen = Selection::all(dist.n());
      switch (config.strategy) {
        case Strategy::Gbd: {
          GbdConfig g = config.gbd;
          g.seed = seed;
          if (config.round_time_limit_s) {
            g.total_time_limit_s = *config.round_time_limit_s;
          } else {
            const double left = config.gbd.total_time_limit_s - seconds_since(run_start);
            g.total_time_limit_s = std::max(left, 1e-3) / static_cast<double>(n_rounds - r);
          }
          const Selection warm = warm_start_for(dist, cumulative, fixed, config.warm_start, seed);
          GbdResult res = select_coreset(dist, cumulative, fixed, warm, g);
          chosen = res.best;
          round.status = std::string(to_string(res.status));
          round.trace = std::move(res.trace);
          break;
        }
        case Strategy::KMedoids:
          chosen = kmedoids_select(dist, cumulative, seed, fixed);
          round.status = "heuristic";
          break;
        case Strategy::KCenters:
          chosen = kcenters_select(dist, cumulative, fixed, seed);
          round.status = "heuristic";
          break;
        case Strategy::Random:
          chosen = random_select(dist.n(), cumulative, fixed, seed);
          round.status = "heuristic";
          break;
        case Strategy::Oracle:
          chosen = brute_force_optimum(dist, cumulative, fixed).sel_star;
          round.status = "optimal";
          break;
      }
      round.selected = chosen.indices();
      round.wasserstein = evaluate_selection(dist, round.selected);
    } catch (const std::exception& e) {
      report.error = "round " + std::to_string(r + 1) + ": " + e.what();
      if (!config.output_dir.empty()) write_report(report, config.output_dir);
      throw;
    }
    round.elapsed_s = seconds_since(round_start);
    fixed = round.selected;
    report.rounds.push_back(std::move(round));
  }
  if (!config.output_dir.empty()) write_report(report, config.output_dir);
  return report;
}

nlohmann::json report_to_json(const Report& report) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const RoundReport& r : report.rounds) {
    rounds.push_back({{"round", r.round},
                      {"budget", r.budget},
                      {"selected", r.selected},
                      {"wasserstein", r.wasserstein},
                      {"elapsed_s", r.elapsed_s},
                      {"status", r.status}});
  }
  nlohmann::json j = {{"rounds", rounds}, {"config_echo", report.config_echo}};
  if (report.error) j["error"] = *report.error;
  return j;
}

std::string trace_to_csv(const BoundsTrace& trace) {
  std::ostringstream out;
  out << "iter,lb,ub,incumbent_w,elapsed_s\n";
  for (const BoundsRow& row : trace.rows) {
    out << row.iteration << ',' << format_double(row.lower_bound) << ','
        << format_double(row.upper_bound) << ',' << format_double(row.incumbent_w) << ','
        << format_double(row.elapsed_s) << '\n';
  }
  return out.str();
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
  };
  write(dir / "report.json", report_to_json(report).dump(2) + "\n");
  for (const RoundReport& r : report.rounds) {
    if (r.trace) write(dir / ("trace_round_" + std::to_string(r.round) + ".csv"), trace_to_csv(*r.trace));
  }
}

}  // namespace wasscore
