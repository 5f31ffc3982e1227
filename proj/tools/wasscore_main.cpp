#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wasscore/baselines.hpp"
#include "wasscore/error.hpp"
#include "wasscore/harness.hpp"
#include "wasscore/oracle.hpp"

namespace {

using namespace wasscore;

struct InputFlags {
  std::string input;
  std::string format = "csv";
  std::string metric = "euclidean";

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "Feature file (csv or fmat)")->required();
    cmd->add_option("--format", format, "Input format")->check(CLI::IsMember({"csv", "fmat"}));
    cmd->add_option("--metric", metric, "Base metric")
        ->check(CLI::IsMember({"euclidean", "cosine"}));
  }

  DistanceMatrix load() const {
    const FeatureMatrix features = load_features(input, feature_format_from_string(format));
    return compute_distance_matrix(features, metric_from_string(metric));
  }
};

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw Error(ErrorCode::ParseError, "'" + item + "' is not an integer index");
    }
    out.push_back(value);
  }
  return out;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein core-set selection"};
  app.require_subcommand(1);

  // select
  CLI::App* select = app.add_subcommand("select", "Run budgeted selection over one or more rounds");
  InputFlags select_in;
  std::string config_path;
  std::size_t budget = 0;
  std::vector<std::size_t> rounds;
  std::string strategy = "gbd";
  RunConfig defaults;
  double epsilon = defaults.gbd.epsilon;
  double time_limit = defaults.gbd.total_time_limit_s;
  double master_time_limit = defaults.gbd.master_time_limit_s;
  double master_gap = defaults.gbd.master_gap_tol;
  double beta_plus = defaults.gbd.beta_plus;
  double beta_minus = defaults.gbd.beta_minus;
  double round_time_limit = 0.0;
  bool no_eoc = false;
  bool pruning = false;
  std::string cut_mode = "corrected";
  std::string warm_start = "kcenters";
  std::uint64_t seed = 0;
  std::string out_dir;

  select->add_option("--config", config_path, "JSON run config; flags given explicitly override it");
  select->add_option("--input", select_in.input, "Feature file (csv or fmat)");
  select->add_option("--format", select_in.format, "Input format")
      ->check(CLI::IsMember({"csv", "fmat"}));
  select->add_option("--metric", select_in.metric, "Base metric")
      ->check(CLI::IsMember({"euclidean", "cosine"}));
  auto* budget_opt = select->add_option("--budget", budget, "Single-round budget");
  auto* rounds_opt = select->add_option("--rounds", rounds, "Per-round budgets, e.g. 10,10,20")
                         ->delimiter(',');
  budget_opt->excludes(rounds_opt);
  select->add_option("--strategy", strategy, "Selection strategy")
      ->check(CLI::IsMember({"gbd", "kmedoids", "kcenters", "random", "oracle"}));
  select->add_option("--epsilon", epsilon, "Stop once UB - LB < epsilon");
  select->add_option("--time-limit", time_limit, "Total GBD wall-clock budget in seconds");
  select->add_option("--round-time-limit", round_time_limit, "Per-round GBD budget in seconds");
  select->add_option("--master-time-limit", master_time_limit, "Per master solve, seconds");
  select->add_option("--master-gap", master_gap, "Relative gap tolerance per master solve");
  select->add_option("--beta-plus", beta_plus, "Pruning radius around good selections");
  select->add_option("--beta-minus", beta_minus, "Pruning radius around poor selections");
  select->add_flag("--no-eoc", no_eoc, "Benders cuts only");
  select->add_flag("--pruning", pruning, "Enable Hamming-ball pruning constraints");
  select->add_option("--cut-mode", cut_mode, "Cut coefficients")
      ->check(CLI::IsMember({"corrected", "paper-literal"}));
  select->add_option("--warm-start", warm_start, "Initial GBD selection")
      ->check(CLI::IsMember({"kcenters", "kmedoids", "random"}));
  select->add_option("--seed", seed, "Random seed");
  select->add_option("--out", out_dir, "Output directory for report.json and trace CSVs");

  // eval
  CLI::App* eval = app.add_subcommand("eval", "Wasserstein distance of a given selection");
  InputFlags eval_in;
  eval_in.attach(eval);
  std::string indices_text;
  std::string report_path;
  auto* idx_opt = eval->add_option("--indices", indices_text, "Comma-separated indices");
  auto* rep_opt = eval->add_option("--report", report_path, "Re-evaluate every round of a report");
  idx_opt->excludes(rep_opt);

  // oracle
  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum for small pools");
  InputFlags oracle_in;
  oracle_in.attach(oracle);
  std::size_t oracle_budget = 0;
  std::string fixed_text;
  oracle->add_option("--budget", oracle_budget, "Selection size")->required();
  oracle->add_option("--fixed", fixed_text, "Comma-separated indices that must be selected");

  // baseline
  CLI::App* baseline = app.add_subcommand("baseline", "Single-shot heuristic selection");
  InputFlags baseline_in;
  baseline_in.attach(baseline);
  std::size_t baseline_budget = 0;
  std::string baseline_strategy = "kmedoids";
  std::uint64_t baseline_seed = 0;
  baseline->add_option("--budget", baseline_budget, "Selection size")->required();
  baseline->add_option("--strategy", baseline_strategy, "Heuristic")
      ->check(CLI::IsMember({"kmedoids", "kcenters", "random"}));
  baseline->add_option("--seed", baseline_seed, "Random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (select->parsed()) {
      RunConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw Error(ErrorCode::IoError, "cannot open " + config_path);
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorCode::ParseError, std::string("run config: ") + e.what());
        }
        config = RunConfig::from_json(j);
      }
      auto given = [&](const char* name) { return select->count(name) > 0; };
      if (given("--input")) config.input_path = select_in.input;
      if (given("--format")) config.format = feature_format_from_string(select_in.format);
      if (given("--metric")) config.metric = metric_from_string(select_in.metric);
      if (given("--budget")) config.rounds = {budget};
      if (given("--rounds")) config.rounds = rounds;
      if (given("--strategy")) config.strategy = strategy_from_string(strategy);
      if (given("--epsilon")) config.gbd.epsilon = epsilon;
      if (given("--time-limit")) config.gbd.total_time_limit_s = time_limit;
      if (given("--round-time-limit")) config.round_time_limit_s = round_time_limit;
      if (given("--master-time-limit")) config.gbd.master_time_limit_s = master_time_limit;
      if (given("--master-gap")) config.gbd.master_gap_tol = master_gap;
      if (given("--beta-plus")) config.gbd.beta_plus = beta_plus;
      if (given("--beta-minus")) config.gbd.beta_minus = beta_minus;
      if (no_eoc) config.gbd.use_eoc = false;
      if (pruning) config.gbd.use_pruning = true;
      if (given("--cut-mode")) config.gbd.cut_mode = cut_mode_from_string(cut_mode);
      if (given("--warm-start")) config.warm_start = warm_start_from_string(warm_start);
      if (given("--seed")) config.seed = seed;
      if (given("--out")) config.output_dir = out_dir;
      config.gbd.seed = config.seed;
      if (config.input_path.empty()) {
        throw Error(ErrorCode::InvalidArgument, "--input (or \"input\" in --config) is required");
      }
      print_json(report_to_json(run_rounds(config)));
    } else if (eval->parsed()) {
      const DistanceMatrix dist = eval_in.load();
      if (!report_path.empty()) {
        std::ifstream in(report_path);
        if (!in) throw Error(ErrorCode::IoError, "cannot open " + report_path);
        const nlohmann::json report = nlohmann::json::parse(in);
        nlohmann::json out = nlohmann::json::array();
        for (const auto& round : report.at("rounds")) {
          const auto sel = round.at("selected").get<std::vector<int>>();
          const double w = evaluate_selection(dist, sel);
          const double declared = round.at("wasserstein").get<double>();
          out.push_back({{"round", round.at("round")},
                         {"wasserstein", w},
                         {"declared", declared},
                         {"abs_diff", std::abs(w - declared)}});
        }
        print_json({{"rounds", out}});
      } else {
        if (indices_text.empty()) throw Error(ErrorCode::InvalidArgument, "--indices or --report is required");
        const double w = evaluate_selection(dist, parse_index_list(indices_text));
        print_json({{"wasserstein", w}});
      }
    } else if (oracle->parsed()) {
      const DistanceMatrix dist = oracle_in.load();
      const OracleResult res = brute_force_optimum(dist, oracle_budget, parse_index_list(fixed_text));
      print_json({{"wasserstein", res.w_star}, {"selected", res.sel_star.indices()}});
    } else if (baseline->parsed()) {
      const DistanceMatrix dist = baseline_in.load();
      Selection sel = Selection::all(dist.n());
      if (baseline_strategy == "kmedoids") {
        sel = kmedoids_select(dist, baseline_budget, baseline_seed);
      } else if (baseline_strategy == "kcenters") {
        sel = kcenters_select(dist, baseline_budget, {}, baseline_seed);
      } else {
        sel = random_select(dist.n(), baseline_budget, {}, baseline_seed);
      }
      print_json({{"strategy", baseline_strategy},
                  {"selected", sel.indices()},
                  {"wasserstein", evaluate_selection(dist, sel.indices())}});
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
