// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/assignment_oracle.hpp"
#include "support/dense_lp_oracle.hpp"
#include "support/instances.hpp"
#include "support/transport_checks.hpp"
#include "wasscore/baselines.hpp"
#include "wasscore/cuts.hpp"
#include "wasscore/gbd.hpp"
#include "wasscore/harness.hpp"
#include "wasscore/oracle.hpp"
#include "wasscore/transport.hpp"

using namespace wasscore;
namespace ts = testing_support;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct TraceCheck {
  int runs = 0;
  int lb_decrease = 0;
  int ub_increase = 0;
  int bracket_miss = 0;
  int brackets_checked = 0;

  void add(const BoundsTrace& trace, const double* w_star) {
    ++runs;
    for (std::size_t k = 0; k < trace.rows.size(); ++k) {
      const BoundsRow& r = trace.rows[k];
      if (k > 0 && r.lower_bound < trace.rows[k - 1].lower_bound) ++lb_decrease;
      if (k > 0 && r.upper_bound > trace.rows[k - 1].upper_bound) ++ub_increase;
      if (w_star) {
        ++brackets_checked;
        if (r.lower_bound > *w_star + 1e-9 || r.upper_bound < *w_star - 1e-9) ++bracket_miss;
      }
    }
  }
};

TraceCheck traces;

// ---- 1 ---------------------------------------------------------------------

void oracle_optimality() {
  std::mt19937_64 rng(20240601);
  int converged = 0, matched = 0, fast = 0;
  double worst_rel = 0.0, slowest = 0.0;
  const int instances = 100;
  for (int k = 0; k < instances; ++k) {
    const std::size_t n = 6 + rng() % 7;
    const std::size_t b = 2 + rng() % 2;
    const DistanceMatrix d = ts::gaussian_instance(n, 3, 1000 + static_cast<std::uint64_t>(k));
    const double w_star = brute_force_optimum(d, b, {}).w_star;

    RunConfig c;
    c.strategy = Strategy::Gbd;
    c.rounds = {b};
    c.gbd.cut_mode = CutMode::Corrected;
    c.gbd.use_pruning = false;
    c.gbd.total_time_limit_s = 5.0;
    c.seed = static_cast<std::uint64_t>(k);
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = run_rounds(d, c);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const RoundReport& round = r.rounds.front();
    const BoundsRow& last = round.trace->rows.back();
    const double rel = std::abs(round.wasserstein - w_star) / std::max(w_star, 1e-12);
    converged += round.status == "converged" && last.upper_bound - last.lower_bound < 1e-3;
    matched += rel <= 1e-6;
    fast += secs < 5.0;
    worst_rel = std::max(worst_rel, rel);
    slowest = std::max(slowest, secs);
    traces.add(*round.trace, &w_star);
  }
  report(1, "oracle optimality",
         converged == instances && matched == instances && fast == instances,
         fmt("%d/%d converged, %d/%d within 1e-6 of the oracle (worst rel %.2e), %d/%d under 5 s "
             "(slowest %.3f s)",
             converged, instances, matched, instances, worst_rel, fast, instances, slowest));
}

// ---- 2 ---------------------------------------------------------------------

void transport_exactness() {
  std::mt19937_64 rng(77);
  const int small = 500;
  int agree = 0;
  double worst = 0.0;
  for (int k = 0; k < small; ++k) {
    const std::size_t n = 2 + rng() % 5;
    const std::size_t b = 1 + rng() % n;
    const DistanceMatrix d = ts::gaussian_instance(n, 1 + rng() % 4, 5000 + static_cast<std::uint64_t>(k));
    const Selection sel = Selection::from_indices(n, ts::random_subset(n, b, rng));
    const double lp = ts::dense_lp_wasserstein(d.entries(), n, sel.indices());
    const double assign = ts::reference_wasserstein(d.entries(), n, sel.indices());
    const double w = wasserstein(d, sel).value;
    const double err = std::max(std::abs(w - lp), std::abs(w - assign));
    worst = std::max(worst, err);
    agree += err <= 1e-7;
  }

  int kkt_ok = 0, kkt_runs = 0;
  double worst_kkt = 0.0;
  for (const std::size_t n : {8, 20, 50, 120, 300, 700, 1200, 2000}) {
    for (int rep = 0; rep < 2; ++rep) {
      const DistanceMatrix d = ts::gaussian_instance(n, 8, 9000 + n + static_cast<std::size_t>(rep));
      const std::size_t b = 1 + rng() % std::max<std::size_t>(1, n / 3);
      const Selection sel = Selection::from_indices(n, ts::random_subset(n, b, rng));
      for (const bool reduced : {false, true}) {
        if (!reduced && n > 1200) continue;  // full N x N network on the largest pool is covered reduced
        const TransportSolution sol = reduced ? wasserstein_reduced(d, sel) : wasserstein(d, sel);
        const auto kkt = ts::check_kkt(d, sel, sol);
        ++kkt_runs;
        kkt_ok += kkt.ok(1e-9);
        worst_kkt = std::max({worst_kkt, kkt.primal_residual, kkt.dual_violation, kkt.slackness_gap,
                              kkt.objective_gap});
      }
    }
  }
  report(2, "transport exactness", agree == small && kkt_ok == kkt_runs,
         fmt("%d/%d small instances match the dense-LP and assignment references (worst %.2e); "
             "KKT conditions hold on %d/%d solves up to N = 2000 (worst residual %.2e)",
             agree, small, worst, kkt_ok, kkt_runs, worst_kkt));
}

// ---- 3 ---------------------------------------------------------------------

void cut_validity() {
  std::mt19937_64 rng(31337);
  int violations = 0;
  long checked = 0;
  int dual_ineq_violations = 0;
  const int instances = 100;
  for (int k = 0; k < instances; ++k) {
    const std::size_t n = 5 + rng() % 4;
    const std::size_t b = 1 + rng() % 3;
    const DistanceMatrix d = ts::gaussian_instance(n, 3, 3000 + static_cast<std::uint64_t>(k));
    const OracleResult o = brute_force_optimum(d, b, {}, true);
    const Cut lb = lower_bound_cut(d, b, CutMode::Corrected);
    ++checked;
    violations += !lb.satisfied(o.w_star, o.sel_star);
    for (const auto& [idx, w_hat] : *o.all_values) {
      const Selection hat = Selection::from_indices(n, idx);
      const TransportSolution sol = wasserstein(d, hat);
      const Cut cuts[] = {benders_cut(sol, hat, n), triangle_cut(d, hat, w_hat, CutMode::Corrected)};
      for (const Cut& c : cuts) {
        ++checked;
        violations += !c.satisfied(o.w_star, o.sel_star);
      }
      dual_ineq_violations += !dual_ineq_cut(d, sol, hat).satisfied(o.w_star, o.sel_star);
    }
  }
  const std::vector<double> pair{0.0, 2.0};
  const DistanceMatrix two = line_distances(pair);
  const OracleResult two_opt = brute_force_optimum(two, 1, {});
  const Cut literal = lower_bound_cut(two, 1, CutMode::PaperLiteral);
  const bool literal_violated = !literal.satisfied(two_opt.w_star, two_opt.sel_star);
  report(3, "cut validity", violations == 0 && literal_violated,
         fmt("%d violations over %ld Benders / corrected LowerBound / corrected Triangle cuts on %d "
             "instances; literal LowerBound on the two-point pair gives %.3f > W* = %.3f (expected "
             "failure %s); informational: %d DualIneq cuts violated at the optimum",
             violations, checked, instances, literal.evaluate(two_opt.sel_star), two_opt.w_star,
             literal_violated ? "reproduced" : "NOT reproduced", dual_ineq_violations));
}

// ---- 5 and 7 ---------------------------------------------------------------

struct ScaleRun {
  std::uint64_t seed;
  std::size_t budget;
  double kmedoids_w;
  double gbd_full;
  double gbd_quarter;
};

std::vector<ScaleRun> scale_runs;

RunConfig scale_config(std::size_t budget, double seconds, std::uint64_t seed) {
  RunConfig c;
  c.strategy = Strategy::Gbd;
  c.rounds = {budget};
  c.gbd.use_eoc = true;
  c.gbd.total_time_limit_s = seconds;
  c.gbd.master_time_limit_s = 5.0;
  c.seed = seed;
  return c;
}

void desk_scale_runs() {
  for (const std::size_t budget : {60, 120}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const FeatureMatrix f = ts::mixture_features(2000, 16, 10, 4.0, seed);
      const DistanceMatrix d = compute_distance_matrix(f, Metric::Euclidean);
      ScaleRun run{seed, budget, 0.0, 0.0, 0.0};
      run.kmedoids_w = evaluate_selection(d, kmedoids_select(d, budget, seed).indices());
      const Report full = run_rounds(d, scale_config(budget, 60.0, seed));
      run.gbd_full = full.rounds.front().wasserstein;
      traces.add(*full.rounds.front().trace, nullptr);
      const Report quarter = run_rounds(d, scale_config(budget, 15.0, seed));
      run.gbd_quarter = quarter.rounds.front().wasserstein;
      traces.add(*quarter.rounds.front().trace, nullptr);
      std::printf("  N=2000 B=%zu seed=%llu: k-medoids %.5f, GBD 60 s %.5f, GBD 15 s %.5f\n", budget,
                  static_cast<unsigned long long>(seed), run.kmedoids_w, run.gbd_full, run.gbd_quarter);
      std::fflush(stdout);
      scale_runs.push_back(run);
    }
  }
}

void heuristic_dominance() {
  bool pass = true;
  std::string detail;
  for (const std::size_t budget : {60, 120}) {
    int wins = 0;
    for (const ScaleRun& r : scale_runs) {
      if (r.budget == budget) wins += r.gbd_full <= r.kmedoids_w;
    }
    pass = pass && wins >= 4;
    detail += fmt("B=%zu: GBD <= k-medoids in %d/5 seeds; ", budget, wins);
  }
  report(5, "heuristic dominance", pass, detail.substr(0, detail.size() - 2));
}

void early_termination() {
  int ok = 0;
  double worst = 0.0;
  for (const ScaleRun& r : scale_runs) {
    const double rel = (r.gbd_quarter - r.gbd_full) / r.gbd_full;
    worst = std::max(worst, rel);
    ok += rel <= 0.25;
  }
  report(7, "early termination", ok == static_cast<int>(scale_runs.size()),
         fmt("%d/%zu runs at 25%% budget within 25%% of the full-budget incumbent (worst %+.2f%%)", ok,
             scale_runs.size(), 100.0 * worst));
}

// ---- 4 ---------------------------------------------------------------------

void bound_discipline() {
  // A few extra runs with every cut family, pruning and the literal cut mode.
  std::mt19937_64 rng(404);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 6 + rng() % 6;
    const std::size_t b = 2 + rng() % 2;
    const DistanceMatrix d = ts::gaussian_instance(n, 3, 4000 + static_cast<std::uint64_t>(k));
    const double w_star = brute_force_optimum(d, b, {}).w_star;
    GbdConfig c;
    c.total_time_limit_s = 5.0;
    c.use_eoc = k % 2 == 0;
    const GbdResult r = select_coreset(d, b, {}, kcenters_select(d, b, {}, 0), c);
    traces.add(r.trace, &w_star);
    c.use_pruning = true;
    const GbdResult p = select_coreset(d, b, {}, kcenters_select(d, b, {}, 0), c);
    traces.add(p.trace, nullptr);  // pruning is heuristic: LB need not bracket W*
  }
  const bool pass = traces.lb_decrease == 0 && traces.ub_increase == 0 && traces.bracket_miss == 0;
  report(4, "bound discipline", pass,
         fmt("%d traces: %d LB decreases, %d UB increases, %d/%d rows outside LB <= W* <= UB", traces.runs,
             traces.lb_decrease, traces.ub_increase, traces.bracket_miss, traces.brackets_checked));
}

// ---- 6 ---------------------------------------------------------------------

void reduced_equivalence() {
  std::mt19937_64 rng(606);
  const int instances = 200;
  int ok = 0;
  double worst_gap = 0.0, worst_dual = 0.0;
  for (int k = 0; k < instances; ++k) {
    const std::size_t n = 4 + rng() % 197;
    const std::size_t b = 1 + rng() % (n / 4);
    const DistanceMatrix d = ts::gaussian_instance(n, 1 + rng() % 8, 6000 + static_cast<std::uint64_t>(k));
    const Selection sel = Selection::from_indices(n, ts::random_subset(n, b, rng));
    const TransportSolution full = wasserstein(d, sel);
    const TransportSolution red = wasserstein_reduced(d, sel);
    double dual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) dual = std::max(dual, red.mu[i] - red.lambda[j] - d(i, j));
    }
    const double gap = std::abs(full.value - red.value);
    worst_gap = std::max(worst_gap, gap);
    worst_dual = std::max(worst_dual, dual);
    ok += gap <= 1e-7 && dual <= 1e-9;
  }
  report(6, "reduced-solve equivalence", ok == instances,
         fmt("%d/%d instances: worst |reduced - full| %.2e, worst dual violation %.2e", ok, instances,
             worst_gap, worst_dual));
}

// ---- 8 ---------------------------------------------------------------------

nlohmann::json strip_timing(nlohmann::json j) {
  for (auto& r : j["rounds"]) r.erase("elapsed_s");
  return j;
}

void determinism_and_nesting() {
  namespace fs = std::filesystem;
  int identical = 0, nested = 0, round_trips = 0, total = 0;
  double worst = 0.0;
  const DistanceMatrix small = ts::gaussian_instance(12, 3, 808);
  const DistanceMatrix medium =
      compute_distance_matrix(ts::mixture_features(300, 8, 5, 4.0, 809), Metric::Euclidean);
  struct Case {
    Strategy strategy;
    const DistanceMatrix* dist;
    std::vector<std::size_t> rounds;
  };
  const Case cases[] = {
      {Strategy::Gbd, &small, {2, 1, 1}},      {Strategy::Oracle, &small, {2, 2}},
      {Strategy::KMedoids, &medium, {10, 10, 20}}, {Strategy::KCenters, &medium, {10, 10, 20}},
      {Strategy::Random, &medium, {10, 10, 20}},
  };
  const fs::path dir = fs::temp_directory_path() / "wasscore_acceptance_reports";
  for (const Case& c : cases) {
    ++total;
    RunConfig cfg;
    cfg.strategy = c.strategy;
    cfg.rounds = c.rounds;
    cfg.seed = 42;
    cfg.gbd.total_time_limit_s = 30.0;
    cfg.output_dir = (dir / std::string(to_string(c.strategy))).string();
    const Report a = run_rounds(*c.dist, cfg);
    const Report b = run_rounds(*c.dist, cfg);
    const bool same = strip_timing(report_to_json(a)).dump() == strip_timing(report_to_json(b)).dump();
    const bool converged = c.strategy != Strategy::Gbd ||
                           std::all_of(a.rounds.begin(), a.rounds.end(),
                                       [](const RoundReport& r) { return r.status == "converged"; });
    identical += same && converged;

    bool is_nested = true;
    for (std::size_t k = 1; k < a.rounds.size(); ++k) {
      for (const int i : a.rounds[k - 1].selected) {
        is_nested = is_nested && std::binary_search(a.rounds[k].selected.begin(),
                                                    a.rounds[k].selected.end(), i);
      }
      is_nested = is_nested && a.rounds[k].selected.size() == a.rounds[k].budget;
    }
    nested += is_nested;

    std::ifstream in(fs::path(cfg.output_dir) / "report.json");
    const nlohmann::json saved = nlohmann::json::parse(in);
    bool trips = true;
    for (const auto& r : saved.at("rounds")) {
      const double w = evaluate_selection(*c.dist, r.at("selected").get<std::vector<int>>());
      const double err = std::abs(w - r.at("wasserstein").get<double>());
      worst = std::max(worst, err);
      trips = trips && err <= 1e-9;
    }
    round_trips += trips;
  }
  report(8, "determinism and round nesting", identical == total && nested == total && round_trips == total,
         fmt("%d/%d strategies reproduce identical reports, %d/%d nest across rounds, %d/%d saved "
             "reports re-evaluate within 1e-9 (worst %.1e)",
             identical, total, nested, total, round_trips, total, worst));
}

}  // namespace

int main() {
  oracle_optimality();
  transport_exactness();
  cut_validity();
  desk_scale_runs();
  bound_discipline();
  heuristic_dominance();
  reduced_equivalence();
  early_termination();
  determinism_and_nesting();
  std::printf("%s: %d criterion failure(s)\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
