#include "wasscore/gbd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "wasscore/error.hpp"
#include "wasscore/master.hpp"
#include "wasscore/transport.hpp"

namespace wasscore {

std::string_view to_string(GbdStatus status) {
  return status == GbdStatus::Converged ? "converged" : "time_limit";
}

void GbdConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
  };
  require(epsilon > 0.0, "epsilon must be positive");
  require(total_time_limit_s > 0.0, "total time limit must be positive");
  require(master_time_limit_s > 0.0, "master time limit must be positive");
  require(master_gap_tol >= 0.0 && master_gap_tol < 1.0, "master gap must lie in [0, 1)");
  require(beta_plus > 0.0 && beta_plus < 1.0, "beta_plus must lie in (0, 1)");
  require(beta_minus > 0.0 && beta_minus < 1.0, "beta_minus must lie in (0, 1)");
}

bool incumbent_guard(const Cut& cut, const Selection& best, double best_value) {
  return cut.satisfied(best_value, best);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void check_inputs(const DistanceMatrix& dist, std::size_t budget,
                  const std::vector<int>& fixed_one, const Selection& warm_start) {
  if (budget < 1 || budget > dist.n()) {
    throw Error(ErrorCode::InvalidArgument, "budget must lie in [1, N]");
  }
  if (fixed_one.size() > budget) {
    throw Error(ErrorCode::InvalidArgument, "more fixed indices than budget");
  }
  if (warm_start.n() != dist.n() || warm_start.budget() != budget) {
    throw Error(ErrorCode::InvalidArgument, "warm start does not match pool size and budget");
  }
  for (const int i : fixed_one) {
    if (i < 0 || static_cast<std::size_t>(i) >= dist.n() ||
        !warm_start.contains(static_cast<std::size_t>(i))) {
      throw Error(ErrorCode::InvalidArgument, "warm start must contain every fixed index");
    }
  }
}

}  // namespace

GbdResult select_coreset(const DistanceMatrix& dist, std::size_t budget,
                         const std::vector<int>& fixed_one, const Selection& warm_start,
                         const GbdConfig& config) {
  config.validate();
  check_inputs(dist, budget, fixed_one, warm_start);
  const Stopwatch clock;
  const std::size_t n = dist.n();
  const bool reduced = true;

  GbdResult result{warm_start, kInf, {}, GbdStatus::TimeLimit, 0, {}, false, {}};
  std::vector<Cut> optimality;
  std::deque<Cut> near;
  std::deque<Cut> far;
  std::set<std::vector<int>> visited;
  // Every evaluated (selection, W) pair; a valid cut must hold at all of them.
  std::vector<std::pair<Selection, double>> evaluated;

  if (config.use_eoc) {
    Cut lb = lower_bound_cut(dist, budget, config.cut_mode);
    if (lb.degenerate) {
      result.diagnostics.push_back("lower-bound cut degenerated to eta >= 0 (all points identical)");
    }
    optimality.push_back(std::move(lb));
    ++result.cuts_added.lower_bound;
  }

  MasterProblem master;
  master.n = n;
  master.budget = budget;
  master.fixed_one = fixed_one;
  master.rel_gap_tol = config.master_gap_tol;

  double upper = kInf;
  double lower = -kInf;
  Selection current = warm_start;

  for (int t = 0;; ++t) {
    result.iterations = t + 1;
    const TransportSolution sol =
        reduced ? wasserstein_reduced(dist, current) : wasserstein(dist, current);
    const double w = sol.value;
    visited.insert(current.indices());
    evaluated.emplace_back(current, w);

    optimality.push_back(benders_cut(sol, current, n));
    ++result.cuts_added.benders;
    if (config.use_eoc) {
      optimality.push_back(triangle_cut(dist, current, w, config.cut_mode));
      ++result.cuts_added.triangle;
      if (!result.dual_ineq_disabled) {
        optimality.push_back(dual_ineq_cut(dist, sol, current));
        ++result.cuts_added.dual_ineq;
      }
    }

    const bool improved = w <= upper;
    if (w < upper) {
      result.best = current;
      result.best_value = w;
    }
    upper = std::min(upper, w);
    if (config.use_pruning) {
      if (improved) {
        near.push_back(prune_near_cut(current, config.beta_plus));
        ++result.cuts_added.prune_near;
      } else {
        far.push_back(prune_far_cut(current, config.beta_minus));
        ++result.cuts_added.prune_far;
      }
    }

    if (config.use_eoc && config.dual_ineq_guard && !result.dual_ineq_disabled) {
      // Beyond the incumbent, a valid cut must also hold at every evaluated
      // (selection, W) pair. Older cuts have seen all but the newest pair.
      const Cut* newest = optimality.back().kind == CutKind::DualIneq ? &optimality.back() : nullptr;
      const char* violated_by = nullptr;
      for (const Cut& c : optimality) {
        if (c.kind != CutKind::DualIneq) continue;
        if (!incumbent_guard(c, result.best, result.best_value)) {
          violated_by = "the incumbent";
          break;
        }
        auto holds = [&](const auto& e) { return c.satisfied(e.second, e.first); };
        const bool ok = &c == newest ? std::all_of(evaluated.begin(), evaluated.end(), holds)
                                     : holds(evaluated.back());
        if (!ok) {
          violated_by = "an evaluated selection";
          break;
        }
      }
      if (violated_by) {
        std::erase_if(optimality, [](const Cut& c) { return c.kind == CutKind::DualIneq; });
        result.dual_ineq_disabled = true;
        std::ostringstream msg;
        msg << "iteration " << t << ": dual-inequality cut violated by " << violated_by
            << "; family disabled for this run";
        result.diagnostics.push_back(msg.str());
      }
    }

    const double remaining = config.total_time_limit_s - clock.seconds();
    if (remaining <= 0.0) break;

    auto assemble = [&] {
      master.cuts = optimality;
      master.cuts.insert(master.cuts.end(), near.begin(), near.end());
      master.cuts.insert(master.cuts.end(), far.begin(), far.end());
    };
    auto solve = [&](double gap) {
      for (;;) {
        assemble();
        master.rel_gap_tol = gap;
        master.time_limit_s =
            std::max(0.0, std::min(config.master_time_limit_s,
                                   config.total_time_limit_s - clock.seconds()));
        MasterSolution ms = solve_master(master, result.best);
        if (ms.status != MasterStatus::Infeasible) return ms;
        // Pruning constraints made the master empty: relax the oldest ones.
        if (near.size() > 1) {
          near.pop_front();
        } else if (!far.empty()) {
          far.pop_front();
        } else if (!near.empty()) {
          near.pop_front();
        } else {
          throw Error(ErrorCode::SolverFailure, "master problem infeasible without pruning cuts");
        }
        result.diagnostics.push_back("iteration " + std::to_string(t) +
                                     ": master infeasible, dropped oldest pruning cut");
      }
    };

    MasterSolution ms = solve(config.master_gap_tol);
    if (ms.selection && visited.count(ms.selection->indices()) != 0 &&
        ms.status != MasterStatus::Optimal && ms.status != MasterStatus::TimeLimit &&
        config.total_time_limit_s - clock.seconds() > 0.0) {
      // A revisit adds no new cut; only a tighter master bound can make progress.
      ms = solve(0.0);
    }
    if (!ms.selection) break;

    // A relaxation bound above the incumbent value only certifies the
    // incumbent, so the recorded lower bound never exceeds UB.
    lower = std::max(lower, std::min(ms.lower_bound, upper));
    result.trace.rows.push_back({t, lower, upper, result.best_value, clock.seconds()});

    if (upper - lower < config.epsilon) {
      result.status = GbdStatus::Converged;
      break;
    }
    if (clock.seconds() >= config.total_time_limit_s) break;
    current = *ms.selection;
  }
  return result;
}

}  // namespace wasscore
