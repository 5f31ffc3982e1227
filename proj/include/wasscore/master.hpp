#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wasscore/cuts.hpp"
#include "wasscore/selection.hpp"

namespace wasscore {

// Relaxed master problem: minimize eta over binary pi with sum(pi) = budget,
// the fixed indices, and every accumulated cut.
struct MasterProblem {
  std::size_t n = 0;
  std::size_t budget = 0;
  std::vector<int> fixed_one;
  std::vector<int> fixed_zero;
  std::vector<Cut> cuts;
  double time_limit_s = 180.0;
  double rel_gap_tol = 0.10;
  // Nodes with at most this many completions are searched exhaustively
  // instead of branching; 0 disables enumeration.
  double enumerate_limit = 4096.0;
};

enum class MasterStatus { Optimal, GapLimit, TimeLimit, Infeasible };
std::string_view to_string(MasterStatus status);

struct MasterSolution {
  double eta = 0.0;
  // Empty only for Infeasible, or TimeLimit before any integer point was found.
  std::optional<Selection> selection;
  double lower_bound = 0.0;
  MasterStatus status = MasterStatus::Infeasible;
  std::int64_t nodes = 0;
};

struct LpRelaxationResult {
  double eta = 0.0;
  std::vector<double> pi;
};

// Best-first branch-and-bound with LP bounding. The warm start, when it is
// feasible, seeds the incumbent. Throws InvalidArgument on malformed input.
MasterSolution solve_master(const MasterProblem& problem,
                            const std::optional<Selection>& warm_start = std::nullopt);

// Continuous relaxation (0 <= pi <= 1) of the master problem.
// Throws Infeasible when no fractional point satisfies the constraints.
LpRelaxationResult lp_relaxation(const MasterProblem& problem);

// max over eta cuts of (coeffs . pi + rhs): the smallest eta feasible at pi.
double cut_model_value(const MasterProblem& problem, const Selection& pi);

// Cardinality, fixed indices and pruning cuts (eta cuts never bind on pi).
bool satisfies_side_constraints(const MasterProblem& problem, const Selection& pi);

}  // namespace wasscore
