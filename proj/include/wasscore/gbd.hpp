#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wasscore/cuts.hpp"
#include "wasscore/distances.hpp"
#include "wasscore/selection.hpp"

namespace wasscore {

struct GbdConfig {
  double epsilon = 1e-3;               // stop once UB - LB < epsilon
  double total_time_limit_s = 10800.0;  // T
  double master_time_limit_s = 180.0;  // per master solve
  double master_gap_tol = 0.10;        // per master solve, relative
  bool use_eoc = true;                 // lower-bound / triangle / dual-inequality cuts
  bool use_pruning = false;            // Hamming-ball pruning constraints
  double beta_plus = 0.6;
  double beta_minus = 0.99;
  CutMode cut_mode = CutMode::Corrected;
  bool dual_ineq_guard = true;
  std::uint64_t seed = 0;

  // Throws InvalidArgument when a field is out of range.
  void validate() const;
};

struct BoundsRow {
  int iteration = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double incumbent_w = 0.0;
  double elapsed_s = 0.0;
};

struct BoundsTrace {
  std::vector<BoundsRow> rows;
};

enum class GbdStatus { Converged, TimeLimit };
std::string_view to_string(GbdStatus status);

struct CutCounts {
  int benders = 0;
  int lower_bound = 0;
  int triangle = 0;
  int dual_ineq = 0;
  int prune_near = 0;
  int prune_far = 0;
};

struct GbdResult {
  Selection best;
  double best_value = 0.0;
  BoundsTrace trace;
  GbdStatus status = GbdStatus::TimeLimit;
  int iterations = 0;
  CutCounts cuts_added;
  bool dual_ineq_disabled = false;
  std::vector<std::string> diagnostics;
};

// True iff `cut` holds at (eta = best_value, pi = best).
bool incumbent_guard(const Cut& cut, const Selection& best, double best_value);

// Generalized Benders decomposition for min_pi W(C(pi), D) s.t. |pi| = budget,
// fixed_one included. Alternates an exact transport solve at the current
// selection with a master solve over the accumulated cuts; the incumbent is
// the best selection ever evaluated.
GbdResult select_coreset(const DistanceMatrix& dist, std::size_t budget,
                         const std::vector<int>& fixed_one, const Selection& warm_start,
                         const GbdConfig& config);

}  // namespace wasscore
