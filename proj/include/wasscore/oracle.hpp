#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wasscore/distances.hpp"
#include "wasscore/selection.hpp"

namespace wasscore {

struct OracleResult {
  double w_star = 0.0;
  Selection sel_star;
  // Every enumerated subset (sorted indices) and its Wasserstein value, when requested.
  std::optional<std::map<std::vector<int>, double>> all_values;
};

inline constexpr double kOracleMaxSubsets = 1e6;

// Number of subsets brute_force_optimum would enumerate.
double oracle_subset_count(std::size_t n, std::size_t budget, std::size_t fixed);

// Exhaustive minimum of W(C(pi), D) over every budget-sized selection that
// contains fixed_one. Ties resolve to the lexicographically smallest subset.
// Throws TooLarge beyond kOracleMaxSubsets subsets.
OracleResult brute_force_optimum(const DistanceMatrix& dist, std::size_t budget,
                                 const std::vector<int>& fixed_one, bool keep_all_values = false);

}  // namespace wasscore
