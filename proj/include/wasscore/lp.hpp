#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace wasscore {

enum class RowSense { LessEqual, GreaterEqual, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded };

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

// min cost . x  s.t.  rows (dense), lower <= x <= upper.
// Lower bounds must be finite; upper bounds may be kLpInfinity.
struct LpProblem {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> sense;
  std::vector<double> rhs;

  std::size_t num_vars() const noexcept { return cost.size(); }
  std::size_t num_rows() const noexcept { return rows.size(); }
  void add_row(std::vector<double> coeffs, RowSense s, double b) {
    rows.push_back(std::move(coeffs));
    sense.push_back(s);
    rhs.push_back(b);
  }
};

struct LpOptions {
  // Switch from Dantzig pricing to Bland's rule after this many degenerate
  // pivots; <= 0 means 10 * (vars + rows).
  std::int64_t bland_after_degenerate = 0;
  // Hard pivot cap; <= 0 means 200 * (vars + rows) + 1000.
  std::int64_t max_pivots = 0;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::int64_t pivots = 0;
};

// Dense two-phase bounded-variable primal simplex. Throws SolverFailure when
// the pivot cap is exceeded.
LpResult solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace wasscore
