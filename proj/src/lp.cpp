#include "wasscore/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wasscore/error.hpp"

namespace wasscore {
namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-9;

class Tableau {
 public:
  explicit Tableau(const LpProblem& p, const LpOptions& options) : p_(p) {
    m_ = p.num_rows();
    n_ = p.num_vars();
    build();
    const auto size = static_cast<std::int64_t>(n_ + m_);
    bland_after_ = options.bland_after_degenerate > 0 ? options.bland_after_degenerate
                                                      : 10 * size;
    max_pivots_ = options.max_pivots > 0 ? options.max_pivots : 200 * size + 1000;
  }

  LpResult solve() {
    LpResult result;
    if (has_artificials_) {
      set_phase_costs(/*phase_one=*/true);
      if (!iterate()) throw Error(ErrorCode::SolverFailure, "phase one unbounded");
      refresh_basic_values();
      double infeasibility = 0.0;
      for (std::size_t j = art_begin_; j < cols_; ++j) infeasibility += value(j);
      if (infeasibility > kFeasTol * (1.0 + rhs_scale_)) {
        result.status = LpStatus::Infeasible;
        result.pivots = pivots_;
        return result;
      }
      for (std::size_t j = art_begin_; j < cols_; ++j) upper_[j] = 0.0;
    }
    set_phase_costs(/*phase_one=*/false);
    const bool bounded = iterate();
    refresh_basic_values();
    result.pivots = pivots_;
    if (!bounded) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    result.status = LpStatus::Optimal;
    result.x.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      double v = value(j);
      if (v < p_.lower[j]) v = p_.lower[j];
      if (v > p_.upper[j]) v = p_.upper[j];
      result.x[j] = v;
      result.objective += p_.cost[j] * v;
    }
    return result;
  }

 private:
  double& t(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }
  double& a(std::size_t i, std::size_t j) { return orig_[i * cols_ + j]; }

  double value(std::size_t j) const {
    if (basic_row_[j] >= 0) return xb_[static_cast<std::size_t>(basic_row_[j])];
    return at_upper_[j] ? upper_[j] : lower_[j];
  }

  void build() {
    std::size_t slacks = 0;
    for (const auto s : p_.sense) slacks += s != RowSense::Equal ? 1 : 0;
    slack_begin_ = n_;
    art_begin_ = n_ + slacks;

    // Decide per row whether the slack can start basic or an artificial is needed.
    std::vector<double> residual(m_);
    std::size_t arts = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      double r = p_.rhs[i];
      for (std::size_t j = 0; j < n_; ++j) r -= p_.rows[i][j] * p_.lower[j];
      residual[i] = r;
      rhs_scale_ = std::max(rhs_scale_, std::abs(p_.rhs[i]));
      const bool slack_ok = (p_.sense[i] == RowSense::LessEqual && r >= 0.0) ||
                            (p_.sense[i] == RowSense::GreaterEqual && r <= 0.0);
      if (!slack_ok) ++arts;
    }
    cols_ = art_begin_ + arts;
    has_artificials_ = arts > 0;

    tab_.assign(m_ * cols_, 0.0);
    orig_.assign(m_ * cols_, 0.0);
    lower_.assign(cols_, 0.0);
    upper_.assign(cols_, kLpInfinity);
    at_upper_.assign(cols_, 0);
    basic_row_.assign(cols_, -1);
    basis_.assign(m_, 0);
    xb_.assign(m_, 0.0);
    init_col_.assign(m_, 0);
    init_sign_.assign(m_, 1.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!std::isfinite(p_.lower[j])) {
        throw Error(ErrorCode::InvalidArgument, "LP variables need finite lower bounds");
      }
      lower_[j] = p_.lower[j];
      upper_[j] = p_.upper[j];
    }

    std::size_t slack = slack_begin_;
    std::size_t art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      if (p_.rows[i].size() != n_) {
        throw Error(ErrorCode::DimensionMismatch, "LP row length differs from variable count");
      }
      for (std::size_t j = 0; j < n_; ++j) a(i, j) = p_.rows[i][j];
      std::size_t basic_col = 0;
      bool have_basic = false;
      double sign = 1.0;
      const double r = residual[i];
      if (p_.sense[i] != RowSense::Equal) {
        const double slack_sign = p_.sense[i] == RowSense::LessEqual ? 1.0 : -1.0;
        a(i, slack) = slack_sign;
        if ((slack_sign > 0 && r >= 0.0) || (slack_sign < 0 && r <= 0.0)) {
          basic_col = slack;
          have_basic = true;
          sign = slack_sign;
        }
        ++slack;
      }
      if (!have_basic) {
        sign = r < 0.0 ? -1.0 : 1.0;
        a(i, art) = sign;
        basic_col = art++;
      }
      basis_[i] = basic_col;
      basic_row_[basic_col] = static_cast<int>(i);
      init_col_[i] = basic_col;
      init_sign_[i] = sign;
      xb_[i] = r / sign;
      for (std::size_t j = 0; j < cols_; ++j) t(i, j) = a(i, j) / sign;
    }
  }

  void set_phase_costs(bool phase_one) {
    cost_.assign(cols_, 0.0);
    if (phase_one) {
      for (std::size_t j = art_begin_; j < cols_; ++j) cost_[j] = 1.0;
    } else {
      for (std::size_t j = 0; j < n_; ++j) cost_[j] = p_.cost[j];
    }
    d_ = cost_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cb * t(i, j);
    }
  }

  // x_B = B^-1 (b - A_N x_N), with B^-1 read off the initial identity columns.
  void refresh_basic_values() {
    std::vector<double> resid(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double r = p_.rhs[i];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (basic_row_[j] >= 0) continue;
        const double v = at_upper_[j] ? upper_[j] : lower_[j];
        if (v != 0.0) r -= a(i, j) * v;
      }
      resid[i] = r;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      double v = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        v += t(r, init_col_[i]) * init_sign_[i] * resid[i];
      }
      xb_[r] = v;
    }
  }

  bool eligible(std::size_t j) const {
    if (basic_row_[j] >= 0 || upper_[j] <= lower_[j]) return false;
    return at_upper_[j] ? d_[j] > kCostTol : d_[j] < -kCostTol;
  }

  // Returns false when the objective is unbounded below.
  bool iterate() {
    std::int64_t degenerate = 0;
    for (;;) {
      const bool bland = degenerate >= bland_after_;
      std::size_t enter = cols_;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!eligible(j)) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (std::abs(d_[j]) > best) {
          best = std::abs(d_[j]);
          enter = j;
        }
      }
      if (enter == cols_) return true;

      const double dir = at_upper_[enter] ? -1.0 : 1.0;
      std::size_t leave_row = m_;
      double leave_limit = kLpInfinity;
      double leave_alpha = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = dir * t(i, enter);
        const std::size_t k = basis_[i];
        double limit;
        if (alpha > kPivotTol) {
          limit = (xb_[i] - lower_[k]) / alpha;
        } else if (alpha < -kPivotTol && std::isfinite(upper_[k])) {
          limit = (upper_[k] - xb_[i]) / -alpha;
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        bool take = leave_row == m_ || limit < leave_limit - 1e-12;
        if (!take && limit <= leave_limit + 1e-12) {
          take = bland ? k < basis_[leave_row] : std::abs(alpha) > std::abs(leave_alpha);
        }
        if (take) {
          leave_row = i;
          leave_limit = limit;
          leave_alpha = alpha;
        }
      }
      const double flip = upper_[enter] - lower_[enter];
      double step = leave_limit;
      if (flip <= leave_limit) {
        step = flip;
        leave_row = m_;
      }
      if (!std::isfinite(step)) return false;

      if (++pivots_ > max_pivots_) {
        throw Error(ErrorCode::SolverFailure,
                    "LP exceeded " + std::to_string(max_pivots_) + " pivots");
      }
      degenerate = step <= 1e-12 ? degenerate + 1 : 0;

      for (std::size_t i = 0; i < m_; ++i) xb_[i] -= dir * step * t(i, enter);

      if (leave_row == m_) {
        at_upper_[enter] = at_upper_[enter] ? 0 : 1;  // bound flip
        continue;
      }

      const std::size_t leaving = basis_[leave_row];
      const double entering_value =
          (at_upper_[enter] ? upper_[enter] : lower_[enter]) + dir * step;
      at_upper_[leaving] = leave_alpha > 0.0 ? 0 : 1;
      basic_row_[leaving] = -1;
      basic_row_[enter] = static_cast<int>(leave_row);
      basis_[leave_row] = enter;
      at_upper_[enter] = 0;
      xb_[leave_row] = entering_value;
      pivot(leave_row, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    double* prow = &tab_[r * cols_];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[i * cols_];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    const double f = d_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) d_[j] -= f * prow[j];
      d_[c] = 0.0;
    }
  }

  const LpProblem& p_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t cols_ = 0;
  std::size_t slack_begin_ = 0;
  std::size_t art_begin_ = 0;
  bool has_artificials_ = false;
  double rhs_scale_ = 0.0;

  std::vector<double> tab_;
  std::vector<double> orig_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::uint8_t> at_upper_;
  std::vector<int> basic_row_;
  std::vector<std::size_t> basis_;
  std::vector<double> xb_;
  std::vector<std::size_t> init_col_;
  std::vector<double> init_sign_;
  std::vector<double> cost_;
  std::vector<double> d_;

  std::int64_t bland_after_ = 0;
  std::int64_t max_pivots_ = 0;
  std::int64_t pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LpProblem& problem, const LpOptions& options) {
  if (problem.lower.size() != problem.num_vars() || problem.upper.size() != problem.num_vars() ||
      problem.sense.size() != problem.num_rows() || problem.rhs.size() != problem.num_rows()) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent LP dimensions");
  }
  Tableau tableau(problem, options);
  return tableau.solve();
}

}  // namespace wasscore
