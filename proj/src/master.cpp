#include "wasscore/master.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "wasscore/error.hpp"
#include "wasscore/lp.hpp"

namespace wasscore {

std::string_view to_string(MasterStatus status) {
  switch (status) {
    case MasterStatus::Optimal: return "optimal";
    case MasterStatus::GapLimit: return "gap_limit";
    case MasterStatus::TimeLimit: return "time_limit";
    case MasterStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAbsTol = 1e-9;
constexpr double kIntTol = 1e-7;

// -1 free, 0 / 1 fixed.
using Fixing = std::vector<std::int8_t>;

void validate(const MasterProblem& p) {
  if (p.budget < 1 || p.budget > p.n) {
    throw Error(ErrorCode::InvalidArgument, "master budget must lie in [1, n]");
  }
  if (p.fixed_one.size() > p.budget) {
    throw Error(ErrorCode::InvalidArgument, "more fixed indices than budget");
  }
  if (!(p.rel_gap_tol >= 0.0 && p.rel_gap_tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "relative gap tolerance must lie in [0, 1)");
  }
  std::vector<std::int8_t> seen(p.n, -1);
  for (const int i : p.fixed_one) {
    if (i < 0 || static_cast<std::size_t>(i) >= p.n) {
      throw Error(ErrorCode::IndexOutOfRange, "fixed index out of range");
    }
    seen[static_cast<std::size_t>(i)] = 1;
  }
  for (const int i : p.fixed_zero) {
    if (i < 0 || static_cast<std::size_t>(i) >= p.n) {
      throw Error(ErrorCode::IndexOutOfRange, "fixed index out of range");
    }
    if (seen[static_cast<std::size_t>(i)] == 1) {
      throw Error(ErrorCode::InvalidArgument, "index fixed to both 0 and 1");
    }
  }
  bool any_eta = false;
  for (const auto& c : p.cuts) {
    if (c.coeffs.size() != p.n) {
      throw Error(ErrorCode::DimensionMismatch, "cut length differs from master size");
    }
    any_eta = any_eta || c.involves_eta();
  }
  if (!any_eta) {
    throw Error(ErrorCode::InvalidArgument, "master needs at least one eta cut");
  }
}

Fixing base_fixing(const MasterProblem& p) {
  Fixing fix(p.n, -1);
  for (const int i : p.fixed_one) fix[static_cast<std::size_t>(i)] = 1;
  for (const int i : p.fixed_zero) fix[static_cast<std::size_t>(i)] = 0;
  return fix;
}

// A value no larger than eta at any pi in [0,1]^n, used as eta's finite lower
// bound inside the LP.
double eta_floor(const MasterProblem& p) {
  double floor = -kInf;
  for (const auto& c : p.cuts) {
    if (!c.involves_eta()) continue;
    double v = c.rhs;
    for (const double a : c.coeffs) v += std::min(a, 0.0);
    floor = std::max(floor, v);
  }
  return floor;
}

struct NodeLp {
  bool feasible = false;
  double eta = 0.0;
  std::vector<double> pi;
};

// LP over the free variables only; fixed ones are substituted into the rows.
NodeLp solve_node_lp(const MasterProblem& p, const Fixing& fix, double floor) {
  std::vector<std::size_t> free_vars;
  double ones = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    if (fix[i] < 0) free_vars.push_back(i);
    if (fix[i] == 1) ones += 1.0;
  }
  const std::size_t nf = free_vars.size();
  const std::size_t eta_col = nf;

  LpProblem lp;
  lp.cost.assign(nf + 1, 0.0);
  lp.cost[eta_col] = 1.0;
  lp.lower.assign(nf + 1, 0.0);
  lp.upper.assign(nf + 1, 1.0);
  lp.lower[eta_col] = floor;
  lp.upper[eta_col] = kLpInfinity;

  for (const auto& c : p.cuts) {
    std::vector<double> row(nf + 1, 0.0);
    double fixed_part = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) {
      if (fix[i] == 1) fixed_part += c.coeffs[i];
    }
    for (std::size_t k = 0; k < nf; ++k) row[k] = c.coeffs[free_vars[k]];
    switch (c.kind) {
      case CutKind::PruneNear:
        lp.add_row(std::move(row), RowSense::GreaterEqual, c.rhs - fixed_part);
        break;
      case CutKind::PruneFar:
        lp.add_row(std::move(row), RowSense::LessEqual, c.rhs - fixed_part);
        break;
      default:
        row[eta_col] = -1.0;
        lp.add_row(std::move(row), RowSense::LessEqual, -c.rhs - fixed_part);
        break;
    }
  }
  std::vector<double> card(nf + 1, 1.0);
  card[eta_col] = 0.0;
  lp.add_row(std::move(card), RowSense::Equal, static_cast<double>(p.budget) - ones);

  NodeLp out;
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.eta = res.x[eta_col];
  out.pi.assign(p.n, 0.0);
  for (std::size_t i = 0; i < p.n; ++i) {
    if (fix[i] == 1) out.pi[i] = 1.0;
  }
  for (std::size_t k = 0; k < nf; ++k) out.pi[free_vars[k]] = res.x[k];
  return out;
}

// Fixed ones plus the largest fractional values; ties to the lowest index.
std::optional<Selection> round_selection(const MasterProblem& p, const Fixing& fix,
                                         const std::vector<double>& pi) {
  std::vector<int> chosen;
  std::vector<int> free_vars;
  for (std::size_t i = 0; i < p.n; ++i) {
    if (fix[i] == 1) chosen.push_back(static_cast<int>(i));
    if (fix[i] < 0) free_vars.push_back(static_cast<int>(i));
  }
  if (chosen.size() > p.budget) return std::nullopt;
  const std::size_t need = p.budget - chosen.size();
  if (free_vars.size() < need) return std::nullopt;
  std::stable_sort(free_vars.begin(), free_vars.end(), [&](int a, int b) {
    return pi[static_cast<std::size_t>(a)] > pi[static_cast<std::size_t>(b)];
  });
  chosen.insert(chosen.end(), free_vars.begin(),
                free_vars.begin() + static_cast<std::ptrdiff_t>(need));
  if (chosen.empty()) return std::nullopt;
  Selection sel = Selection::from_indices(p.n, chosen);
  if (!satisfies_side_constraints(p, sel)) return std::nullopt;
  return sel;
}

// Number of ways to choose k of n, saturating at cap + 1.
double choose_capped(std::size_t n, std::size_t k, double cap) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
    if (c > cap) return cap + 1.0;
  }
  return c;
}

// Exact search over every completion of a node with few completions. Calls
// visit(indices, eta) for each completion that satisfies the pruning cuts.
template <class Visit>
void enumerate_completions(const MasterProblem& p, const Fixing& fix, Visit&& visit) {
  std::vector<int> chosen;
  std::vector<int> free_vars;
  for (std::size_t i = 0; i < p.n; ++i) {
    if (fix[i] == 1) chosen.push_back(static_cast<int>(i));
    if (fix[i] < 0) free_vars.push_back(static_cast<int>(i));
  }
  const std::size_t need = p.budget - chosen.size();
  std::vector<double> base(p.cuts.size());
  for (std::size_t c = 0; c < p.cuts.size(); ++c) {
    double v = p.cuts[c].involves_eta() ? p.cuts[c].rhs : 0.0;
    for (const int i : chosen) v += p.cuts[c].coeffs[static_cast<std::size_t>(i)];
    base[c] = v;
  }
  std::vector<std::size_t> pos(need);
  for (std::size_t k = 0; k < need; ++k) pos[k] = k;
  std::vector<int> pick(chosen);
  for (;;) {
    double eta = -kInf;
    bool ok = true;
    for (std::size_t c = 0; c < p.cuts.size() && ok; ++c) {
      double v = base[c];
      for (const std::size_t k : pos) v += p.cuts[c].coeffs[static_cast<std::size_t>(free_vars[k])];
      switch (p.cuts[c].kind) {
        case CutKind::PruneNear: ok = v >= p.cuts[c].rhs - 1e-9; break;
        case CutKind::PruneFar: ok = v <= p.cuts[c].rhs + 1e-9; break;
        default: eta = std::max(eta, v); break;
      }
    }
    if (ok) {
      pick.resize(chosen.size());
      for (const std::size_t k : pos) pick.push_back(free_vars[k]);
      visit(pick, eta);
    }
    // Next combination in lexicographic order.
    std::size_t k = need;
    while (k > 0 && pos[k - 1] == free_vars.size() - need + k - 1) --k;
    if (k == 0) break;
    ++pos[k - 1];
    for (std::size_t j = k; j < need; ++j) pos[j] = pos[j - 1] + 1;
  }
}

struct Node {
  double bound;
  std::uint64_t seq;
  std::vector<std::pair<int, std::int8_t>> branch_fixes;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

}  // namespace

double cut_model_value(const MasterProblem& problem, const Selection& pi) {
  double v = -kInf;
  for (const auto& c : problem.cuts) {
    if (c.involves_eta()) v = std::max(v, c.evaluate(pi));
  }
  return v;
}

bool satisfies_side_constraints(const MasterProblem& problem, const Selection& pi) {
  if (pi.n() != problem.n || pi.budget() != problem.budget) return false;
  for (const int i : problem.fixed_one) {
    if (!pi.contains(static_cast<std::size_t>(i))) return false;
  }
  for (const int i : problem.fixed_zero) {
    if (pi.contains(static_cast<std::size_t>(i))) return false;
  }
  for (const auto& c : problem.cuts) {
    if (!c.involves_eta() && !c.satisfied(0.0, pi)) return false;
  }
  return true;
}

LpRelaxationResult lp_relaxation(const MasterProblem& problem) {
  validate(problem);
  const NodeLp lp = solve_node_lp(problem, base_fixing(problem), eta_floor(problem));
  if (!lp.feasible) throw Error(ErrorCode::Infeasible, "master LP relaxation is infeasible");
  return {lp.eta, lp.pi};
}

MasterSolution solve_master(const MasterProblem& problem,
                            const std::optional<Selection>& warm_start) {
  validate(problem);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const Fixing base = base_fixing(problem);
  const double floor = eta_floor(problem);

  MasterSolution out;
  double incumbent = kInf;
  auto offer = [&](const Selection& sel) {
    const double v = cut_model_value(problem, sel);
    if (v < incumbent - kAbsTol) {
      incumbent = v;
      out.selection = sel;
    }
  };
  if (warm_start && satisfies_side_constraints(problem, *warm_start)) offer(*warm_start);

  auto gap_closed = [&](double lb) {
    return incumbent - lb <=
           std::max(problem.rel_gap_tol * std::max(std::abs(incumbent), 1e-9), kAbsTol);
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::uint64_t seq = 0;
  open.push({-kInf, seq++, {}});
  bool timed_out = false;
  bool gap_stop = false;

  while (!open.empty()) {
    if (out.nodes > 0 && elapsed() >= problem.time_limit_s) {
      timed_out = true;
      break;
    }
    if (out.selection && gap_closed(open.top().bound)) {
      gap_stop = true;
      break;
    }

    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - kAbsTol) continue;
    ++out.nodes;

    Fixing fix = base;
    for (const auto& [i, v] : node.branch_fixes) fix[static_cast<std::size_t>(i)] = v;
    std::size_t ones = 0;
    std::size_t free_count = 0;
    for (const auto f : fix) {
      ones += f == 1 ? 1 : 0;
      free_count += f < 0 ? 1 : 0;
    }
    if (ones > problem.budget || ones + free_count < problem.budget) continue;
    const double limit = problem.enumerate_limit;
    if (limit > 0.0 && choose_capped(free_count, problem.budget - ones, limit) <= limit) {
      enumerate_completions(problem, fix, [&](const std::vector<int>& idx, double eta) {
        if (eta < incumbent - kAbsTol) {
          incumbent = eta;
          out.selection = Selection::from_indices(problem.n, idx);
        }
      });
      continue;
    }

    const NodeLp lp = solve_node_lp(problem, fix, floor);
    if (!lp.feasible || lp.eta >= incumbent - kAbsTol) continue;

    int branch = -1;
    double best_frac = 1.0;
    for (std::size_t i = 0; i < problem.n; ++i) {
      if (fix[i] >= 0) continue;
      const double frac = std::abs(lp.pi[i] - 0.5);
      if (frac < 0.5 - kIntTol && frac < best_frac) {
        best_frac = frac;
        branch = static_cast<int>(i);
      }
    }
    if (auto rounded = round_selection(problem, fix, lp.pi)) offer(*rounded);
    if (branch < 0) continue;  // integral: the rounding above is this point

    if (lp.eta >= incumbent - kAbsTol) continue;
    auto one = node.branch_fixes;
    one.emplace_back(branch, std::int8_t{1});
    auto zero = std::move(node.branch_fixes);
    zero.emplace_back(branch, std::int8_t{0});
    open.push({lp.eta, seq++, std::move(one)});
    open.push({lp.eta, seq++, std::move(zero)});
  }

  if (!out.selection) {
    out.status = timed_out ? MasterStatus::TimeLimit : MasterStatus::Infeasible;
    out.eta = kInf;
    out.lower_bound = open.empty() ? kInf : open.top().bound;
    if (out.status == MasterStatus::Infeasible) out.lower_bound = kInf;
    return out;
  }

  out.eta = incumbent;
  if (!timed_out && !gap_stop) {
    // Tree exhausted: every open node was pruned against the incumbent.
    out.lower_bound = incumbent;
    out.status = MasterStatus::Optimal;
    return out;
  }
  double lb = incumbent;
  if (!open.empty()) lb = std::min(lb, std::max(open.top().bound, floor));
  out.lower_bound = lb;
  if (timed_out) {
    out.status = MasterStatus::TimeLimit;
  } else {
    out.status = incumbent - lb <= kAbsTol ? MasterStatus::Optimal : MasterStatus::GapLimit;
  }
  return out;
}

}  // namespace wasscore
