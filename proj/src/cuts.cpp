#include "wasscore/cuts.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "wasscore/error.hpp"

namespace wasscore {

std::string_view to_string(CutKind kind) {
  switch (kind) {
    case CutKind::Benders: return "benders";
    case CutKind::LowerBound: return "lower_bound";
    case CutKind::Triangle: return "triangle";
    case CutKind::DualIneq: return "dual_ineq";
    case CutKind::PruneNear: return "prune_near";
    case CutKind::PruneFar: return "prune_far";
  }
  return "unknown";
}

std::string_view to_string(CutMode mode) {
  return mode == CutMode::Corrected ? "corrected" : "paper-literal";
}

CutMode cut_mode_from_string(std::string_view name) {
  if (name == "corrected") return CutMode::Corrected;
  if (name == "paper-literal" || name == "paper_literal") return CutMode::PaperLiteral;
  throw Error(ErrorCode::InvalidArgument, "unknown cut mode '" + std::string(name) + "'");
}

double Cut::evaluate(const Selection& pi) const {
  if (pi.n() != coeffs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cut and selection sizes differ");
  }
  double s = 0.0;
  for (const int i : pi.indices()) s += coeffs[static_cast<std::size_t>(i)];
  return involves_eta() ? s + rhs : s;
}

bool Cut::satisfied(double eta, const Selection& pi, double tol) const {
  const double lhs = evaluate(pi);
  switch (kind) {
    case CutKind::PruneNear: return lhs >= rhs - tol;
    case CutKind::PruneFar: return lhs <= rhs + tol;
    default: return eta >= lhs - tol;
  }
}

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "pruning beta must lie in (0, 1)");
  }
}

void check_match(const DistanceMatrix& dist, const Selection& sel) {
  if (dist.n() != sel.n()) {
    throw Error(ErrorCode::DimensionMismatch, "distance matrix and selection sizes differ");
  }
}

}  // namespace

Cut benders_cut(const TransportSolution& sol, const Selection& sel_hat, std::size_t n) {
  if (sol.lambda.size() != n || sol.mu.size() != n || sel_hat.n() != n) {
    throw Error(ErrorCode::DimensionMismatch, "transport solution does not match pool size");
  }
  const double b = static_cast<double>(sel_hat.budget());
  Cut cut;
  cut.kind = CutKind::Benders;
  cut.coeffs.resize(n);
  double mu_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cut.coeffs[i] = -sol.lambda[i] / b;
    mu_sum += sol.mu[i];
  }
  cut.rhs = mu_sum / static_cast<double>(n);
  return cut;
}

Cut lower_bound_cut(const DistanceMatrix& dist, std::size_t budget, CutMode mode) {
  const std::size_t n = dist.n();
  if (budget < 1 || budget > n) {
    throw Error(ErrorCode::InvalidArgument, "budget must lie in [1, N]");
  }
  const double b = static_cast<double>(budget);
  const double factor =
      mode == CutMode::Corrected ? std::max(1.0 / b - 1.0 / static_cast<double>(n), 0.0)
                                 : 1.0 / b;
  Cut cut;
  cut.kind = CutKind::LowerBound;
  cut.coeffs.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const double d : dist.row(i)) {
      if (d > 0.0) dmin = std::min(dmin, d);
    }
    if (dmin == std::numeric_limits<double>::infinity()) {
      // No positive distance anywhere in this row: the pool is all duplicates.
      cut.coeffs.assign(n, 0.0);
      cut.degenerate = true;
      return cut;
    }
    cut.coeffs[i] = factor * dmin;
  }
  return cut;
}

Cut triangle_cut(const DistanceMatrix& dist, const Selection& sel_hat, double w_hat,
                 CutMode mode) {
  check_match(dist, sel_hat);
  const std::size_t n = dist.n();
  const double b = static_cast<double>(sel_hat.budget());
  Cut cut;
  cut.kind = CutKind::Triangle;
  cut.coeffs.assign(n, 0.0);
  cut.rhs = -w_hat;
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == CutMode::Corrected && sel_hat.contains(i)) continue;
    double c = std::numeric_limits<double>::infinity();
    for (const int j : sel_hat.indices()) {
      const double d = dist(i, static_cast<std::size_t>(j));
      if (mode == CutMode::PaperLiteral && d <= 0.0) continue;
      c = std::min(c, d);
    }
    if (c != std::numeric_limits<double>::infinity()) cut.coeffs[i] = c / b;
  }
  return cut;
}

Cut dual_ineq_cut(const DistanceMatrix& dist, const TransportSolution& sol,
                  const Selection& sel_hat) {
  check_match(dist, sel_hat);
  const std::size_t n = dist.n();
  if (sol.lambda.size() != n || sol.mu.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "transport solution does not match pool size");
  }
  const double b = static_cast<double>(sel_hat.budget());
  Cut cut;
  cut.kind = CutKind::DualIneq;
  cut.coeffs.resize(n);
  double mu_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = dist.row(i);
    const double max_row = *std::max_element(row.begin(), row.end());
    cut.coeffs[i] = (sol.lambda[i] - max_row) / b;
    mu_sum += sol.mu[i];
  }
  cut.rhs = sol.value - mu_sum / static_cast<double>(n);
  return cut;
}

Cut prune_near_cut(const Selection& sel_hat, double beta_plus) {
  check_beta(beta_plus);
  Cut cut;
  cut.kind = CutKind::PruneNear;
  cut.coeffs.assign(sel_hat.indicator().begin(), sel_hat.indicator().end());
  cut.rhs = beta_plus * static_cast<double>(sel_hat.budget());
  return cut;
}

Cut prune_far_cut(const Selection& sel_hat, double beta_minus) {
  check_beta(beta_minus);
  Cut cut;
  cut.kind = CutKind::PruneFar;
  cut.coeffs.assign(sel_hat.indicator().begin(), sel_hat.indicator().end());
  cut.rhs = beta_minus * static_cast<double>(sel_hat.budget());
  return cut;
}

}  // namespace wasscore
