#include "wasscore/transport.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "network_simplex.hpp"
#include "wasscore/error.hpp"

namespace wasscore {
namespace {

void check_dims(const DistanceMatrix& dist, const Selection& sel) {
  if (dist.n() != sel.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "distance matrix has " + std::to_string(dist.n()) +
                    " points but selection covers " + std::to_string(sel.n()));
  }
}

// Masses are scaled by N*B so that every row supplies B units and every
// selected column absorbs N units; flows stay integral.
TransportSolution solve_columns(const DistanceMatrix& dist, const Selection& sel,
                                const std::vector<int>& columns) {
  const auto n = static_cast<std::int64_t>(dist.n());
  const auto b = static_cast<std::int64_t>(sel.budget());
  std::vector<std::int64_t> demand(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    demand[c] = sel.contains(static_cast<std::size_t>(columns[c])) ? n : 0;
  }

  detail::TransportNetworkSimplex simplex(dist, columns, b, demand);
  simplex.run();

  TransportSolution sol;
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(b));
  double weighted = 0.0;
  for (const auto& f : simplex.positive_flows()) {
    const int col = columns[static_cast<std::size_t>(f.col)];
    sol.plan.push_back({f.row, col, static_cast<double>(f.amount) * scale});
    weighted += dist(static_cast<std::size_t>(f.row), static_cast<std::size_t>(col)) *
                static_cast<double>(f.amount);
  }
  sol.value = weighted * scale;

  const auto un = static_cast<std::size_t>(n);
  sol.mu.resize(un);
  sol.lambda.assign(un, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t r = 0; r < un; ++r) sol.mu[r] = -simplex.row_potential(static_cast<int>(r));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    sol.lambda[static_cast<std::size_t>(columns[c])] = -simplex.col_potential(static_cast<int>(c));
  }

  // Potentials are defined up to a common constant; pin the smallest selected
  // lambda at zero so magnitudes stay on the scale of the distances.
  double shift = std::numeric_limits<double>::infinity();
  for (const int j : sel.indices()) shift = std::min(shift, sol.lambda[static_cast<std::size_t>(j)]);
  for (auto& m : sol.mu) m -= shift;
  for (auto& l : sol.lambda) l -= shift;
  return sol;
}

}  // namespace

TransportSolution wasserstein(const DistanceMatrix& dist, const Selection& sel) {
  check_dims(dist, sel);
  std::vector<int> columns(dist.n());
  std::iota(columns.begin(), columns.end(), 0);
  return solve_columns(dist, sel, columns);
}

TransportSolution wasserstein_reduced(const DistanceMatrix& dist, const Selection& sel) {
  check_dims(dist, sel);
  TransportSolution sol = solve_columns(dist, sel, sel.indices());
  const std::size_t n = dist.n();
  for (std::size_t j = 0; j < n; ++j) {
    if (sel.contains(j)) continue;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, sol.mu[i] - dist(i, j));
    sol.lambda[j] = best;
  }
  return sol;
}

double dual_objective(const TransportSolution& sol, const Selection& sel) {
  const double n = static_cast<double>(sol.mu.size());
  double mu_sum = 0.0;
  for (const double m : sol.mu) mu_sum += m;
  double lambda_sum = 0.0;
  for (const int j : sel.indices()) lambda_sum += sol.lambda[static_cast<std::size_t>(j)];
  return mu_sum / n - lambda_sum / static_cast<double>(sel.budget());
}

}  // namespace wasscore
