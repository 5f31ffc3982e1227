#pragma once

#include <vector>

#include "wasscore/distances.hpp"
#include "wasscore/selection.hpp"

namespace wasscore {

struct PlanEntry {
  int row;
  int col;
  double mass;
};

// Optimal primal plan and dual potentials of the uniform-to-uniform
// transport problem between the pool and a selection.
//
// Dual convention: maximize (1/N) sum(mu) - (1/B) sum_{i'} lambda_{i'} pi_{i'}
// subject to mu_i - lambda_{i'} <= D(i, i'). Rows carry mu, columns lambda.
struct TransportSolution {
  double value = 0.0;
  std::vector<PlanEntry> plan;  // strictly positive entries only
  std::vector<double> lambda;   // length N
  std::vector<double> mu;       // length N
};

// Exact discrete Wasserstein distance W(C(pi), D) via a transportation
// network simplex over all N x N arcs (unselected columns have zero demand).
// Throws DimensionMismatch or SolverFailure.
TransportSolution wasserstein(const DistanceMatrix& dist, const Selection& sel);

// Same optimum from the N x B problem restricted to selected columns; the
// potentials of unselected columns are completed by the c-transform
// lambda_{i'} = max_i (mu_i - D(i, i')).
TransportSolution wasserstein_reduced(const DistanceMatrix& dist, const Selection& sel);

// Dual objective (1/N) sum(mu) - (1/B) sum_{i' in sel} lambda_{i'}.
double dual_objective(const TransportSolution& sol, const Selection& sel);

}  // namespace wasscore
