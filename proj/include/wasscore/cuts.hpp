#pragma once

#include <string_view>
#include <vector>

#include "wasscore/distances.hpp"
#include "wasscore/selection.hpp"
#include "wasscore/transport.hpp"

namespace wasscore {

enum class CutKind { Benders, LowerBound, Triangle, DualIneq, PruneNear, PruneFar };
enum class CutMode { Corrected, PaperLiteral };

std::string_view to_string(CutKind kind);
std::string_view to_string(CutMode mode);
CutMode cut_mode_from_string(std::string_view name);

// Linear constraint over (eta, pi) in the relaxed master problem:
//   eta >= coeffs . pi + rhs   for Benders / LowerBound / Triangle / DualIneq
//   coeffs . pi >= rhs         for PruneNear
//   coeffs . pi <= rhs         for PruneFar
struct Cut {
  CutKind kind = CutKind::Benders;
  std::vector<double> coeffs;
  double rhs = 0.0;
  // Set when the generator had to degenerate (e.g. a pool of identical
  // points leaves the lower-bound cut as eta >= 0).
  bool degenerate = false;

  bool involves_eta() const noexcept {
    return kind != CutKind::PruneNear && kind != CutKind::PruneFar;
  }
  // coeffs . pi + rhs (for eta cuts) or coeffs . pi (for pruning cuts).
  double evaluate(const Selection& pi) const;
  bool satisfied(double eta, const Selection& pi, double tol = 1e-9) const;
};

// eta >= (1/N) sum(mu) - (1/B) lambda . pi, the Lagrangian (weak duality)
// bound generated at sel_hat.
Cut benders_cut(const TransportSolution& sol, const Selection& sel_hat, std::size_t n);

// Corrected: eta >= sum_i max(1/B - 1/N, 0) dmin(i) pi_i, where dmin(i) is
// the smallest positive distance from i. Only (1/B - 1/N) of the mass
// arriving at a selected point must travel; the 1/N from the point itself
// stays at zero cost. PaperLiteral drops that correction.
Cut lower_bound_cut(const DistanceMatrix& dist, std::size_t budget,
                    CutMode mode = CutMode::Corrected);

// Corrected: eta >= (1/B) sum_{i not in sel_hat} c_i pi_i - w_hat with
// c_i = min_{i' in sel_hat} D(i, i'); shared points contribute nothing.
Cut triangle_cut(const DistanceMatrix& dist, const Selection& sel_hat, double w_hat,
                 CutMode mode = CutMode::Corrected);

// eta >= W + (1/B) lambda . pi - (1/N) sum(mu) - (1/B) sum_i maxrow(i) pi_i,
// exactly as stated in the source formulation. Its validity is not
// guaranteed, so callers check it against the incumbent before trusting it.
Cut dual_ineq_cut(const DistanceMatrix& dist, const TransportSolution& sol,
                  const Selection& sel_hat);

// pi . sel_hat >= beta_plus * B (stay inside a Hamming ball).
Cut prune_near_cut(const Selection& sel_hat, double beta_plus);
// pi . sel_hat <= beta_minus * B (leave a Hamming ball).
Cut prune_far_cut(const Selection& sel_hat, double beta_minus);

}  // namespace wasscore
