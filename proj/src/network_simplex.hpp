#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wasscore/distances.hpp"

namespace wasscore::detail {

// Primal network simplex for the balanced transportation problem with every
// pool point as a supply row and a chosen subset of pool points as demand
// columns. Flows are integral (the caller scales the uniform masses), costs
// come straight from the distance matrix.
//
// The spanning-tree bookkeeping (parent / thread / succ_num / last_succ)
// follows the classic LEMON layout with an artificial root. Leaving arcs are
// chosen by the strongly feasible tree rule; entering arcs by block search,
// falling back to lowest-index (Bland) pricing during long degenerate runs.
class TransportNetworkSimplex {
 public:
  struct Flow {
    int row;
    int col;  // position in `columns`, not a pool index
    std::int64_t amount;
  };

  TransportNetworkSimplex(const DistanceMatrix& dist, std::span<const int> columns,
                          std::int64_t row_supply, std::span<const std::int64_t> col_demand);

  // Throws SolverFailure if the pivot cap is hit or the artificial arcs
  // cannot be driven to zero flow.
  void run();

  std::vector<Flow> positive_flows() const;
  // Potentials in the network convention: reduced cost c + pi(s) - pi(t) >= 0.
  double row_potential(int r) const { return pi_[r]; }
  double col_potential(int c) const { return pi_[rows_ + c]; }
  std::int64_t iterations() const noexcept { return iterations_; }

 private:
  static constexpr std::int64_t kInfFlow = INT64_MAX;

  double arc_cost(std::int64_t a) const {
    if (a < arc_num_) return dist_(static_cast<std::size_t>(a / cols_),
                                   static_cast<std::size_t>(columns_[a % cols_]));
    return art_cost_[a - arc_num_];
  }
  int arc_source(std::int64_t a) const {
    return a < arc_num_ ? static_cast<int>(a / cols_) : art_source_[a - arc_num_];
  }
  int arc_target(std::int64_t a) const {
    return a < arc_num_ ? rows_ + static_cast<int>(a % cols_) : art_target_[a - arc_num_];
  }

  void init(std::int64_t row_supply, std::span<const std::int64_t> col_demand);
  bool find_entering_block();
  bool find_entering_bland();
  void find_join();
  bool find_leaving();
  void change_flow();
  void update_tree();
  void update_potential();
  void recompute_potentials();

  const DistanceMatrix& dist_;
  std::vector<int> columns_;
  int rows_;
  int cols_;
  int node_num_;
  int root_;
  std::int64_t arc_num_;

  std::vector<int> art_source_;
  std::vector<int> art_target_;
  std::vector<double> art_cost_;

  std::vector<int> parent_;
  std::vector<std::int64_t> pred_;
  std::vector<std::int8_t> pred_dir_;  // +1: pred arc points to parent
  std::vector<int> thread_;
  std::vector<int> rev_thread_;
  std::vector<int> succ_num_;
  std::vector<int> last_succ_;
  std::vector<int> dirty_revs_;
  std::vector<double> pi_;
  std::vector<std::int64_t> flow_;  // flow on pred_[u]

  double eps_ = 0.0;
  std::int64_t block_size_ = 0;
  std::int64_t next_arc_ = 0;
  std::int64_t iterations_ = 0;
  std::int64_t iteration_cap_ = 0;

  std::int64_t in_arc_ = -1;
  int join_ = -1;
  int u_in_ = -1;
  int v_in_ = -1;
  int u_out_ = -1;
  std::int64_t delta_ = 0;
};

}  // namespace wasscore::detail
