#include "network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wasscore/error.hpp"

namespace wasscore::detail {

TransportNetworkSimplex::TransportNetworkSimplex(const DistanceMatrix& dist,
                                                 std::span<const int> columns,
                                                 std::int64_t row_supply,
                                                 std::span<const std::int64_t> col_demand)
    : dist_(dist),
      columns_(columns.begin(), columns.end()),
      rows_(static_cast<int>(dist.n())),
      cols_(static_cast<int>(columns.size())),
      node_num_(rows_ + cols_),
      root_(node_num_),
      arc_num_(static_cast<std::int64_t>(rows_) * cols_) {
  if (col_demand.size() != columns.size() || cols_ == 0) {
    throw Error(ErrorCode::DimensionMismatch, "column demand does not match column set");
  }
  const std::int64_t total_demand = std::accumulate(col_demand.begin(), col_demand.end(),
                                                    std::int64_t{0});
  if (total_demand != row_supply * rows_) {
    throw Error(ErrorCode::InvalidArgument, "unbalanced transport problem");
  }
  init(row_supply, col_demand);
}

void TransportNetworkSimplex::init(std::int64_t row_supply,
                                   std::span<const std::int64_t> col_demand) {
  const std::size_t all = static_cast<std::size_t>(node_num_) + 1;
  parent_.assign(all, -1);
  pred_.assign(all, -1);
  pred_dir_.assign(all, 0);
  thread_.assign(all, 0);
  rev_thread_.assign(all, 0);
  succ_num_.assign(all, 0);
  last_succ_.assign(all, 0);
  pi_.assign(all, 0.0);
  flow_.assign(all, 0);
  art_source_.assign(static_cast<std::size_t>(node_num_), 0);
  art_target_.assign(static_cast<std::size_t>(node_num_), 0);
  art_cost_.assign(static_cast<std::size_t>(node_num_), 0.0);

  double max_cost = 0.0;
  for (int c = 0; c < cols_; ++c) {
    for (int r = 0; r < rows_; ++r) {
      max_cost = std::max(max_cost, dist_(static_cast<std::size_t>(r),
                                          static_cast<std::size_t>(columns_[c])));
    }
  }
  const double art_cost = (max_cost + 1.0) * node_num_;
  eps_ = 1e-11 * (1.0 + max_cost);

  parent_[root_] = -1;
  pred_[root_] = -1;
  thread_[root_] = 0;
  rev_thread_[0] = root_;
  succ_num_[root_] = node_num_ + 1;
  last_succ_[root_] = root_ - 1;
  pi_[root_] = 0.0;

  for (int u = 0; u < node_num_; ++u) {
    const std::int64_t supply = u < rows_ ? row_supply : -col_demand[u - rows_];
    parent_[u] = root_;
    pred_[u] = arc_num_ + u;
    thread_[u] = u + 1;
    rev_thread_[u + 1] = u;
    succ_num_[u] = 1;
    last_succ_[u] = u;
    if (supply >= 0) {
      pred_dir_[u] = 1;
      pi_[u] = 0.0;
      art_source_[u] = u;
      art_target_[u] = root_;
      art_cost_[u] = 0.0;
      flow_[u] = supply;
    } else {
      pred_dir_[u] = -1;
      pi_[u] = art_cost;
      art_source_[u] = root_;
      art_target_[u] = u;
      art_cost_[u] = art_cost;
      flow_[u] = -supply;
    }
  }

  block_size_ = std::max<std::int64_t>(
      10, static_cast<std::int64_t>(std::sqrt(static_cast<double>(arc_num_))));
  iteration_cap_ = 50 * static_cast<std::int64_t>(node_num_);
}

bool TransportNetworkSimplex::find_entering_block() {
  double min_rc = -eps_;
  std::int64_t best = -1;
  std::int64_t cnt = block_size_;
  std::int64_t e = next_arc_;
  int s = static_cast<int>(e / cols_);
  int c = static_cast<int>(e % cols_);
  const double* drow = dist_.row(static_cast<std::size_t>(s)).data();
  for (std::int64_t k = 0; k < arc_num_; ++k) {
    const double rc = drow[columns_[c]] + pi_[s] - pi_[rows_ + c];
    if (rc < min_rc) {
      min_rc = rc;
      best = e;
    }
    ++e;
    if (++c == cols_) {
      c = 0;
      if (++s == rows_) {
        s = 0;
        e = 0;
      }
      drow = dist_.row(static_cast<std::size_t>(s)).data();
    }
    if (--cnt == 0) {
      if (best >= 0) break;
      cnt = block_size_;
    }
  }
  if (best < 0) return false;
  in_arc_ = best;
  next_arc_ = e;
  return true;
}

bool TransportNetworkSimplex::find_entering_bland() {
  for (int s = 0; s < rows_; ++s) {
    const double* drow = dist_.row(static_cast<std::size_t>(s)).data();
    for (int c = 0; c < cols_; ++c) {
      if (drow[columns_[c]] + pi_[s] - pi_[rows_ + c] < -eps_) {
        in_arc_ = static_cast<std::int64_t>(s) * cols_ + c;
        return true;
      }
    }
  }
  return false;
}

void TransportNetworkSimplex::find_join() {
  int u = arc_source(in_arc_);
  int v = arc_target(in_arc_);
  while (u != v) {
    if (succ_num_[u] < succ_num_[v]) {
      u = parent_[u];
    } else {
      v = parent_[v];
    }
  }
  join_ = u;
}

bool TransportNetworkSimplex::find_leaving() {
  // Entering arcs are always at their lower bound (uncapacitated problem), so
  // the cycle is oriented source -> target along the entering arc.
  const int first = arc_source(in_arc_);
  const int second = arc_target(in_arc_);
  delta_ = kInfFlow;
  int result = 0;

  for (int u = first; u != join_; u = parent_[u]) {
    if (pred_dir_[u] == 1 && flow_[u] < delta_) {
      delta_ = flow_[u];
      u_out_ = u;
      result = 1;
    }
  }
  for (int u = second; u != join_; u = parent_[u]) {
    if (pred_dir_[u] == -1 && flow_[u] <= delta_) {
      delta_ = flow_[u];
      u_out_ = u;
      result = 2;
    }
  }
  if (result == 1) {
    u_in_ = first;
    v_in_ = second;
  } else {
    u_in_ = second;
    v_in_ = first;
  }
  return result != 0;
}

void TransportNetworkSimplex::change_flow() {
  if (delta_ > 0) {
    for (int u = arc_source(in_arc_); u != join_; u = parent_[u]) {
      flow_[u] -= pred_dir_[u] * delta_;
    }
    for (int u = arc_target(in_arc_); u != join_; u = parent_[u]) {
      flow_[u] += pred_dir_[u] * delta_;
    }
  }
}

void TransportNetworkSimplex::update_tree() {
  const int old_rev_thread = rev_thread_[u_out_];
  const int old_succ_num = succ_num_[u_out_];
  const int old_last_succ = last_succ_[u_out_];
  const int v_out = parent_[u_out_];
  const std::int8_t in_dir = u_in_ == arc_source(in_arc_) ? 1 : -1;

  if (u_in_ == u_out_) {
    parent_[u_in_] = v_in_;
    pred_[u_in_] = in_arc_;
    pred_dir_[u_in_] = in_dir;
    flow_[u_in_] = delta_;

    if (thread_[v_in_] != u_out_) {
      int after = thread_[old_last_succ];
      thread_[old_rev_thread] = after;
      rev_thread_[after] = old_rev_thread;
      after = thread_[v_in_];
      thread_[v_in_] = u_out_;
      rev_thread_[u_out_] = v_in_;
      thread_[old_last_succ] = after;
      rev_thread_[after] = old_last_succ;
    }
  } else {
    const int thread_continue =
        old_rev_thread == v_in_ ? thread_[old_last_succ] : thread_[v_in_];

    // Re-hang the stem (u_in .. u_out) below v_in, splicing thread order.
    int stem = u_in_;
    int par_stem = v_in_;
    int last = last_succ_[u_in_];
    int after = thread_[last];
    thread_[v_in_] = u_in_;
    dirty_revs_.clear();
    dirty_revs_.push_back(v_in_);
    while (stem != u_out_) {
      const int next_stem = parent_[stem];
      thread_[last] = next_stem;
      dirty_revs_.push_back(last);

      const int before = rev_thread_[stem];
      thread_[before] = after;
      rev_thread_[after] = before;

      parent_[stem] = par_stem;
      par_stem = stem;
      stem = next_stem;

      last = last_succ_[stem] == last_succ_[par_stem] ? rev_thread_[par_stem]
                                                      : last_succ_[stem];
      after = thread_[last];
    }
    parent_[u_out_] = par_stem;
    thread_[last] = thread_continue;
    rev_thread_[thread_continue] = last;
    last_succ_[u_out_] = last;

    if (old_rev_thread != v_in_) {
      thread_[old_rev_thread] = after;
      rev_thread_[after] = old_rev_thread;
    }
    for (const int u : dirty_revs_) rev_thread_[thread_[u]] = u;

    // Pred arcs (and their flows) shift one step along the reversed stem.
    int tmp_sc = 0;
    const int tmp_ls = last_succ_[u_out_];
    for (int u = u_out_, p = parent_[u]; u != u_in_; u = p, p = parent_[u]) {
      pred_[u] = pred_[p];
      pred_dir_[u] = static_cast<std::int8_t>(-pred_dir_[p]);
      flow_[u] = flow_[p];
      tmp_sc += succ_num_[u] - succ_num_[p];
      succ_num_[u] = tmp_sc;
      last_succ_[p] = tmp_ls;
    }
    pred_[u_in_] = in_arc_;
    pred_dir_[u_in_] = in_dir;
    flow_[u_in_] = delta_;
    succ_num_[u_in_] = old_succ_num;
  }

  const int up_limit_out = last_succ_[join_] == v_in_ ? join_ : -1;
  const int last_succ_out = last_succ_[u_out_];
  for (int u = v_in_; u != -1 && last_succ_[u] == v_in_; u = parent_[u]) {
    last_succ_[u] = last_succ_out;
  }
  if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
    for (int u = v_out; u != up_limit_out && last_succ_[u] == old_last_succ;
         u = parent_[u]) {
      last_succ_[u] = old_rev_thread;
    }
  } else if (last_succ_out != old_last_succ) {
    for (int u = v_out; u != up_limit_out && last_succ_[u] == old_last_succ;
         u = parent_[u]) {
      last_succ_[u] = last_succ_out;
    }
  }

  for (int u = v_in_; u != join_; u = parent_[u]) succ_num_[u] += old_succ_num;
  for (int u = v_out; u != join_; u = parent_[u]) succ_num_[u] -= old_succ_num;
}

void TransportNetworkSimplex::update_potential() {
  const double sigma = pi_[v_in_] - pi_[u_in_] - pred_dir_[u_in_] * arc_cost(in_arc_);
  const int end = thread_[last_succ_[u_in_]];
  for (int u = u_in_; u != end; u = thread_[u]) pi_[u] += sigma;
}

void TransportNetworkSimplex::recompute_potentials() {
  pi_[root_] = 0.0;
  for (int u = thread_[root_]; u != root_; u = thread_[u]) {
    pi_[u] = pi_[parent_[u]] - pred_dir_[u] * arc_cost(pred_[u]);
  }
}

void TransportNetworkSimplex::run() {
  std::int64_t degenerate_run = 0;
  auto pivot = [&] {
    find_join();
    if (!find_leaving()) {
      throw Error(ErrorCode::SolverFailure, "unbounded transport cycle");
    }
    change_flow();
    update_tree();
    update_potential();
    degenerate_run = delta_ == 0 ? degenerate_run + 1 : 0;
    if (++iterations_ > iteration_cap_) {
      throw Error(ErrorCode::SolverFailure,
                  "network simplex exceeded " + std::to_string(iteration_cap_) + " pivots");
    }
  };

  for (;;) {
    for (;;) {
      const bool found =
          degenerate_run > node_num_ ? find_entering_bland() : find_entering_block();
      if (!found) break;
      pivot();
    }
    // Incremental potential updates drift; confirm optimality on exact
    // tree potentials before stopping.
    recompute_potentials();
    if (!find_entering_bland()) break;
    pivot();
  }

  for (int u = 0; u < node_num_; ++u) {
    if (pred_[u] >= arc_num_ && flow_[u] != 0) {
      throw Error(ErrorCode::SolverFailure, "artificial arc carries flow at optimum");
    }
  }
}

std::vector<TransportNetworkSimplex::Flow> TransportNetworkSimplex::positive_flows() const {
  std::vector<Flow> out;
  for (int u = 0; u < node_num_; ++u) {
    if (pred_[u] < arc_num_ && flow_[u] > 0) {
      out.push_back({static_cast<int>(pred_[u] / cols_), static_cast<int>(pred_[u] % cols_),
                     flow_[u]});
    }
  }
  std::sort(out.begin(), out.end(), [](const Flow& a, const Flow& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

}  // namespace wasscore::detail
