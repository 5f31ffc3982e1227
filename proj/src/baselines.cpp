#include "wasscore/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "wasscore/error.hpp"

namespace wasscore {
namespace {

constexpr int kMaxSweeps = 100;

void check_budget(std::size_t n, std::size_t budget, const std::vector<int>& fixed_one) {
  if (budget < 1 || budget > n) throw Error(ErrorCode::InvalidArgument, "budget must lie in [1, N]");
  if (fixed_one.size() > budget) {
    throw Error(ErrorCode::InvalidArgument, "more fixed indices than budget");
  }
}

// Nearest medoid per point, ties to the lowest medoid index; every medoid
// keeps itself so that no cluster is empty when points coincide.
double assign(const DistanceMatrix& dist, const std::vector<int>& medoids,
              std::vector<int>& owner) {
  const std::size_t n = dist.n();
  owner.assign(n, -1);
  double total = 0.0;
  for (std::size_t k = 0; k < medoids.size(); ++k) {
    owner[static_cast<std::size_t>(medoids[k])] = static_cast<int>(k);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (owner[i] >= 0) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < medoids.size(); ++k) {
      const double d = dist(i, static_cast<std::size_t>(medoids[k]));
      if (d < best) {
        best = d;
        owner[i] = static_cast<int>(k);
      }
    }
    total += best;
  }
  return total;
}

}  // namespace

KMedoidsResult kmedoids(const DistanceMatrix& dist, std::size_t budget, std::uint64_t seed,
                        const std::vector<int>& fixed_one) {
  const std::size_t n = dist.n();
  check_budget(n, budget, fixed_one);
  const Selection fixed = fixed_one.empty() ? Selection::all(n) : Selection::from_indices(n, fixed_one);
  auto pinned = [&](int i) { return !fixed_one.empty() && fixed.contains(static_cast<std::size_t>(i)); };
  std::mt19937_64 rng(seed);

  // k-means++ seeding with squared distance to the nearest chosen medoid.
  std::vector<int> medoids;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> chosen(n, 0);
  auto add = [&](std::size_t c) {
    medoids.push_back(static_cast<int>(c));
    chosen[c] = 1;
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, c));
  };
  for (const int i : fixed_one) add(static_cast<std::size_t>(i));
  if (medoids.empty()) add(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  while (medoids.size() < budget) {
    std::vector<double> weights(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!chosen[i]) weights[i] = nearest[i] * nearest[i];
      total += weights[i];
    }
    if (total <= 0.0) {
      // Remaining points duplicate chosen ones; fall back to uniform.
      for (std::size_t i = 0; i < n; ++i) weights[i] = chosen[i] ? 0.0 : 1.0;
    }
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    add(pick(rng));
  }
  std::sort(medoids.begin(), medoids.end());

  KMedoidsResult out{Selection::from_indices(n, medoids), {}, 0};
  std::vector<int> owner;
  out.objective_history.push_back(assign(dist, medoids, owner));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    std::vector<std::vector<int>> members(medoids.size());
    for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(owner[i])].push_back(static_cast<int>(i));

    bool changed = false;
    std::vector<int> next = medoids;
    for (std::size_t k = 0; k < medoids.size(); ++k) {
      if (pinned(medoids[k])) continue;
      double best = std::numeric_limits<double>::infinity();
      int best_idx = medoids[k];
      for (const int c : members[k]) {
        double s = 0.0;
        for (const int m : members[k]) s += dist(static_cast<std::size_t>(c), static_cast<std::size_t>(m));
        if (s < best - 1e-12 || (std::abs(s - best) <= 1e-12 && c < best_idx)) {
          best = s;
          best_idx = c;
        }
      }
      if (best_idx != medoids[k]) changed = true;
      next[k] = best_idx;
    }
    out.sweeps = sweep + 1;
    if (!changed) break;
    std::sort(next.begin(), next.end());
    medoids = std::move(next);
    out.objective_history.push_back(assign(dist, medoids, owner));
  }
  out.medoids = Selection::from_indices(n, medoids);
  return out;
}

Selection kmedoids_select(const DistanceMatrix& dist, std::size_t budget, std::uint64_t seed,
                          const std::vector<int>& fixed_one) {
  return kmedoids(dist, budget, seed, fixed_one).medoids;
}

Selection kcenters_select(const DistanceMatrix& dist, std::size_t budget,
                          const std::vector<int>& fixed_one, std::uint64_t seed) {
  const std::size_t n = dist.n();
  check_budget(n, budget, fixed_one);
  std::vector<int> picked = fixed_one;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> in(n, 0);
  auto add = [&](std::size_t c) {
    if (in[c]) throw Error(ErrorCode::DuplicateIndex, "fixed index repeated");
    in[c] = 1;
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, c));
  };
  for (const int i : fixed_one) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "fixed index out of range");
    }
    add(static_cast<std::size_t>(i));
  }
  if (picked.empty()) {
    std::mt19937_64 rng(seed);
    const std::size_t start = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    picked.push_back(static_cast<int>(start));
    add(start);
  }
  while (picked.size() < budget) {
    std::size_t far = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in[i] && (far == n || nearest[i] > nearest[far])) far = i;
    }
    picked.push_back(static_cast<int>(far));
    add(far);
  }
  return Selection::from_indices(n, picked);
}

Selection random_select(std::size_t n, std::size_t budget, const std::vector<int>& fixed_one,
                        std::uint64_t seed) {
  check_budget(n, budget, fixed_one);
  Selection fixed_check = fixed_one.empty() ? Selection::all(n)
                                            : Selection::from_indices(n, fixed_one);
  std::vector<int> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (fixed_one.empty() || !fixed_check.contains(i)) rest.push_back(static_cast<int>(i));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(rest.begin(), rest.end(), rng);
  std::vector<int> picked = fixed_one;
  picked.insert(picked.end(), rest.begin(),
                rest.begin() + static_cast<std::ptrdiff_t>(budget - fixed_one.size()));
  return Selection::from_indices(n, picked);
}

double covering_radius(const DistanceMatrix& dist, const Selection& sel) {
  double radius = 0.0;
  for (std::size_t i = 0; i < dist.n(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const int j : sel.indices()) best = std::min(best, dist(i, static_cast<std::size_t>(j)));
    radius = std::max(radius, best);
  }
  return radius;
}

}  // namespace wasscore
