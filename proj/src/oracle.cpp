#include "wasscore/oracle.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "wasscore/error.hpp"
#include "wasscore/transport.hpp"

namespace wasscore {

double oracle_subset_count(std::size_t n, std::size_t budget, std::size_t fixed) {
  if (fixed > budget || budget > n) return 0.0;
  const std::size_t pool = n - fixed;
  const std::size_t k = budget - fixed;
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= static_cast<double>(pool - k + i) / static_cast<double>(i);
  }
  return c;
}

OracleResult brute_force_optimum(const DistanceMatrix& dist, std::size_t budget,
                                 const std::vector<int>& fixed_one, bool keep_all_values) {
  const std::size_t n = dist.n();
  if (budget < 1 || budget > n) throw Error(ErrorCode::InvalidArgument, "budget must lie in [1, N]");
  if (fixed_one.size() > budget) {
    throw Error(ErrorCode::InvalidArgument, "more fixed indices than budget");
  }
  std::vector<std::uint8_t> is_fixed(n, 0);
  if (!fixed_one.empty()) {
    const Selection fixed = Selection::from_indices(n, fixed_one);  // validates indices
    is_fixed = fixed.indicator();
  }
  const double count = oracle_subset_count(n, budget, fixed_one.size());
  if (count > kOracleMaxSubsets) {
    throw Error(ErrorCode::TooLarge, "oracle would enumerate " + std::to_string(count) +
                                         " subsets (limit 1e6)");
  }

  std::vector<int> free_idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_fixed[i]) free_idx.push_back(static_cast<int>(i));
  }
  const std::size_t k = budget - fixed_one.size();

  // Enumerate index combinations of the free pool in lexicographic order of
  // the resulting sorted subset.
  std::vector<std::vector<int>> subsets;
  subsets.reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[i] = i;
  for (;;) {
    std::vector<int> s(fixed_one.begin(), fixed_one.end());
    for (const std::size_t p : pos) s.push_back(free_idx[p]);
    std::sort(s.begin(), s.end());
    subsets.push_back(std::move(s));
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == free_idx.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
  std::sort(subsets.begin(), subsets.end());

  std::vector<double> values(subsets.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                      subsets.size() / 64 + 1));
  auto work = [&](std::size_t w) {
    for (std::size_t s = w; s < subsets.size(); s += workers) {
      values[s] = wasserstein(dist, Selection::from_indices(n, subsets[s])).value;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < values.size(); ++s) {
    if (values[s] < values[best] - 1e-12) best = s;
  }
  OracleResult out{values[best], Selection::from_indices(n, subsets[best]), std::nullopt};
  if (keep_all_values) {
    std::map<std::vector<int>, double> all;
    for (std::size_t s = 0; s < subsets.size(); ++s) all.emplace(subsets[s], values[s]);
    out.all_values = std::move(all);
  }
  return out;
}

}  // namespace wasscore
