#include "wasscore/selection.hpp"

#include <string>

#include "wasscore/error.hpp"

namespace wasscore {

Selection Selection::from_indices(std::size_t n, std::span<const int> indices) {
  std::vector<std::uint8_t> indicator(n, 0);
  for (const int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " outside pool of " + std::to_string(n));
    }
    if (indicator[static_cast<std::size_t>(i)] != 0) {
      throw Error(ErrorCode::DuplicateIndex, "index " + std::to_string(i) + " repeated");
    }
    indicator[static_cast<std::size_t>(i)] = 1;
  }
  return from_indicator(indicator);
}

Selection Selection::from_indicator(std::span<const std::uint8_t> indicator) {
  std::vector<int> indices;
  std::vector<std::uint8_t> copy(indicator.size(), 0);
  for (std::size_t i = 0; i < indicator.size(); ++i) {
    if (indicator[i] > 1) {
      throw Error(ErrorCode::InvalidArgument, "indicator entries must be 0 or 1");
    }
    if (indicator[i] != 0) {
      copy[i] = 1;
      indices.push_back(static_cast<int>(i));
    }
  }
  if (indices.empty()) throw Error(ErrorCode::InvalidArgument, "selection budget must be >= 1");
  return Selection(std::move(copy), std::move(indices));
}

Selection Selection::all(std::size_t n) {
  return from_indicator(std::vector<std::uint8_t>(n, 1));
}

std::size_t Selection::overlap(const Selection& other) const {
  std::size_t count = 0;
  for (const int i : indices_) {
    if (static_cast<std::size_t>(i) < other.n() && other.contains(static_cast<std::size_t>(i))) {
      ++count;
    }
  }
  return count;
}

}  // namespace wasscore
