#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wasscore {

// Binary indicator over a pool of n points with a fixed budget B = sum(pi).
class Selection {
 public:
  // Throws IndexOutOfRange / DuplicateIndex on bad indices and
  // InvalidArgument when the resulting budget is 0.
  static Selection from_indices(std::size_t n, std::span<const int> indices);
  static Selection from_indicator(std::span<const std::uint8_t> indicator);
  static Selection all(std::size_t n);

  std::size_t n() const noexcept { return indicator_.size(); }
  std::size_t budget() const noexcept { return indices_.size(); }
  bool contains(std::size_t i) const { return indicator_[i] != 0; }
  // Sorted ascending.
  const std::vector<int>& indices() const noexcept { return indices_; }
  const std::vector<std::uint8_t>& indicator() const noexcept { return indicator_; }
  // Number of indices shared with `other` (the integer pi^T pi_hat).
  std::size_t overlap(const Selection& other) const;

  friend bool operator==(const Selection& a, const Selection& b) {
    return a.indices_ == b.indices_ && a.n() == b.n();
  }

 private:
  Selection(std::vector<std::uint8_t> indicator, std::vector<int> indices)
      : indicator_(std::move(indicator)), indices_(std::move(indices)) {}

  std::vector<std::uint8_t> indicator_;
  std::vector<int> indices_;
};

}  // namespace wasscore
