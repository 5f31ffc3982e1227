#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace wasscore {

enum class Metric { Euclidean, Cosine };

std::string_view to_string(Metric metric);
Metric metric_from_string(std::string_view name);

// Dense N x d matrix of embedding vectors, one sample per row.
class FeatureMatrix {
 public:
  // Throws NonFiniteInput for NaN/Inf entries and ShapeError when
  // n_points < 2, dim < 1 or values.size() != n_points * dim.
  FeatureMatrix(std::size_t n_points, std::size_t dim, std::vector<double> values);

  std::size_t n_points() const noexcept { return n_points_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t n_points_;
  std::size_t dim_;
  std::vector<double> values_;
};

// Symmetric N x N base-metric cost matrix with a zero diagonal. Immutable
// once constructed.
class DistanceMatrix {
 public:
  // Validates symmetry, zero diagonal, finiteness and non-negativity (and
  // the <= 2 chord bound for cosine). Entries below kZeroClamp become 0.
  DistanceMatrix(std::size_t n, std::vector<double> entries, Metric metric);

  static constexpr double kZeroClamp = 1e-12;

  std::size_t n() const noexcept { return n_; }
  Metric metric() const noexcept { return metric_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  const std::vector<double>& entries() const noexcept { return entries_; }
  double max_entry() const noexcept { return max_entry_; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
  Metric metric_;
  double max_entry_ = 0.0;
};

// Pairwise distances between feature rows. Cosine is the Euclidean distance
// between L2-normalized rows (chord length on the unit sphere).
DistanceMatrix compute_distance_matrix(const FeatureMatrix& features, Metric metric);

// Convenience for 1-D point sets (tests and small examples).
DistanceMatrix line_distances(std::span<const double> points);

}  // namespace wasscore
