#include "wasscore/distances.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wasscore/error.hpp"

namespace wasscore {

std::string_view to_string(Metric metric) {
  return metric == Metric::Euclidean ? "euclidean" : "cosine";
}

Metric metric_from_string(std::string_view name) {
  if (name == "euclidean") return Metric::Euclidean;
  if (name == "cosine") return Metric::Cosine;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

FeatureMatrix::FeatureMatrix(std::size_t n_points, std::size_t dim, std::vector<double> values)
    : n_points_(n_points), dim_(dim), values_(std::move(values)) {
  if (n_points_ < 2 || dim_ < 1) {
    throw Error(ErrorCode::ShapeError, "feature matrix needs at least 2 rows and 1 column, got " +
                                           std::to_string(n_points_) + "x" +
                                           std::to_string(dim_));
  }
  if (values_.size() != n_points_ * dim_) {
    throw Error(ErrorCode::ShapeError, "feature payload size does not match shape");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw Error(ErrorCode::NonFiniteInput, "non-finite feature at row " +
                                                 std::to_string(k / dim_) + ", column " +
                                                 std::to_string(k % dim_));
    }
  }
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries, Metric metric)
    : n_(n), entries_(std::move(entries)), metric_(metric) {
  if (entries_.size() != n_ * n_) {
    throw Error(ErrorCode::ShapeError, "distance matrix payload is not n x n");
  }
  for (auto& d : entries_) {
    if (!std::isfinite(d)) throw Error(ErrorCode::NonFiniteInput, "distances must be finite");
    if (d < 0.0) throw Error(ErrorCode::InvalidArgument, "distances must be non-negative");
    if (d < kZeroClamp) d = 0.0;
    max_entry_ = std::max(max_entry_, d);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (entries_[i * n_ + i] != 0.0) {
      throw Error(ErrorCode::InvalidArgument, "distance matrix diagonal must be zero");
    }
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (entries_[i * n_ + j] != entries_[j * n_ + i]) {
        throw Error(ErrorCode::InvalidArgument, "distance matrix must be symmetric");
      }
    }
  }
  if (metric_ == Metric::Cosine && max_entry_ > 2.0) {
    throw Error(ErrorCode::InvalidArgument, "cosine chord distances cannot exceed 2");
  }
}

DistanceMatrix compute_distance_matrix(const FeatureMatrix& features, Metric metric) {
  const std::size_t n = features.n_points();
  const std::size_t d = features.dim();
  std::vector<double> rows = features.values();

  if (metric == Metric::Cosine) {
    for (std::size_t i = 0; i < n; ++i) {
      double norm = 0.0;
      for (std::size_t k = 0; k < d; ++k) norm += rows[i * d + k] * rows[i * d + k];
      norm = std::sqrt(norm);
      if (norm == 0.0) {
        throw Error(ErrorCode::ZeroVectorUnderCosine,
                    "row " + std::to_string(i) + " is all zeros");
      }
      for (std::size_t k = 0; k < d; ++k) rows[i * d + k] /= norm;
    }
  }

  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = rows.data() + i * d;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* xj = rows.data() + j * d;
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = xi[k] - xj[k];
        s += diff * diff;
      }
      double dist = std::sqrt(s);
      if (metric == Metric::Cosine) dist = std::min(dist, 2.0);
      if (dist < DistanceMatrix::kZeroClamp) dist = 0.0;
      entries[i * n + j] = dist;
      entries[j * n + i] = dist;
    }
  }
  return DistanceMatrix(n, std::move(entries), metric);
}

DistanceMatrix line_distances(std::span<const double> points) {
  const std::size_t n = points.size();
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = std::abs(points[i] - points[j]);
  }
  return DistanceMatrix(n, std::move(entries), Metric::Euclidean);
}

}  // namespace wasscore
