#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "support/instances.hpp"
#include "wasscore/distances.hpp"
#include "wasscore/error.hpp"

using namespace wasscore;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("identical rows are at distance zero") {
  const FeatureMatrix f(2, 3, {1.5, -2.0, 0.25, 1.5, -2.0, 0.25});
  const DistanceMatrix d = compute_distance_matrix(f, Metric::Euclidean);
  CHECK(d(0, 1) == 0.0);
  CHECK(d(1, 0) == 0.0);
}

TEST_CASE("euclidean on a line is the absolute difference") {
  const FeatureMatrix f(2, 1, {0.0, 3.0});
  const DistanceMatrix d = compute_distance_matrix(f, Metric::Euclidean);
  CHECK(d(0, 1) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(d.max_entry() == doctest::Approx(3.0));
}

TEST_CASE("cosine is the chord between normalized rows") {
  const FeatureMatrix f(2, 2, {1.0, 0.0, 1.0, 1.0});
  const DistanceMatrix d = compute_distance_matrix(f, Metric::Cosine);
  CHECK(d(0, 1) == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-12));
  CHECK(d(0, 1) == doctest::Approx(0.76537).epsilon(1e-5));
}

TEST_CASE("input validation") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { FeatureMatrix(2, 1, {0.0, nan}); }) == ErrorCode::NonFiniteInput);
  CHECK(code_of([&] { FeatureMatrix(2, 1, {0.0, INFINITY}); }) == ErrorCode::NonFiniteInput);
  CHECK(code_of([] { FeatureMatrix(2, 2, {0.0, 1.0, 2.0}); }) == ErrorCode::ShapeError);
  CHECK(code_of([] { FeatureMatrix(1, 2, {0.0, 1.0}); }) == ErrorCode::ShapeError);
  CHECK(code_of([] { FeatureMatrix(2, 0, {}); }) == ErrorCode::ShapeError);
  const FeatureMatrix zero_row(2, 2, {0.0, 0.0, 1.0, 1.0});
  CHECK(code_of([&] { compute_distance_matrix(zero_row, Metric::Cosine); }) ==
        ErrorCode::ZeroVectorUnderCosine);
  CHECK_NOTHROW(compute_distance_matrix(zero_row, Metric::Euclidean));
}

TEST_CASE("distance matrix validation") {
  CHECK(code_of([] { DistanceMatrix(2, {0.0, 1.0, 2.0, 0.0}, Metric::Euclidean); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { DistanceMatrix(2, {1.0, 1.0, 1.0, 0.0}, Metric::Euclidean); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { DistanceMatrix(2, {0.0, -1.0, -1.0, 0.0}, Metric::Euclidean); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { DistanceMatrix(2, {0.0, 2.5, 2.5, 0.0}, Metric::Cosine); }) ==
        ErrorCode::InvalidArgument);
  const DistanceMatrix tiny(2, {0.0, 1e-14, 1e-14, 0.0}, Metric::Euclidean);
  CHECK(tiny(0, 1) == 0.0);
}

TEST_CASE("metric names") {
  CHECK(metric_from_string("euclidean") == Metric::Euclidean);
  CHECK(metric_from_string("cosine") == Metric::Cosine);
  CHECK(to_string(Metric::Cosine) == "cosine");
  CHECK(code_of([] { metric_from_string("manhattan"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: invariants, triangle inequality and cosine scale invariance") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 3 + seed % 12;
    const FeatureMatrix f = testing_support::gaussian_features(n, 1 + seed % 5, seed);
    for (const Metric m : {Metric::Euclidean, Metric::Cosine}) {
      const DistanceMatrix d = compute_distance_matrix(f, m);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(d(i, i) == 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(d(i, j) == d(j, i));
          CHECK(d(i, j) >= 0.0);
          if (m == Metric::Cosine) CHECK(d(i, j) <= 2.0);
          for (std::size_t k = 0; k < n; ++k) CHECK(d(i, k) <= d(i, j) + d(j, k) + 1e-9);
        }
      }
    }
    std::vector<double> scaled = f.values();
    for (std::size_t i = 0; i < n; ++i) {
      const double c = scale(rng);
      for (std::size_t k = 0; k < f.dim(); ++k) scaled[i * f.dim() + k] *= c;
    }
    const DistanceMatrix a = compute_distance_matrix(f, Metric::Cosine);
    const DistanceMatrix b =
        compute_distance_matrix(FeatureMatrix(n, f.dim(), scaled), Metric::Cosine);
    for (std::size_t i = 0; i < n * n; ++i) CHECK(std::abs(a.entries()[i] - b.entries()[i]) <= 1e-9);
  }
}
