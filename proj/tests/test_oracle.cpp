#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "support/assignment_oracle.hpp"
#include "support/instances.hpp"
#include "wasscore/error.hpp"
#include "wasscore/oracle.hpp"

using namespace wasscore;

TEST_CASE("budget N costs nothing") {
  const DistanceMatrix d = testing_support::gaussian_instance(5, 2, 1);
  const OracleResult r = brute_force_optimum(d, 5, {});
  CHECK(r.w_star == 0.0);
  CHECK(r.sel_star == Selection::all(5));
}

TEST_CASE("symmetric pair ties resolve to the lowest index") {
  const std::vector<double> pts{0.0, 2.0};
  const OracleResult r = brute_force_optimum(line_distances(pts), 1, {});
  CHECK(r.w_star == doctest::Approx(1.0));
  CHECK(r.sel_star.indices() == std::vector<int>{0});
}

TEST_CASE("four collinear points") {
  const std::vector<double> pts{0.0, 1.0, 2.0, 3.0};
  const DistanceMatrix d = line_distances(pts);
  const OracleResult r = brute_force_optimum(d, 2, {}, true);
  CHECK(r.w_star == doctest::Approx(0.5));
  REQUIRE(r.all_values);
  CHECK(r.all_values->size() == 6);
  // Cross-check every enumerated value against the assignment reference.
  for (const auto& [idx, w] : *r.all_values) {
    CHECK(w == doctest::Approx(testing_support::reference_wasserstein(d.entries(), 4, idx)));
  }
}

TEST_CASE("fixed indices restrict the enumeration") {
  const DistanceMatrix d = testing_support::gaussian_instance(8, 2, 6);
  const std::vector<int> fixed{2};
  const OracleResult r = brute_force_optimum(d, 3, fixed, true);
  CHECK(r.all_values->size() == 21);
  CHECK(r.sel_star.contains(2));
  for (const auto& [idx, w] : *r.all_values) CHECK(w >= r.w_star);
}

TEST_CASE("size guard") {
  CHECK(oracle_subset_count(10, 3, 0) == doctest::Approx(120.0));
  CHECK(oracle_subset_count(10, 3, 1) == doctest::Approx(36.0));
  const DistanceMatrix d = testing_support::gaussian_instance(60, 2, 1);
  try {
    brute_force_optimum(d, 10, {});
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}
