#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "wasscore/error.hpp"
#include "wasscore/master.hpp"

using namespace wasscore;

namespace {

Cut eta_cut(std::vector<double> coeffs, double rhs) {
  Cut c;
  c.kind = CutKind::Benders;
  c.coeffs = std::move(coeffs);
  c.rhs = rhs;
  return c;
}

MasterProblem three_point() {
  MasterProblem p;
  p.n = 3;
  p.budget = 1;
  p.rel_gap_tol = 0.0;
  p.cuts.push_back(eta_cut({-0.1, -0.2, -0.3}, 0.5));
  return p;
}

std::vector<std::vector<int>> subsets(std::size_t n, std::size_t b) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (cur.size() == b) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < static_cast<int>(n); ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST_CASE("single cut picks the largest discount") {
  for (const double limit : {0.0, 4096.0}) {
    MasterProblem p = three_point();
    p.enumerate_limit = limit;
    const MasterSolution s = solve_master(p);
    REQUIRE(s.status == MasterStatus::Optimal);
    REQUIRE(s.selection);
    CHECK(s.selection->indices() == std::vector<int>{2});
    CHECK(s.eta == doctest::Approx(0.2));
    CHECK(s.lower_bound <= s.eta + 1e-9);
  }
}

TEST_CASE("banning the best point moves to the runner-up") {
  MasterProblem p = three_point();
  Cut ban;
  ban.kind = CutKind::PruneFar;
  ban.coeffs = {0.0, 0.0, 1.0};
  ban.rhs = 0.0;
  p.cuts.push_back(ban);
  const MasterSolution s = solve_master(p);
  REQUIRE(s.selection);
  CHECK(s.selection->indices() == std::vector<int>{1});
  CHECK(s.eta == doctest::Approx(0.3));
}

TEST_CASE("lp relaxation") {
  const LpRelaxationResult r = lp_relaxation(three_point());
  CHECK(r.eta == doctest::Approx(0.2));
  CHECK(r.pi[0] == doctest::Approx(0.0));
  CHECK(r.pi[1] == doctest::Approx(0.0));
  CHECK(r.pi[2] == doctest::Approx(1.0));

  MasterProblem gap;
  gap.n = 2;
  gap.budget = 1;
  gap.rel_gap_tol = 0.0;
  gap.cuts.push_back(eta_cut({-1.0, 0.0}, 1.0));
  gap.cuts.push_back(eta_cut({0.0, -1.0}, 1.0));
  const LpRelaxationResult g = lp_relaxation(gap);
  CHECK(g.eta == doctest::Approx(0.5));
  CHECK(g.pi[0] == doctest::Approx(0.5));
  CHECK(g.pi[1] == doctest::Approx(0.5));
  CHECK(solve_master(gap).eta == doctest::Approx(1.0));
  gap.enumerate_limit = 0.0;
  CHECK(solve_master(gap).eta == doctest::Approx(1.0));

  MasterProblem flat;
  flat.n = 4;
  flat.budget = 2;
  flat.rel_gap_tol = 0.0;
  flat.cuts.push_back(eta_cut({0.25, 0.25, 0.25, 0.25}, -0.1));
  CHECK(lp_relaxation(flat).eta == doctest::Approx(solve_master(flat).eta));
}

TEST_CASE("fixed indices and infeasibility") {
  MasterProblem p = three_point();
  p.fixed_one = {0};
  const MasterSolution s = solve_master(p);
  REQUIRE(s.selection);
  CHECK(s.selection->indices() == std::vector<int>{0});
  CHECK(s.eta == doctest::Approx(0.4));

  MasterProblem q = three_point();
  q.fixed_one = {0, 1};
  CHECK_THROWS_AS(solve_master(q), Error);

  MasterProblem r = three_point();
  r.fixed_zero = {0, 1, 2};
  CHECK(solve_master(r).status == MasterStatus::Infeasible);
  CHECK_THROWS_AS(lp_relaxation(r), Error);
}

TEST_CASE("property: random cut models match enumeration") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    MasterProblem p;
    // Alternate between pure LP branch-and-bound and node enumeration.
    p.enumerate_limit = trial % 2 == 0 ? 0.0 : 4096.0;
    p.n = 4 + static_cast<std::size_t>(rng() % 9);
    p.budget = 1 + static_cast<std::size_t>(rng() % 3);
    p.rel_gap_tol = 0.0;
    const int cuts = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < cuts; ++k) {
      std::vector<double> coeffs(p.n);
      for (double& c : coeffs) c = u(rng);
      p.cuts.push_back(eta_cut(std::move(coeffs), u(rng)));
    }
    if (trial % 3 == 0) {
      Cut far;
      far.kind = CutKind::PruneFar;
      far.coeffs.assign(p.n, 0.0);
      far.coeffs[0] = far.coeffs[1] = 1.0;
      far.rhs = 1.0;
      p.cuts.push_back(far);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& idx : subsets(p.n, p.budget)) {
      const Selection s = Selection::from_indices(p.n, idx);
      if (!satisfies_side_constraints(p, s)) continue;
      best = std::min(best, cut_model_value(p, s));
    }
    const MasterSolution sol = solve_master(p);
    REQUIRE(sol.selection);
    CHECK(sol.status == MasterStatus::Optimal);
    CHECK(sol.eta == doctest::Approx(best).epsilon(1e-9));
    CHECK(cut_model_value(p, *sol.selection) == doctest::Approx(best).epsilon(1e-9));
    CHECK(satisfies_side_constraints(p, *sol.selection));
    CHECK(sol.lower_bound <= best + 1e-9);
  }
}

TEST_CASE("gap tolerance still returns a feasible point with a valid bound") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MasterProblem p;
  p.n = 30;
  p.budget = 5;
  p.rel_gap_tol = 0.10;
  for (int k = 0; k < 10; ++k) {
    std::vector<double> coeffs(p.n);
    for (double& c : coeffs) c = -u(rng) / 5.0;
    p.cuts.push_back(eta_cut(std::move(coeffs), 1.0));
  }
  const MasterSolution s = solve_master(p);
  REQUIRE(s.selection);
  CHECK(s.selection->budget() == 5);
  CHECK(s.lower_bound <= s.eta + 1e-9);
  MasterProblem exact = p;
  exact.rel_gap_tol = 0.0;
  const MasterSolution e = solve_master(exact);
  CHECK(s.lower_bound <= e.eta + 1e-9);
  CHECK(e.eta <= s.eta + 1e-9);
}
