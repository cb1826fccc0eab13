#include "doctest.h"
#include "support.hpp"

#include <array>

#include "agv/lp.hpp"
#include "agv/mdp.hpp"

using namespace agvtest;

TEST_CASE("simplex on a textbook program") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18.
  LinearProgram lp;
  int x = lp.add_var(), y = lp.add_var();
  lp.add({{x, 1}}, Rel::LE, 4);
  lp.add({{y, 2}}, Rel::LE, 12);
  lp.add({{x, 3}, {y, 2}}, Rel::LE, 18);
  lp.objective = {{x, 3}, {y, 5}};
  lp.maximize = true;
  auto r = solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 36);
  CHECK(r.x[x] == 2);
  CHECK(r.x[y] == 6);
}

TEST_CASE("simplex detects infeasible and unbounded programs") {
  LinearProgram a;
  int x = a.add_var();
  a.add({{x, 1}}, Rel::GE, 2);
  a.add({{x, 1}}, Rel::LE, 1);
  CHECK(solve(a).status == LpStatus::Infeasible);

  LinearProgram b;
  int y = b.add_var();
  b.add({{y, 1}}, Rel::GE, 1);
  b.objective = {{y, 1}};
  b.maximize = true;
  CHECK(solve(b).status == LpStatus::Unbounded);
}

TEST_CASE("equalities and exact fractions") {
  LinearProgram lp;
  int x = lp.add_var(), y = lp.add_var();
  lp.add({{x, 1}, {y, 1}}, Rel::EQ, 1);
  lp.add({{x, 3}, {y, -1}}, Rel::GE, 0);
  lp.objective = {{x, 1}};
  auto r = solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == q(1, 4));
}

TEST_CASE("simplex agrees with vertex enumeration in two variables (property)") {
  std::mt19937 rng(17);
  for (int round = 0; round < 100; ++round) {
    // Bounded box plus random cuts, so the optimum sits at a vertex of the arrangement.
    std::vector<std::array<Rational, 3>> rows{{1, 0, 5}, {0, 1, 5}};
    for (int i = 0; i < 3; ++i)
      rows.push_back({q(uniform(rng, -3, 3)), q(uniform(rng, -3, 3)), q(uniform(rng, 0, 8))});
    Rational cx = uniform(rng, -4, 4), cy = uniform(rng, -4, 4);
    LinearProgram lp;
    int x = lp.add_var(), y = lp.add_var();
    for (const auto& r : rows) lp.add({{x, r[0]}, {y, r[1]}}, Rel::LE, r[2]);
    lp.objective = {{x, cx}, {y, cy}};
    lp.maximize = true;
    auto res = solve(lp);
    // Brute force: every pairwise intersection of constraint lines and axes.
    auto all = rows;
    all.push_back({-1, 0, 0});
    all.push_back({0, -1, 0});
    bool any = false;
    Rational best;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        Rational det = all[i][0] * all[j][1] - all[i][1] * all[j][0];
        if (det == 0) continue;
        Rational px = (all[i][2] * all[j][1] - all[i][1] * all[j][2]) / det;
        Rational py = (all[i][0] * all[j][2] - all[i][2] * all[j][0]) / det;
        bool ok = px >= 0 && py >= 0;
        for (const auto& r : rows) ok = ok && r[0] * px + r[1] * py <= r[2];
        if (!ok) continue;
        Rational v = cx * px + cy * py;
        if (!any || v > best) best = v;
        any = true;
      }
    // The origin is always feasible (right-hand sides are nonnegative).
    REQUIRE(any);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == best);
  }
}

TEST_CASE("end components and graph reachability") {
  PA m = instantiate(load_ppa(corpus("m1.json")), {{"p", q(1, 2)}});
  Mdp mdp = to_mdp(m);
  auto mecs = maximal_end_components(mdp);
  CHECK(mecs.size() == 2);
  std::vector<bool> target(mdp.size(), false);
  target[m.state("s1")] = true;
  CHECK(almost_sure_reach(mdp, target)[m.state("s0")]);
  CHECK(can_reach(mdp, target)[m.state("s0")]);
  auto sccs = strongly_connected_components({{1}, {0}, {2}});
  CHECK(sccs.size() == 2);
}

TEST_CASE("exact linear systems") {
  auto x = solve_linear_system({{2, 1}, {1, 3}}, {3, 5});
  REQUIRE(x);
  CHECK((*x)[0] == q(4, 5));
  CHECK((*x)[1] == q(7, 5));
  CHECK_FALSE(solve_linear_system({{1, 2}, {2, 4}}, {1, 2}));
}
