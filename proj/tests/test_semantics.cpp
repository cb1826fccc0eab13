#include "doctest.h"
#include "support.hpp"

#include "oracles.hpp"

using namespace agvtest;

TEST_CASE("path probabilities under a memoryless strategy") {
  PA m = instantiate(load_ppa(corpus("m1.json")), {{"p", q(1, 4)}});
  std::vector<SubDist> sigma(2);
  sigma[0][m.action("s0.a")] = 1;
  sigma[1][m.action("s1.b")] = 1;
  auto s = Strategy::memoryless(sigma);
  FinitePath p = FinitePath::initial(0).extended(m.action("s0.a"), 0).extended(m.action("s0.a"), 1);
  CHECK(path_probability(m, s, p) == q(3, 16));
  CHECK(path_string(m, p) == "s0 s0.a s0 s0.a s1");
  CHECK(is_complete(m, s, 4));
  auto mu = measure(m, s, 3);
  Rational total = 0;
  for (const auto& [path, pr] : mu)
    if (path.length() == 3) total += pr;
  CHECK(total == 1);
}

TEST_CASE("partial strategies lose mass") {
  PA m = instantiate(load_ppa(corpus("m1.json")), {{"p", q(1, 4)}});
  std::vector<SubDist> sigma(2);
  sigma[0][m.action("s0.b")] = q(1, 2);
  auto s = Strategy::memoryless(sigma);
  CHECK_FALSE(is_complete(m, s, 2));
  FinitePath p = FinitePath::initial(0).extended(m.action("s0.b"), 0).extended(m.action("s0.b"), 0);
  CHECK(path_probability(m, s, p) == q(1, 4));
}

TEST_CASE("tabular strategies are bounded by their horizon") {
  PA m = instantiate(load_ppa(corpus("m1.json")), {{"p", q(1, 4)}});
  std::mt19937 rng(1);
  auto s = random_tabular(rng, m, 2, false);
  CHECK(s.horizon() == 2);
  CHECK(is_complete(m, s, 2));
  CHECK_THROWS_AS(strategy_project(compose(m, m), s, 1, 3), Error);
}

TEST_CASE("path projection drops the other component's steps") {
  PA m1 = instantiate(load_ppa(corpus("m1.json")), {{"p", q(1, 10)}});
  PA m2 = instantiate(load_ppa(corpus("m2.json")), {{"p", q(1, 10)}, {"q", q(1, 10)}});
  PA n = compose(m1, m2);
  FinitePath p = FinitePath::initial(n.initial())
                     .extended(n.action("(s0.b,b)"), n.state("(s0,t0)"))
                     .extended(n.action("(s0.a,t0.a)"), n.state("(s1,t2)"));
  CHECK(path_string(m2, path_project(n, p, 2)) == "t0 t0.a t2");
  CHECK(path_string(m1, path_project(n, p, 1)) == "s0 s0.b s0 s0.a s1");
  CHECK_THROWS_AS(path_project(m1, FinitePath::initial(0), 1), Error);
}

TEST_CASE("projections preserve path measures (property)") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 40; ++round) {
    PA m1 = random_pa(rng, "s", uniform(rng, 1, 3), {"a", "b"});
    PA m2 = random_pa(rng, "t", uniform(rng, 1, 3), {"b", "c"});
    PA n = compose(m1, m2);
    const int horizon = uniform(rng, 1, 3);
    Strategy sigma = random_tabular(rng, n, horizon, uniform(rng, 0, 1) == 1);
    for (int side : {1, 2}) {
      const PA& comp = side == 1 ? m1 : m2;
      Strategy proj = strategy_project(n, sigma, side, horizon);
      for (const auto& [pi, lifted] : oracle::lifted_sums(n, sigma, side, horizon)) {
        if (static_cast<int>(pi.length()) > horizon) continue;
        CHECK(oracle::component_probability(comp, proj, pi) == lifted);
        CHECK(lifted_measure(pi, n, sigma, side, horizon) == lifted);
      }
    }
  }
}

TEST_CASE("fairness of memoryless strategies") {
  PA m = instantiate(load_ppa(corpus("m1.json")), {{"p", q(1, 2)}});
  std::vector<SubDist> only_b(2);
  only_b[0][m.action("s0.b")] = 1;
  only_b[1][m.action("s1.b")] = 1;
  auto r = fair_check(m, Strategy::memoryless(only_b), {{"a"}}, 4);
  CHECK(r.verdict == FairVerdict::ViolatedWitness);
  std::vector<SubDist> mixed(2);
  mixed[0][m.action("s0.a")] = q(1, 2);
  mixed[0][m.action("s0.b")] = q(1, 2);
  mixed[1][m.action("s1.b")] = 1;
  CHECK(fair_check(m, Strategy::memoryless(mixed), {{"b"}}, 4).verdict == FairVerdict::FairUpToHorizon);
}
