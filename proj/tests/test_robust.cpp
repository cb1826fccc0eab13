#include "doctest.h"
#include "support.hpp"

#include "agv/verify.hpp"

using namespace agvtest;

namespace {

Rational mass(const Dist& d) {
  Rational m = 0;
  for (const auto& [_, p] : d) m += p;
  return m;
}

}  // namespace

TEST_CASE("interval sets") {
  auto u = UncertaintySet::interval({{0, {q(1, 10), q(1, 2)}}, {1, {q(1, 2), q(9, 10)}}});
  CHECK(u.is_polytopic());
  CHECK(u.contains({{0, q(3, 10)}, {1, q(7, 10)}}));
  CHECK_FALSE(u.contains({{0, q(3, 5)}, {1, q(2, 5)}}));
  auto g = u.generators();
  CHECK(g.size() == 2);
  for (const auto& d : g) {
    CHECK(mass(d) == 1);
    CHECK(u.contains(d));
  }
  auto tb = u.tight_bounds();
  CHECK(tb[0].second.lower == q(1, 10));
  CHECK(tb[0].second.upper == q(1, 2));
  CHECK_THROWS_AS(UncertaintySet::interval({{0, {q(0), q(1, 3)}}, {1, {q(0), q(1, 3)}}}), Error);
  CHECK_THROWS_AS(UncertaintySet::interval({{0, {q(1, 2), q(1, 3)}}}), Error);
}

TEST_CASE("interval extreme points are vertices of the polytope (property)") {
  std::mt19937 rng(4);
  for (int round = 0; round < 100; ++round) {
    int n = uniform(rng, 1, 4);
    auto w = random_weights(rng, n);
    std::vector<std::pair<int, Interval>> b;
    for (int t = 0; t < n; ++t)
      b.push_back({t, {std::max(Rational(0), Rational(w[t] - q(1, 10))), std::min(Rational(1), Rational(w[t] + q(1, 5)))}});
    auto pts = interval_extreme_points(b);
    REQUIRE_FALSE(pts.empty());
    std::set<Dist> unique(pts.begin(), pts.end());
    CHECK(unique.size() == pts.size());
    for (const auto& d : pts) {
      CHECK(mass(d) == 1);
      // A vertex has at most one coordinate strictly inside its interval.
      int free = 0;
      for (const auto& [t, iv] : b) {
        Rational x = 0;
        for (const auto& [s, p] : d)
          if (s == t) x = p;
        CHECK(x >= iv.lower);
        CHECK(x <= iv.upper);
        if (x > iv.lower && x < iv.upper) ++free;
      }
      CHECK(free <= 1);
    }
  }
}

TEST_CASE("non-convex product membership") {
  RPA u = rpa_compose(load_rpa(corpus("u1.json")), load_rpa(corpus("u2.json")));
  int s = u.state("(s0,t0)");
  int a = -1;
  for (int x : u.enabled(s))
    if (u.at(s, x).label == "a") a = x;
  REQUIRE(a >= 0);
  const auto& set = u.at(s, a).set;
  CHECK(set.kind() == UncertaintySet::Kind::Product);
  auto d = [&](Rational w, Rational x, Rational y, Rational z) {
    return normalize_dist({{u.state("(s0,t1)"), w}, {u.state("(s0,t2)"), x}, {u.state("(s1,t1)"), y}, {u.state("(s1,t2)"), z}});
  };
  CHECK(is_product_member(d(0, 0, q(1, 10), q(9, 10)), set).member);
  auto r = is_product_member(d(q(27, 80), q(3, 80), q(29, 80), q(21, 80)), set);
  CHECK_FALSE(r.member);
  CHECK(r.expected == q(9, 16));
  CHECK(r.actual == q(29, 80));
}

TEST_CASE("convex composition contains the exact product") {
  RPA u1 = load_rpa(corpus("u1.json")), u2 = load_rpa(corpus("u2.json"));
  RPA exact = rpa_compose(u1, u2), conv = conv_compose(u1, u2);
  CHECK(conv.is_polytopic());
  CHECK_FALSE(exact.is_polytopic());
  for (const auto& [key, t] : exact.transitions())
    for (const auto& g : t.set.generators()) CHECK(conv.at(key.first, key.second).set.contains(g));
}

TEST_CASE("interval relaxation bounds") {
  RPA u = interval_relax_compose(load_rpa(corpus("u1.json")), load_rpa(corpus("u2.json")));
  CHECK(u.is_interval());
  CHECK_THROWS_AS(interval_relax_compose(load_rpa(corpus("u1p.json")), load_rpa(corpus("u2p.json"))), Error);
}

TEST_CASE("PA reduction and nature fixing") {
  RPA u1 = load_rpa(corpus("u1.json"));
  PA red = pa_reduce(u1);
  CHECK(red.num_states() == u1.num_states());
  CHECK(is_distribution_model(red));
  std::size_t actions = 0;
  for (const auto& [key, t] : u1.transitions()) actions += t.set.generators().size();
  CHECK(red.transitions().size() == actions);
  std::map<std::pair<int, int>, Dist> choice;
  for (const auto& [key, t] : u1.transitions()) choice[key] = t.set.generators().back();
  CHECK(is_distribution_model(fix_nature(u1, choice)));
  CHECK_THROWS_AS(fix_nature(u1, {}), Error);
  CHECK_THROWS_AS(to_pa(u1), Error);
  RPA back = from_pa(red);
  CHECK(isomorphic(to_pa(back), red));
}

TEST_CASE("memoryless nature model") {
  RPA u1 = load_rpa(corpus("u1.json"));
  auto nm = memoryless_nature_model(u1, 4);
  CHECK_FALSE(nm.region.is_empty());
  for (const auto& v : nm.region.samples(1)) CHECK(is_distribution_model(instantiate(nm.model, v)));
}

TEST_CASE("PA reduction commutes with convex composition (property)") {
  std::mt19937 rng(8);
  for (int round = 0; round < 15; ++round) {
    RPA u1 = random_rpa(rng, "s", uniform(rng, 1, 2), {"a", "b"});
    RPA u2 = random_rpa(rng, "t", uniform(rng, 1, 2), {"b", "c"});
    PA left = pa_reduce(conv_compose(u1, u2));
    PA right = compose(pa_reduce(u1), pa_reduce(u2));
    for (const auto& sym : {"a", "b", "c"}) {
      DFA bad = DFA::bad_prefix({sym}, {sym});
      CHECK(safety_prob(left, bad) == safety_prob(right, bad));
    }
  }
}
