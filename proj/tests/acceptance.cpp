// Runs the acceptance criteria and prints one line per criterion.
// Exit status is 0 when every failure belongs to the documented list.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "support.hpp"

#include "agv/proofrules.hpp"
#include "agv/simulate.hpp"
#include "agv/verify.hpp"

using namespace agvtest;

namespace {

class Check {
 public:
  void that(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  template <class A, class B>
  void eq(const A& actual, const B& expected, const std::string& what) {
    if (actual == expected) return;
    std::ostringstream ss;
    ss << what << ": got " << show(actual) << ", expected " << show(expected);
    that(false, ss.str());
  }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    return failures_ > 3 ? detail_ + "; and " + std::to_string(failures_ - 3) + " more" : detail_;
  }

 private:
  static std::string show(const Rational& x) { return to_string(x); }
  static std::string show(Status s) { return status_name(s); }
  static std::string show(const std::string& s) { return s; }
  int failures_ = 0;
  std::string detail_;
};

ProbObjective prob(const MoQuery& q) { return std::get<ProbObjective>(q.objectives.at(0)); }

int labelled(const PA& m, int s, const std::string& label) {
  for (int a : m.enabled(s))
    if (m.at(s, a).label == label) return a;
  return -1;
}

std::pair<int, int> key_of(const RPA& u, const std::string& state, const std::string& label) {
  int s = u.state(state);
  for (int a : u.enabled(s))
    if (u.at(s, a).label == label) return {s, a};
  return {s, -1};
}

FinitePath path_of(const PA& m, const std::vector<std::string>& items) {
  FinitePath p = FinitePath::initial(m.state(items.at(0)));
  for (std::size_t i = 1; i + 1 < items.size(); i += 2) p = p.extended(labelled(m, p.last(), items[i]), m.state(items[i + 1]));
  return p;
}

std::vector<SubDist> prefer(const PA& m, const std::vector<std::string>& order) {
  std::vector<SubDist> sigma(m.num_states());
  for (int s = 0; s < m.num_states(); ++s) {
    if (m.enabled(s).empty()) continue;
    int pick = m.enabled(s).front();
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (labelled(m, s, *it) >= 0) pick = labelled(m, s, *it);
    sigma[s][pick] = 1;
  }
  return sigma;
}

Dist dist_of(const RPA& u, const std::vector<std::pair<std::string, Rational>>& entries) {
  Dist d;
  for (const auto& [name, p] : entries) d.emplace_back(u.state(name), p);
  return normalize_dist(std::move(d));
}

PA resolve_nature(const RPA& u, std::map<std::pair<int, int>, Dist> choice) {
  for (const auto& [key, t] : u.transitions())
    if (!t.set.is_singleton() && !choice.count(key)) choice[key] = t.set.generators().front();
  return fix_nature(u, choice);
}

Valuation pq(const Rational& p, const Rational& r) { return {{"p", p}, {"q", r}}; }

bool side_condition_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::SideConditionError;
  }
  return false;
}

Rational random_rational(std::mt19937& rng) {
  int d = uniform(rng, 1, 20);
  return q(uniform(rng, 0, d), d);
}

// ---------------------------------------------------------------------------

// Conditional probability of the next component action, computed from lifted sums.
Rational projection_oracle(const PA& n, const Strategy& sigma, const PA& comp, const FinitePath& pi, int action,
                           int horizon) {
  auto sums = oracle::lifted_sums(n, sigma, 2, horizon);
  Rational den = sums[pi], num = 0;
  for (const auto& [t, _] : comp.at(pi.last(), action).dist) num += sums[pi.extended(action, t)];
  return den == 0 ? Rational(0) : num / den;
}

void projection_goldens(Check& c) {
  PPA m1 = load_ppa(corpus("m1.json")), m2 = load_ppa(corpus("m2.json"));
  auto project = [&](const Valuation& v1, const Valuation& v2, PA& n, PA& n2, Strategy& sigma) {
    n = compose(instantiate(m1, v1), instantiate(m2, v2));
    n2 = instantiate(m2, v2);
    sigma = Strategy::memoryless(prefer(n, {"a", "c", "frown", "b"}));
    return strategy_project(n, sigma, 2, 6);
  };
  const Valuation v = pq(q(1, 10), q(1, 10));
  PA n, n2;
  Strategy sigma = Strategy::memoryless({});
  Strategy proj = project(v, v, n, n2, sigma);
  const std::vector<std::pair<std::vector<std::string>, std::string>> rows{
      {{"t0"}, "a"}, {{"t0", "a", "t2"}, "c"}, {{"t0", "a", "t2", "c", "t3"}, "frown"}};
  const std::vector<Rational> golden{1, q(1, 10), q(1, 10)};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    FinitePath pi = path_of(n2, rows[i].first);
    int a = labelled(n2, pi.last(), rows[i].second);
    Rational got = proj.prob(pi, a);
    std::string at = "(" + path_string(n2, pi) + ", " + rows[i].second + ")";
    c.eq(got, projection_oracle(n, sigma, n2, pi, a, 6), at + " against the lifted-sum oracle");
    c.eq(got, golden[i], at);
  }
  // Dependent valuations give the same projection as the shared one.
  PA nd, n2d;
  Strategy sd = Strategy::memoryless({});
  Strategy dep = project(v, pq(q(9, 10), q(9, 10)), nd, n2d, sd);
  for (const auto& items : std::vector<std::vector<std::string>>{
           {"t0"}, {"t0", "a", "t2"}, {"t0", "a", "t2", "c", "t3"}, {"t0", "a", "t1"}, {"t0", "a", "t1", "a", "t3"}}) {
    FinitePath pi = path_of(n2d, items);
    for (int a : n2d.enabled(pi.last())) c.eq(dep.prob(pi, a), proj.prob(pi, a), "dependent " + path_string(n2d, pi));
  }
}

void path_measures(Check& c) {
  std::mt19937 rng(20240);
  const std::vector<std::string> all{"a", "b", "c"};
  std::size_t compared = 0;
  for (int round = 0; round < 200; ++round) {
    auto labels = [&] {
      std::vector<std::string> out;
      for (const auto& l : all)
        if (uniform(rng, 0, 1)) out.push_back(l);
      if (out.empty()) out.push_back(all[uniform(rng, 0, 2)]);
      return out;
    };
    PA m1 = random_pa(rng, "s", uniform(rng, 1, 4), labels());
    PA m2 = random_pa(rng, "t", uniform(rng, 1, 4), labels());
    PA n = compose(m1, m2);
    const int horizon = uniform(rng, 1, 4);
    Strategy sigma = random_tabular(rng, n, horizon, uniform(rng, 0, 1) == 1);
    for (int side : {1, 2}) {
      const PA& comp = side == 1 ? m1 : m2;
      Strategy proj = strategy_project(n, sigma, side, horizon);
      for (const auto& [pi, lifted] : oracle::lifted_sums(n, sigma, side, horizon)) {
        ++compared;
        c.eq(oracle::component_probability(comp, proj, pi), lifted,
             "round " + std::to_string(round) + " side " + std::to_string(side) + " " + path_string(comp, pi));
      }
    }
  }
  c.that(compared >= 2000, "only " + std::to_string(compared) + " component paths compared");
}

void solution_function(Check& c) {
  PPA m = compose(load_ppa(corpus("m1.json")), load_ppa(corpus("m2.json")));
  DFA bad = prob(load_query(corpus("no_frown.json"))).bad;
  const std::vector<Rational> grid{0, q(1, 10), q(1, 3), q(1, 2), q(9, 10), 1};
  for (const auto& p : grid)
    for (const auto& r : grid) {
      PA n = instantiate(m, pq(p, r));
      Rational expected = 1 - (p * p / 10 + (p - p * p) * r);
      auto prod = dfa_product(n, bad);
      c.eq(safety_prob(n, bad), expected, "safety at " + to_string(pq(p, r)));
      c.eq(1 - max_reach(prod.model, prod.bad).value, expected, "max-reach complement at " + to_string(pq(p, r)));
      c.eq(1 - oracle::max_reach_brute(prod.model, prod.bad), expected, "brute-force complement at " + to_string(pq(p, r)));
    }
}

void asymmetric(Check& c) {
  PPA m1 = load_ppa(corpus("m1.json")), m2 = load_ppa(corpus("m2.json"));
  MoQuery a = load_query(corpus("at_most_one_a.json")), g = load_query(corpus("no_frown.json"));
  RuleOptions opt;
  opt.resolution = 4;
  auto app = apply_asymmetric(m1, m2, Region::parse("box:p=[0,1/10]"), Region::parse("box:p=[0,1],q=[0,1];where:q<=1-p"),
                              a, g, opt);
  c.eq(app.status, Status::Holds, "rule status");
  for (const auto& p : app.premises) c.eq(p.status, Status::Holds, p.statement);
  PPA n = compose(m1, m2);
  c.eq(region_sat(n, Region::parse("box:p=[0,1/10],q=[0,1]"), g, {4, StrategyClass::Complete}).status, Status::Holds,
       "direct check of the conclusion box");
  auto outside = apply_asymmetric(m1, m2, Region::parse("finite:{p=1/5}"), Region::parse("box:p=[0,1],q=[0,1];where:q<=1-p"),
                                  a, g, opt);
  c.eq(outside.status, Status::Fails, "status outside the premise region");
  c.that(!outside.conclusion, "no conclusion outside the premise region");
  if (outside.premises.empty()) return c.that(false, "premise 1 missing");
  const auto& p1 = outside.premises.front();
  c.eq(p1.status, Status::Fails, "premise 1 at p=1/5");
  c.that(p1.verdict && p1.verdict->witness && p1.verdict->valuation &&
             *p1.verdict->valuation == Valuation{{"p", q(1, 5)}},
         "premise 1 witness at p=1/5");
}

void monotonicity(Check& c) {
  PPA m1 = load_ppa(corpus("m1.json")), m2 = load_ppa(corpus("m2.json"));
  Objective o = load_query(corpus("no_frown_value.json")).objectives.at(0);
  RuleOptions opt;
  opt.monotone.resolution = 2;
  Region box = Region::parse("box:p=[0,1],q=[0,1]");
  auto app = apply_monotonicity(m1, m2, box, box, o, "q", Direction::Decreasing, opt);
  c.eq(app.status, Status::Holds, "rule status");
  for (const auto& p : app.premises) c.eq(p.status, Status::Holds, p.statement);
  if (app.conclusion) c.eq(check_conclusion(*app.conclusion, opt).status, Status::Holds, "conclusion re-check");
  c.eq(monotone_check(compose(m1, m2), box, o, "q", Direction::Decreasing, opt.monotone).status, Status::Holds,
       "direct check on the composition");
  // The value 1 - (p^2/10 + (p - p^2) q) does not increase in q.
  c.eq(monotone_check(compose(m1, m2), box, o, "q", Direction::Increasing, opt.monotone).status, Status::Fails,
       "increasing direction refuted");
}

void non_convexity(Check& c) {
  RPA u = rpa_compose(load_rpa(corpus("u1.json")), load_rpa(corpus("u2.json")));
  auto key = key_of(u, "(s0,t0)", "a");
  const auto& set = u.at(key.first, key.second).set;
  auto d = [&](Rational w, Rational x, Rational y, Rational z) {
    return dist_of(u, {{"(s0,t1)", w}, {"(s0,t2)", x}, {"(s1,t1)", y}, {"(s1,t2)", z}});
  };
  const Rational w = q(27, 80), x = q(3, 80), y = q(29, 80), z = q(21, 80);
  // Marginals forced by the (s0, .) row, and the (s1,t1) entry they predict.
  const Rational left = w + x, right = w / left, predicted = (1 - left) * right;
  c.eq(predicted, q(9, 16), "oracle prediction");
  c.that(is_product_member(d(0, 0, q(1, 10), q(9, 10)), set).member, "first product accepted");
  c.that(is_product_member(d(q(9, 20), q(1, 20), q(9, 20), q(1, 20)), set).member, "second product accepted");
  auto r = is_product_member(d(w, x, y, z), set);
  c.that(!r.member, "convex combination rejected");
  c.eq(r.expected, predicted, "expected entry");
  c.eq(r.actual, y, "actual entry");
  Rational f01, f02;
  for (const auto& [s, p] : r.pivot_row) {
    if (u.state_name(s) == "(s0,t1)") f01 = p;
    if (u.state_name(s) == "(s0,t2)") f02 = p;
  }
  c.eq(f01, w, "factor at (s0,t1)");
  c.eq(f02, x, "factor at (s0,t2)");
}

// Premise 2 of the non-convex case is documented as failing; the rest must hold.
void counterexamples(Check& c) {
  RPA u1 = load_rpa(corpus("u1.json")), u2 = load_rpa(corpus("u2.json"));
  {
    MoQuery a = load_query(corpus("trivial_ab.json")), g = load_query(corpus("not_acaf.json"));
    RPA u = rpa_compose(u1, u2);
    PA n = resolve_nature(u, {{key_of(u, "(s0,t0)", "a"), dist_of(u, {{"(s1,t1)", q(9, 10)}, {"(s1,t2)", q(1, 10)}})},
                              {key_of(u, "(s1,t0)", "a"), dist_of(u, {{"(s1,t1)", q(1, 10)}, {"(s1,t2)", q(9, 10)}})}});
    c.eq(1 - safety_prob_under(n, prob(g).bad, prefer(n, {"frown"})), q(81, 100), "memoryless-nature violation");
    auto nm1 = memoryless_nature_model(u1, 4);
    c.eq(region_sat(nm1.model, nm1.region, a, {1, StrategyClass::Complete}).status, Status::Holds,
         "memoryless-nature premise 1");
    auto nm2 = memoryless_nature_model(alphabet_extend_rpa(u2, a.alphabet()), 4);
    c.eq(ag_triple_check(nm2.model, nm2.region, a, g, {1, StrategyClass::Partial}).status, Status::Holds,
         "memoryless-nature premise 2");
  }
  {
    RPA v1 = load_rpa(corpus("u1p.json")), v2 = load_rpa(corpus("u2p.json"));
    MoQuery a = load_query(corpus("not_ab_low.json")), g = load_query(corpus("not_ab_high.json"));
    RPA u = rpa_compose(v1, v2);
    PA n = resolve_nature(u, {{key_of(u, "(s0,t0)", "a"), dist_of(u, {{"(s0,t1)", q(1, 20)}, {"(s0,t2)", q(9, 20)},
                                                                       {"(s1,t1)", q(1, 20)}, {"(s1,t2)", q(9, 20)}})}});
    c.eq(1 - safety_prob_under(n, prob(g).bad, prefer(n, {"a", "b"})), q(9, 20), "non-convex violation");
    c.eq(region_sat(to_ppa(to_pa(v1)), Region::finite({Valuation{}}), a, {1, StrategyClass::Complete}).status,
         Status::Holds, "non-convex premise 1");
    auto nm = memoryless_nature_model(alphabet_extend_rpa(v2, a.alphabet()), 4);
    c.eq(ag_triple_check(nm.model, nm.region, a, g, {1, StrategyClass::Partial}).status, Status::Holds,
         "non-convex premise 2");
  }
  {
    MoQuery a = load_query(corpus("trivial_ab.json")), g = load_query(corpus("no_c.json"));
    RPA u = interval_relax_compose(u1, u2);
    PA n = resolve_nature(u, {{key_of(u, "(s0,t0)", "a"),
                               dist_of(u, {{"(s0,t1)", q(1, 20)}, {"(s1,t1)", q(9, 10)}, {"(s1,t2)", q(1, 20)}})}});
    c.eq(1 - safety_prob_under(n, prob(g).bad, prefer(n, {"a", "c"})), q(19, 20), "relaxation violation");
    c.eq(region_sat(to_ppa(pa_reduce(u1)), Region::finite({Valuation{}}), a, {1, StrategyClass::Complete}).status,
         Status::Holds, "relaxation premise 1");
    c.eq(ag_triple_check(to_ppa(pa_reduce(alphabet_extend_rpa(u2, a.alphabet()))), Region::finite({Valuation{}}), a, g,
                         {1, StrategyClass::Partial})
             .status,
         Status::Holds, "relaxation premise 2");
  }
}

void reduction_commutes(Check& c) {
  std::mt19937 rng(808);
  std::vector<std::pair<RPA, RPA>> pairs{{load_rpa(corpus("u1.json")), load_rpa(corpus("u2.json"))}};
  for (int i = 0; i < 50; ++i)
    pairs.emplace_back(random_rpa(rng, "s", uniform(rng, 1, 3), {"a", "b"}), random_rpa(rng, "t", uniform(rng, 1, 3), {"b", "c"}));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [u1, u2] = pairs[i];
    PA left = pa_reduce(conv_compose(u1, u2));
    PA right = compose(pa_reduce(u1), pa_reduce(u2));
    std::set<std::string> sigma = u1.alphabet();
    sigma.insert(u2.alphabet().begin(), u2.alphabet().end());
    std::vector<DFA> objectives;
    for (const auto& x : sigma) {
      objectives.push_back(DFA::bad_prefix({x}, sigma));
      objectives.push_back(DFA::bad_count(x, 2, sigma));
      for (const auto& y : sigma) objectives.push_back(DFA::bad_prefix({x, y}, sigma));
    }
    for (const auto& bad : objectives)
      c.eq(safety_prob(left, bad), safety_prob(right, bad), "pair " + std::to_string(i));
  }
}

bool subset_criterion(const Dist& mu1, const Dist& mu2, const SimRelation& rel) {
  Rational m1 = 0, m2 = 0;
  for (const auto& [_, p] : mu1) m1 += p;
  for (const auto& [_, p] : mu2) m2 += p;
  if (m1 != m2) return false;
  for (std::size_t mask = 1; mask < (std::size_t{1} << mu1.size()); ++mask) {
    Rational lhs = 0, rhs = 0;
    std::set<int> image;
    for (std::size_t i = 0; i < mu1.size(); ++i)
      if (mask >> i & 1) {
        lhs += mu1[i].second;
        for (const auto& [s, t] : rel)
          if (s == mu1[i].first) image.insert(t);
      }
    for (const auto& [t, p] : mu2)
      if (image.count(t)) rhs += p;
    if (lhs > rhs) return false;
  }
  return true;
}

bool is_simulation(const PA& n1, const PA& n2, const SimRelation& rel) {
  if (!rel.count({n1.initial(), n2.initial()})) return false;
  for (const auto& [s, t] : rel)
    for (int a : n1.enabled(s)) {
      bool matched = false;
      for (int b : n2.enabled(t))
        if (n2.at(t, b).label == n1.at(s, a).label && subset_criterion(n1.at(s, a).dist, n2.at(t, b).dist, rel))
          matched = true;
      if (!matched) return false;
    }
  return true;
}

void simulation(Check& c) {
  PPA m1 = load_ppa(corpus("m1p.json")), m2 = load_ppa(corpus("m2p.json")), m1pp = load_ppa(corpus("m1pp.json"));
  Region r = Region::parse("finite:{p=1/10};{p=9/10}");
  c.eq(strong_sim_region(m1, m2, r, 1).status, Status::Holds, "per-valuation simulation");
  const std::vector<std::pair<Rational, std::string>> relations{{q(1, 10), "t1"}, {q(9, 10), "t2"}};
  for (const auto& [p, target] : relations) {
    PA n1 = instantiate(m1, {{"p", p}}), n2 = instantiate(m2, {{"p", p}});
    SimRelation rel{{n1.state("s0"), n2.state("t0")}, {n1.state("s1"), n2.state(target)}};
    c.that(is_simulation(n1, n2, rel), "stated relation at p=" + to_string(p));
  }
  c.that(!robust_strong_sim(m1, m2, r, 1), "no robust relation for the first refinement");
  auto rel = robust_strong_sim(m1pp, m2, r, 1);
  c.that(rel.has_value(), "robust relation for the second refinement");
  if (rel) c.eq(relation_string(*rel, m1pp.states(), m2.states()), std::string("{(s0,t0), (s1,t1)}"), "witness");

  std::mt19937 rng(77);
  int positives = 0;
  for (int round = 0; round < 2000; ++round) {
    auto random_dist = [&] {
      int n = uniform(rng, 1, 5);
      auto w = random_weights(rng, n, 6);
      Dist d;
      for (int i = 0; i < n; ++i)
        if (w[i] > 0) d.emplace_back(i, w[i]);
      return d;
    };
    Dist mu1 = random_dist(), mu2 = random_dist();
    SimRelation sr;
    for (int s = 0; s < 5; ++s)
      for (int t = 0; t < 5; ++t)
        if (uniform(rng, 0, 2) > 0) sr.insert({s, t});
    bool expected = subset_criterion(mu1, mu2, sr);
    positives += expected;
    c.that(dist_leq(mu1, mu2, sr) == expected, "dist_leq round " + std::to_string(round));
  }
  c.that(positives > 0, "some random pairs are related");
}

MoQuery random_safety(std::mt19937& rng, const std::vector<std::string>& symbols, const std::string& name) {
  std::set<std::string> sigma(symbols.begin(), symbols.end());
  std::vector<std::string> word{symbols[uniform(rng, 0, static_cast<int>(symbols.size()) - 1)]};
  if (uniform(rng, 0, 1)) word.push_back(symbols[uniform(rng, 0, static_cast<int>(symbols.size()) - 1)]);
  return MoQuery{{ProbObjective{name, Cmp::GE, q(uniform(rng, 0, 4), 4), DFA::bad_prefix(word, sigma)}}};
}

void rule_soundness(Check& c) {
  std::mt19937 rng(4242);
  const Region any = Region::finite({Valuation{}});
  int concluded = 0, attempts = 0;
  while (concluded < 100 && attempts < 5000) {
    ++attempts;
    RuleApplication app;
    switch (attempts % 4) {
      case 0: {
        PPA m1 = to_ppa(random_pa(rng, "s", uniform(rng, 1, 3), {"a", "b"}));
        PPA m2 = to_ppa(random_pa(rng, "t", uniform(rng, 1, 3), {"b", "c"}));
        app = apply_asymmetric(m1, m2, any, any, random_safety(rng, {"b"}, "A"), random_safety(rng, {"b", "c"}, "G"));
        break;
      }
      case 1: {
        PPA m1 = to_ppa(random_pa(rng, "s", uniform(rng, 1, 3), {"a"}));
        PPA m2 = to_ppa(random_pa(rng, "t", uniform(rng, 1, 3), {"c"}));
        app = apply_interleaving(m1, m2, any, any, MoQuery{}, MoQuery{}, prob(random_safety(rng, {"a"}, "G1")),
                                 prob(random_safety(rng, {"c"}, "G2")));
        break;
      }
      case 2: {
        PPA m = to_ppa(random_pa(rng, "s", uniform(rng, 1, 3), {"a", "b"}));
        app = apply_conjunction(m, any, any, random_safety(rng, {"a"}, "A1"), random_safety(rng, {"a", "b"}, "G1"),
                                random_safety(rng, {"b"}, "A2"), random_safety(rng, {"a", "b"}, "G2"));
        break;
      }
      default: {
        PPA m1 = to_ppa(random_pa(rng, "s", uniform(rng, 1, 3), {"a"}));
        PPA m2 = to_ppa(random_pa(rng, "t", uniform(rng, 1, 3), {"a", "b"}));
        PPA m3 = to_ppa(random_pa(rng, "u", uniform(rng, 1, 2), {"b", "c"}));
        app = apply_asym_n({m1, m2, m3}, {any, any, any},
                           {random_safety(rng, {"a"}, "A1"), random_safety(rng, {"a", "b"}, "A2")},
                           random_safety(rng, {"b", "c"}, "G"));
        break;
      }
    }
    if (app.status != Status::Holds || !app.conclusion) continue;
    ++concluded;
    c.eq(check_conclusion(*app.conclusion).status, Status::Holds,
         std::string(rule_name(app.rule)) + " application " + std::to_string(attempts));
  }
  c.eq(Rational(concluded), Rational(100), "concluding applications");

  // Each injected violation must be reported as a side-condition error.
  int injected = 0;
  auto expect = [&](const std::string& what, const std::function<void()>& f) {
    ++injected;
    c.that(side_condition_error(f), what + " not caught");
  };
  for (int round = 0; round < 25; ++round) {
    PPA m1 = to_ppa(random_pa(rng, "s", uniform(rng, 1, 3), {"a", "b"}));
    PPA m2 = to_ppa(random_pa(rng, "t", uniform(rng, 1, 3), {"b", "c"}));
    MoQuery a = random_safety(rng, {"b"}, "A"), g = random_safety(rng, {"b", "c"}, "G");
    expect("foreign assumption symbol", [&] { apply_asymmetric(m1, m2, any, any, random_safety(rng, {"a", "z"}, "A"), g); });
    expect("foreign guarantee symbol", [&] { apply_asymmetric(m1, m2, any, any, a, random_safety(rng, {"z"}, "G")); });
    MoQuery upper = g;
    std::get<ProbObjective>(upper.objectives[0]).cmp = uniform(rng, 0, 1) ? Cmp::LE : Cmp::LT;
    expect("non-safety guarantee", [&] { apply_asymmetric(m1, m2, any, any, a, upper); });
    expect("non-safety assumption", [&] { apply_conjunction(m1, any, any, upper, g, a, g); });
    expect("overlapping interleaving", [&] {
      apply_interleaving(m1, m2, any, any, MoQuery{}, MoQuery{}, prob(random_safety(rng, {"a", "b"}, "G1")),
                         prob(random_safety(rng, {"c"}, "G2")));
    });
    RewardObjective r1{"R1", Cmp::GE, random_rational(rng), {{"a", Polynomial(1)}}};
    RewardObjective r2{"R2", Cmp::LE, random_rational(rng), {{"c", Polynomial(1)}}};
    expect("mixed reward comparisons", [&] { apply_reward_sum(m1, m2, any, any, MoQuery{}, MoQuery{}, r1, r2); });
    RuleOptions empty_note;
    empty_note.fair_attestation = "";
    expect("empty fairness attestation", [&] { apply_asymmetric(m1, m2, any, any, a, g, empty_note); });
  }
  c.that(injected == 175, "injected violations");
}

void threshold_arithmetic(Check& c) {
  std::mt19937 rng(11);
  PPA m1 = to_ppa(random_pa(rng, "s", 2, {"a"})), m2 = to_ppa(random_pa(rng, "t", 2, {"c"}));
  const Region any = Region::finite({Valuation{}});
  RuleOptions attested;
  attested.fair_attestation = "supplied";
  for (int i = 0; i < 20; ++i) {
    Rational p1 = random_rational(rng), p2 = random_rational(rng);
    Rational expected = p1 + p2 - p1 * p2;
    c.eq(interleaving_threshold(p1, p2), expected, "interleaving threshold");
    ProbObjective g1{"G1", Cmp::GE, p1, DFA::bad_prefix({"a"}, {"a"})};
    ProbObjective g2{"G2", Cmp::GE, p2, DFA::bad_prefix({"c"}, {"c"})};
    auto app = apply_interleaving(m1, m2, any, any, MoQuery{}, MoQuery{}, g1, g2, attested);
    if (app.conclusion) c.eq(prob(app.conclusion->guarantee).threshold, expected, "emitted interleaving threshold");
    else c.that(false, "interleaving conclusion missing");

    Rational r1 = random_rational(rng) * uniform(rng, 1, 5), r2 = random_rational(rng) * uniform(rng, 1, 5);
    RewardObjective g3{"R1", Cmp::GE, r1, {{"a", Polynomial(1)}}};
    RewardObjective g4{"R2", Cmp::GE, r2, {{"c", Polynomial(2)}}};
    c.eq(reward_sum(g3, g4).threshold, Rational(r1 + r2), "reward threshold");
    auto rs = apply_reward_sum(m1, m2, any, any, MoQuery{}, MoQuery{}, g3, g4, attested);
    if (rs.conclusion)
      c.eq(std::get<RewardObjective>(rs.conclusion->guarantee.objectives.at(0)).threshold, Rational(r1 + r2),
           "emitted reward threshold");
    else c.that(false, "reward-sum conclusion missing");

    PPA shared = to_ppa(random_pa(rng, "u", 2, {"a", "c"}));
    c.that(side_condition_error([&] { apply_interleaving(m1, shared, any, any, MoQuery{}, MoQuery{}, g1, g2, attested); }),
           "overlapping alphabets accepted");
  }
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  // Known unattainable: the tabulated projection value and the non-convex component premise.
  const std::set<int> documented{1, 7};
  const std::vector<Criterion> criteria{
      {1, "projection golden values and dependent valuations", 1, projection_goldens},
      {2, "projections preserve path measures on random compositions", 120, path_measures},
      {3, "safety solution function and product cross-check", 5, solution_function},
      {4, "asymmetric rule premises, conclusion box and outside witness", 10, asymmetric},
      {5, "monotonicity rule and direct monotonicity check", 30, monotonicity},
      {6, "non-convex product membership", 1, non_convexity},
      {7, "robust counterexample battery", 5, counterexamples},
      {8, "reduction commutes with convex composition", 120, reduction_commutes},
      {9, "simulation goldens and weight-function check", 10, simulation},
      {10, "rule conclusions re-checked and side conditions fuzzed", 300, rule_soundness},
      {11, "interleaving and reward-sum thresholds", 1, threshold_arithmetic},
  };
  bool ok = true;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.that(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.limit_seconds) c.that(false, "took " + std::to_string(secs) + " s");
    std::string verdict = "PASS";
    if (!c.ok()) {
      verdict = documented.count(cr.id) ? "FAIL (documented, see ledger)" : "FAIL";
      if (!documented.count(cr.id)) ok = false;
    }
    std::cout << cr.id << ". " << cr.name << ": " << verdict;
    if (!c.ok()) std::cout << " [" << c.detail() << "]";
    std::cout << " (" << static_cast<long>(secs * 1000) << " ms)\n";
  }
  return ok ? 0 : 1;
}
