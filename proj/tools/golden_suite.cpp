#include "golden_suite.hpp"

#include <functional>
#include <sstream>
#include <vector>

#include "agv/io.hpp"
#include "agv/proofrules.hpp"
#include "agv/robust.hpp"
#include "agv/semantics.hpp"
#include "agv/simulate.hpp"

using namespace agv;

namespace {

struct Outcome {
  bool pass = true;
  bool documented = false;  // a known deviation, reported but not failing
  std::string detail;
};

class Expect {
 public:
  template <class A, class B>
  void eq(const std::string& what, const A& actual, const B& expected) {
    if (actual == expected) return;
    std::ostringstream ss;
    ss << what << ": got " << show(actual) << ", expected " << show(expected);
    fail(ss.str());
  }
  void that(const std::string& what, bool ok) {
    if (!ok) fail(what);
  }
  Outcome outcome() const { return out_; }
  Outcome& raw() { return out_; }

 private:
  static std::string show(const Rational& x) { return to_string(x); }
  static std::string show(const std::string& s) { return s; }
  static std::string show(const char* s) { return s; }
  static std::string show(Status s) { return status_name(s); }
  void fail(const std::string& msg) {
    out_.detail += (out_.pass ? "" : "; ") + msg;
    out_.pass = false;
  }
  Outcome out_;
};

int action_with_label(const PA& m, int s, const std::string& label) {
  for (int a : m.enabled(s))
    if (m.at(s, a).label == label) return a;
  fail(ErrorKind::InvalidArgument, "no '" + label + "' transition at " + m.state_name(s));
}

// Path from alternating state names and labels: {"t0", "a", "t2", ...}.
FinitePath path_of(const PA& m, const std::vector<std::string>& items) {
  FinitePath p = FinitePath::initial(m.state(items.at(0)));
  for (std::size_t i = 1; i + 1 < items.size(); i += 2)
    p = p.extended(action_with_label(m, p.last(), items[i]), m.state(items[i + 1]));
  return p;
}

// Memoryless deterministic strategy taking the first preferred label that is enabled.
std::vector<SubDist> prefer(const PA& m, const std::vector<std::string>& order) {
  std::vector<SubDist> sigma(m.num_states());
  for (int s = 0; s < m.num_states(); ++s) {
    if (m.enabled(s).empty()) continue;
    int pick = m.enabled(s).front();
    bool found = false;
    for (const auto& label : order) {
      for (int a : m.enabled(s))
        if (m.at(s, a).label == label) {
          pick = a;
          found = true;
          break;
        }
      if (found) break;
    }
    sigma[s][pick] = 1;
  }
  return sigma;
}

std::pair<int, int> key_of(const RPA& u, const std::string& state, const std::string& label) {
  int s = u.state(state);
  for (int a : u.enabled(s))
    if (u.at(s, a).label == label) return {s, a};
  fail(ErrorKind::InvalidArgument, "no '" + label + "' transition at " + state);
}

Dist dist_of(const RPA& u, const std::vector<std::pair<std::string, Rational>>& entries) {
  Dist d;
  for (const auto& [name, p] : entries) d.emplace_back(u.state(name), p);
  return normalize_dist(std::move(d));
}

// Nature fixing the given choices and the first generator everywhere else.
PA resolve_nature(const RPA& u, std::map<std::pair<int, int>, Dist> choice) {
  for (const auto& [key, t] : u.transitions())
    if (!t.set.is_singleton() && !choice.count(key)) choice[key] = t.set.generators().front();
  return fix_nature(u, choice);
}

bool is_simulation(const PA& n1, const PA& n2, const SimRelation& rel) {
  if (!rel.count({n1.initial(), n2.initial()})) return false;
  for (const auto& [s, t] : rel) {
    for (int a : n1.enabled(s)) {
      const auto& tr = n1.at(s, a);
      bool matched = false;
      for (int b : n2.enabled(t)) {
        const auto& tr2 = n2.at(t, b);
        if (tr2.label == tr.label && dist_leq(tr.dist, tr2.dist, rel)) matched = true;
      }
      if (!matched) return false;
    }
  }
  return true;
}

SimRelation relation_of(const PA& n1, const PA& n2, const std::vector<std::pair<std::string, std::string>>& pairs) {
  SimRelation rel;
  for (const auto& [s, t] : pairs) rel.insert({n1.state(s), n2.state(t)});
  return rel;
}

Valuation val(std::initializer_list<std::pair<const std::string, Rational>> items) { return Valuation(items); }

ProbObjective prob_objective(const MoQuery& q) { return std::get<ProbObjective>(q.objectives.at(0)); }

struct Suite {
  std::string dir;

  std::string path(const std::string& f) const { return dir + "/" + f; }
  PPA ppa(const std::string& f) const { return load_ppa(path(f)); }
  RPA rpa(const std::string& f) const { return load_rpa(path(f)); }
  MoQuery query(const std::string& f) const { return load_query(path(f)); }

  // Projection of the "a, c or frown, else b" strategy to M2 at the given valuations.
  Strategy projection(const Valuation& v1, const Valuation& v2, PA& n2) const {
    PA n = compose(instantiate(ppa("m1.json"), v1), instantiate(ppa("m2.json"), v2));
    n2 = instantiate(ppa("m2.json"), v2);
    auto sigma = Strategy::memoryless(prefer(n, {"a", "c", "frown", "b"}));
    return strategy_project(n, sigma, 2, 6);
  }

  using Row = std::pair<std::vector<std::string>, std::string>;

  static std::vector<Row> projection_rows() {
    return {{{"t0"}, "a"},
            {{"t0", "a", "t2"}, "c"},
            {{"t0", "a", "t2", "c", "t3"}, "frown"},
            {{"t0", "a", "t1"}, "a"},
            {{"t0", "a", "t1", "a", "t3"}, "frown"},
            {{"t0", "a", "t2", "c", "t4"}, "c"},
            {{"t0", "a", "t1", "a", "t4"}, "c"}};
  }

  void projection_values(Expect& e, const Strategy& proj, const PA& n2, const std::vector<Rational>& expected) const {
    const auto rows = projection_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      FinitePath p = path_of(n2, rows[i].first);
      e.eq("(" + path_string(n2, p) + ", " + rows[i].second + ")",
           proj.prob(p, action_with_label(n2, p.last(), rows[i].second)), expected[i]);
    }
  }

  // Values forced by measure preservation: whenever M2 sits in t3 or t4 the
  // composed strategy takes the interleaved move, so the projection is 1 there.
  Outcome projection_shared() const {
    Expect e;
    PA n2;
    const Valuation v = val({{"p", Rational(1, 10)}, {"q", Rational(1, 10)}});
    const Rational t(1, 10);
    projection_values(e, projection(v, v, n2), n2, {1, t, 1, t, 1, 1, t});
    return e.outcome();
  }

  // Interleaved steps at 1/10 contradict measure preservation.
  Outcome projection_interleaved_tenth() const {
    Expect e;
    PA n2;
    const Valuation v = val({{"p", Rational(1, 10)}, {"q", Rational(1, 10)}});
    const Rational t(1, 10);
    projection_values(e, projection(v, v, n2), n2, {1, t, t, t, t, t, 1});
    Outcome o = e.outcome();
    if (!o.pass) o.documented = true;
    return o;
  }

  Outcome projection_dependent() const {
    Expect e;
    PA n2a, n2b;
    const Valuation v1 = val({{"p", Rational(1, 10)}, {"q", Rational(1, 10)}});
    const Valuation v2 = val({{"p", Rational(9, 10)}, {"q", Rational(9, 10)}});
    Strategy dep = projection(v1, v2, n2a);
    Strategy same = projection(v1, v1, n2b);
    for (const auto& items : std::vector<std::vector<std::string>>{
             {"t0"}, {"t0", "a", "t2"}, {"t0", "a", "t2", "c", "t3"}, {"t0", "a", "t1"}, {"t0", "a", "t1", "a", "t3"}}) {
      FinitePath p = path_of(n2a, items);
      for (int a : n2a.enabled(p.last())) e.eq(path_string(n2a, p), dep.prob(p, a), same.prob(p, a));
    }
    return e.outcome();
  }

  Outcome solution_function() const {
    Expect e;
    PPA m = compose(ppa("m1.json"), ppa("m2.json"));
    DFA bad = prob_objective(query("no_frown.json")).bad;
    const std::vector<Rational> grid{0, Rational(1, 10), Rational(1, 2), Rational(9, 10), 1};
    for (const auto& p : grid)
      for (const auto& q : grid) {
        Valuation v = val({{"p", p}, {"q", q}});
        PA n = instantiate(m, v);
        Rational expected = 1 - (p * p / 10 + (p - p * p) * q);
        e.eq("safety at " + to_string(v), safety_prob(n, bad), expected);
        auto prod = dfa_product(n, bad);
        e.eq("max-reach complement at " + to_string(v), 1 - max_reach(prod.model, prod.bad).value, expected);
      }
    return e.outcome();
  }

  Outcome asymmetric_rule() const {
    Expect e;
    ScriptRun run = run_proof_script(path("asym_safety.agproof"));
    const auto& app = run.application;
    e.eq("rule status", app.status, Status::Holds);
    e.that("conclusion emitted", app.conclusion.has_value());
    if (app.conclusion) {
      e.eq("conclusion region", app.conclusion->region.to_string(),
           std::string("box:p=[0,1/10],q=[0,1];where:1 - p - q>=0"));
      e.eq("direct check of the conclusion", check_conclusion(*app.conclusion, run.options).status, Status::Holds);
    }
    return e.outcome();
  }

  Outcome asymmetric_outside() const {
    Expect e;
    ScriptRun run = run_proof_script(path("asym_outside.agproof"));
    const auto& app = run.application;
    e.eq("rule status", app.status, Status::Fails);
    e.that("premise 1 present", !app.premises.empty());
    if (!app.premises.empty()) {
      const auto& p = app.premises.front();
      e.eq("premise 1", p.status, Status::Fails);
      e.that("premise 1 witness at p=1/5", p.verdict && p.verdict->valuation &&
                                               *p.verdict->valuation == val({{"p", Rational(1, 5)}}));
    }
    return e.outcome();
  }

  Outcome direct_check() const {
    Expect e;
    PPA m = compose(ppa("m1.json"), ppa("m2.json"));
    Region r = Region::parse("box:p=[0,1/10],q=[0,1]");
    e.eq("region_sat", region_sat(m, r, query("no_frown.json"), {4, StrategyClass::Complete}).status, Status::Holds);
    return e.outcome();
  }

  Outcome monotonicity_rule() const {
    Expect e;
    ScriptRun run = run_proof_script(path("monotone_q.agproof"));
    const auto& app = run.application;
    e.eq("rule status", app.status, Status::Holds);
    if (app.conclusion)
      e.eq("direct check of the conclusion", check_conclusion(*app.conclusion, run.options).status, Status::Holds);
    return e.outcome();
  }

  Outcome product_membership() const {
    Expect e;
    RPA u1 = rpa("u1.json"), u2 = rpa("u2.json");
    RPA u = rpa_compose(u1, u2);
    const auto& set = u.at(u.state("(s0,t0)"), key_of(u, "(s0,t0)", "a").second).set;
    auto d = [&](Rational a, Rational b, Rational c, Rational x) {
      return dist_of(u, {{"(s0,t1)", a}, {"(s0,t2)", b}, {"(s1,t1)", c}, {"(s1,t2)", x}});
    };
    const Dist mu12 = d(0, 0, Rational(1, 10), Rational(9, 10));
    const Dist mu12p = d(Rational(9, 20), Rational(1, 20), Rational(9, 20), Rational(1, 20));
    const Dist conv = d(Rational(27, 80), Rational(3, 80), Rational(29, 80), Rational(21, 80));
    e.that("first product accepted", is_product_member(mu12, set).member);
    e.that("second product accepted", is_product_member(mu12p, set).member);
    auto r = is_product_member(conv, set);
    e.that("convex combination rejected", !r.member);
    e.eq("expected value", r.expected, Rational(9, 16));
    e.eq("actual value", r.actual, Rational(29, 80));
    e.that("contradiction at (s1,t1)", r.at && *r.at == std::make_pair(1, 1));
    if (r.factors) {
      Rational s0, t1;
      for (const auto& [x, p] : r.factors->first)
        if (x == 0) s0 = p;
      for (const auto& [x, p] : r.factors->second)
        if (x == 1) t1 = p;
      e.eq("left factor at s0", s0, Rational(3, 8));
      e.eq("right factor at t1", t1, Rational(9, 10));
    } else {
      e.that("factors reported", false);
    }
    Rational p01, p02;
    for (const auto& [x, p] : r.pivot_row) {
      if (u.state_name(x) == "(s0,t1)") p01 = p;
      if (u.state_name(x) == "(s0,t2)") p02 = p;
    }
    e.eq("pivot row at (s0,t1)", p01, Rational(27, 80));
    e.eq("pivot row at (s0,t2)", p02, Rational(3, 80));
    return e.outcome();
  }

  Outcome memoryless_nature() const {
    Expect e;
    RPA u1 = rpa("u1.json"), u2 = rpa("u2.json");
    MoQuery a = query("trivial_ab.json"), g = query("not_acaf.json");
    RPA u = rpa_compose(u1, u2);
    PA n = resolve_nature(u, {{key_of(u, "(s0,t0)", "a"), dist_of(u, {{"(s1,t1)", Rational(9, 10)}, {"(s1,t2)", Rational(1, 10)}})},
                              {key_of(u, "(s1,t0)", "a"), dist_of(u, {{"(s1,t1)", Rational(1, 10)}, {"(s1,t2)", Rational(9, 10)}})}});
    Rational safe = safety_prob_under(n, prob_objective(g).bad, prefer(n, {"frown"}));
    e.eq("violation", 1 - safe, Rational(81, 100));
    auto nm1 = memoryless_nature_model(u1, 4);
    e.eq("premise 1", region_sat(nm1.model, nm1.region, a, {1, StrategyClass::Complete}).status, Status::Holds);
    auto nm2 = memoryless_nature_model(alphabet_extend_rpa(u2, a.alphabet()), 4);
    e.eq("premise 2", ag_triple_check(nm2.model, nm2.region, a, g, {1, StrategyClass::Partial}).status, Status::Holds);
    return e.outcome();
  }

  Outcome non_convex() const {
    Expect e;
    RPA u1 = rpa("u1p.json"), u2 = rpa("u2p.json");
    MoQuery a = query("not_ab_low.json"), g = query("not_ab_high.json");
    RPA u = rpa_compose(u1, u2);
    PA n = resolve_nature(u, {{key_of(u, "(s0,t0)", "a"),
                               dist_of(u, {{"(s0,t1)", Rational(1, 20)}, {"(s0,t2)", Rational(9, 20)},
                                           {"(s1,t1)", Rational(1, 20)}, {"(s1,t2)", Rational(9, 20)}})}});
    e.eq("violation", 1 - safety_prob_under(n, prob_objective(g).bad, prefer(n, {"a", "b"})), Rational(9, 20));
    e.eq("premise 1", region_sat(to_ppa(to_pa(u1)), Region::finite({Valuation{}}), a, {1, StrategyClass::Complete}).status,
         Status::Holds);
    // The convex U2 admits a nature under which A holds and G fails.
    RPA c2 = rpa("u2.json");
    PA n2 = resolve_nature(c2, {{key_of(c2, "t0", "a"), dist_of(c2, {{"t1", Rational(7, 10)}, {"t2", Rational(3, 10)}})}});
    Rational pr = safety_prob_under(n2, prob_objective(g).bad, prefer(n2, {"a", "b"}));
    e.that("convex U2: assumption holds", holds(pr, Cmp::GE, prob_objective(a).threshold));
    e.that("convex U2: guarantee fails", !holds(pr, Cmp::GE, prob_objective(g).threshold));
    return e.outcome();
  }

  // Premise 2 on U2' is refuted under partial strategies.
  Outcome non_convex_premise() const {
    Expect e;
    RPA u2 = rpa("u2p.json");
    MoQuery a = query("not_ab_low.json"), g = query("not_ab_high.json");
    auto nm = memoryless_nature_model(alphabet_extend_rpa(u2, a.alphabet()), 4);
    Verdict v = ag_triple_check(nm.model, nm.region, a, g, {1, StrategyClass::Partial});
    e.eq("premise 2 under partial strategies", v.status, Status::Holds);
    Outcome o = e.outcome();
    if (!o.pass) {
      o.documented = true;
      o.detail = "premise 2 fails under partial strategies: " + o.detail;
    }
    return o;
  }

  Outcome interval_relaxation() const {
    Expect e;
    RPA u1 = rpa("u1.json"), u2 = rpa("u2.json");
    MoQuery a = query("trivial_ab.json"), g = query("no_c.json");
    RPA u = interval_relax_compose(u1, u2);
    auto key = key_of(u, "(s0,t0)", "a");
    const auto& set = u.at(key.first, key.second).set;
    for (const auto& [x, iv] : set.bounds()) {
      const bool left_s0 = u.state_name(x).rfind("(s0", 0) == 0;
      e.eq("lower bound at " + u.state_name(x), iv.lower, left_s0 ? Rational(0) : Rational(1, 20));
      e.eq("upper bound at " + u.state_name(x), iv.upper, left_s0 ? Rational(9, 20) : Rational(9, 10));
    }
    PA n = resolve_nature(u, {{key, dist_of(u, {{"(s0,t1)", Rational(1, 20)}, {"(s1,t1)", Rational(9, 10)},
                                               {"(s1,t2)", Rational(1, 20)}})}});
    Rational safe = safety_prob_under(n, prob_objective(g).bad, prefer(n, {"a", "c"}));
    e.eq("probability of c", 1 - safe, Rational(19, 20));
    e.eq("premise 1", region_sat(to_ppa(pa_reduce(u1)), Region::finite({Valuation{}}), a, {1, StrategyClass::Complete}).status,
         Status::Holds);
    PA red = pa_reduce(alphabet_extend_rpa(u2, a.alphabet()));
    e.eq("premise 2", ag_triple_check(to_ppa(red), Region::finite({Valuation{}}), a, g, {1, StrategyClass::Partial}).status,
         Status::Holds);
    return e.outcome();
  }

  Outcome rpa_rule_convex() const {
    Expect e;
    ScriptRun run = run_proof_script(path("rpa_asym_convex.agproof"));
    e.eq("rule status", run.application.status, Status::Holds);
    if (run.application.conclusion)
      e.eq("direct check of the conclusion", check_conclusion(*run.application.conclusion, run.options).status,
           Status::Holds);
    return e.outcome();
  }

  Outcome simulation() const {
    Expect e;
    PPA m1 = ppa("m1p.json"), m2 = ppa("m2p.json"), m1pp = ppa("m1pp.json");
    Region r = Region::parse("finite:{p=1/10};{p=9/10}");
    e.eq("per-valuation simulation", strong_sim_region(m1, m2, r, 1).status, Status::Holds);
    PA lo1 = instantiate(m1, val({{"p", Rational(1, 10)}})), lo2 = instantiate(m2, val({{"p", Rational(1, 10)}}));
    PA hi1 = instantiate(m1, val({{"p", Rational(9, 10)}})), hi2 = instantiate(m2, val({{"p", Rational(9, 10)}}));
    e.that("relation at p=1/10", is_simulation(lo1, lo2, relation_of(lo1, lo2, {{"s0", "t0"}, {"s1", "t1"}})));
    e.that("relation at p=9/10", is_simulation(hi1, hi2, relation_of(hi1, hi2, {{"s0", "t0"}, {"s1", "t2"}})));
    e.that("no robust relation for M1'", !robust_strong_sim(m1, m2, r, 1).has_value());
    auto rel = robust_strong_sim(m1pp, m2, r, 1);
    e.that("robust relation for M1''", rel.has_value());
    if (rel) e.eq("witness", relation_string(*rel, m1pp.states(), m2.states()), std::string("{(s0,t0), (s1,t1)}"));
    return e.outcome();
  }
};

}  // namespace

bool run_golden_suite(const std::string& dir, std::ostream& out) {
  Suite s{dir};
  const std::vector<std::pair<std::string, std::function<Outcome()>>> anchors{
      {"projection at a shared valuation", [&] { return s.projection_shared(); }},
      {"projection with interleaved steps at 1/10", [&] { return s.projection_interleaved_tenth(); }},
      {"projection under dependent valuations", [&] { return s.projection_dependent(); }},
      {"safety solution function", [&] { return s.solution_function(); }},
      {"asymmetric rule conclusion", [&] { return s.asymmetric_rule(); }},
      {"asymmetric rule outside the premise region", [&] { return s.asymmetric_outside(); }},
      {"direct check of the conclusion box", [&] { return s.direct_check(); }},
      {"monotonicity rule", [&] { return s.monotonicity_rule(); }},
      {"non-convex product membership", [&] { return s.product_membership(); }},
      {"memoryless nature counterexample", [&] { return s.memoryless_nature(); }},
      {"non-convex counterexample", [&] { return s.non_convex(); }},
      {"non-convex counterexample, component premise", [&] { return s.non_convex_premise(); }},
      {"interval relaxation counterexample", [&] { return s.interval_relaxation(); }},
      {"convex rPA asymmetric rule", [&] { return s.rpa_rule_convex(); }},
      {"strong and robust-strong simulation", [&] { return s.simulation(); }},
  };
  bool all = true;
  for (const auto& [name, run] : anchors) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = ex.what();
    }
    const char* tag = o.pass ? "PASS" : o.documented ? "DEVIATION (documented)" : "FAIL";
    out << tag << "  " << name;
    if (!o.pass) out << "  [" << o.detail << "]";
    out << "\n";
    if (!o.pass && !o.documented) all = false;
  }
  return all;
}
