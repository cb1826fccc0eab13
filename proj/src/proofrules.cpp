#include "agv/proofrules.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace agv {

namespace {

constexpr std::array<const char*, 13> kRuleNames = {
    "Asymmetric",   "Circular",      "AsymN",         "Conjunction",  "Interleaving",
    "RewardSum",    "Monotonicity",  "SimulationAG",  "RpaAsymmetric", "RpaCircular",
    "RpaConjunction", "RpaAsymN",    "RpaInterleaving",
};

// Case-insensitive, ignoring '-' and '_': "rpa-asymmetric" names RpaAsymmetric.
std::string rule_key(const std::string& text) {
  std::string out;
  for (char c : text)
    if (c != '-' && c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const char* rule_name(Rule r) { return kRuleNames.at(static_cast<std::size_t>(r)); }

Rule parse_rule(const std::string& text) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (rule_key(text) == rule_key(kRuleNames[i])) return static_cast<Rule>(i);
  fail(ErrorKind::FormatError, "unknown rule '" + text + "'");
}

const char* confidence_name(Confidence c) {
  return c == Confidence::CheckedPerSample ? "CheckedPerSample" : "Attested";
}

const char* premise_kind_name(PremiseKind k) {
  switch (k) {
    case PremiseKind::RegionSat: return "RegionSat";
    case PremiseKind::AgTriple: return "AgTriple";
    case PremiseKind::Monotone: return "Monotone";
    case PremiseKind::SimLeq: return "SimLeq";
    case PremiseKind::Attested: return "Attested";
  }
  return "?";
}

Rational interleaving_threshold(const Rational& p1, const Rational& p2) { return p1 + p2 - p1 * p2; }

RewardObjective reward_sum(const RewardObjective& g1, const RewardObjective& g2) {
  if (g1.cmp != g2.cmp)
    fail(ErrorKind::SideConditionError, "reward guarantees use different comparisons (" + std::string(cmp_symbol(g1.cmp)) +
                                            " and " + cmp_symbol(g2.cmp) + ")");
  RewardObjective out;
  out.name = g1.name + "+" + g2.name;
  out.cmp = g1.cmp;
  out.threshold = g1.threshold + g2.threshold;
  out.reward = g1.reward;
  for (const auto& [a, r] : g2.reward) out.reward[a] = out.reward[a] + r;
  return out;
}

ProbObjective union_objective(const ProbObjective& g1, const ProbObjective& g2, const Rational& threshold) {
  ProbObjective out;
  out.name = g1.name + "|" + g2.name;
  out.cmp = g1.cmp;
  out.threshold = threshold;
  out.bad = DFA::bad_both(g1.bad, g2.bad);
  return out;
}

namespace {

using Alphabet = std::set<std::string>;

Alphabet unite(Alphabet a, const Alphabet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

std::string set_string(const Alphabet& s) {
  std::string out = "{";
  for (const auto& a : s) out += (out.size() > 1 ? "," : "") + a;
  return out + "}";
}

std::string query_string(const MoQuery& q) {
  if (q.empty()) return "true";
  std::string out;
  for (const auto& o : q.objectives) out += (out.empty() ? "" : " & ") + describe(o);
  return out;
}

std::string name_of(const RuleOptions& opt, std::size_t i) {
  return i < opt.names.size() ? opt.names[i] : "M" + std::to_string(i + 1);
}

void require_subset(RuleApplication& app, const Alphabet& sub, const Alphabet& sup, const std::string& what) {
  Alphabet missing;
  for (const auto& a : sub)
    if (!sup.count(a)) missing.insert(a);
  if (!missing.empty())
    fail(ErrorKind::SideConditionError, rule_name(app.rule) + std::string(": ") + what + " violated by " +
                                            set_string(missing));
  app.side_conditions.push_back({what, true});
}

// Graph changes are tolerated on box faces: solution functions are continuous, so
// monotonicity on the interior carries over to the closure.
bool on_face(const Region& r, const Valuation& v) {
  for (const auto& part : r.parts()) {
    const auto* b = std::get_if<Region::Box>(&part);
    if (!b || !Region::box(b->axes, b->constraints).contains(v)) continue;
    for (const auto& [x, iv] : b->axes) {
      auto it = v.find(x);
      if (it != v.end() && (it->second == iv.lower || it->second == iv.upper)) return true;
    }
  }
  return false;
}

void require_graph_preserving(RuleApplication& app, const PPA& m, const Region& r, unsigned resolution,
                              const std::string& what) {
  for (const auto& v : sample_region(r, resolution))
    if (well_defined(m, v) != Definedness::GraphPreserving && !on_face(r, v))
      fail(ErrorKind::NotGraphPreserving, rule_name(app.rule) + std::string(": ") + what + " violated at " +
                                              to_string(v));
  app.side_conditions.push_back({what, true});
}

void require_disjoint(RuleApplication& app, const Alphabet& a, const Alphabet& b, const std::string& what) {
  Alphabet common;
  for (const auto& x : a)
    if (b.count(x)) common.insert(x);
  if (!common.empty())
    fail(ErrorKind::SideConditionError, rule_name(app.rule) + std::string(": ") + what + " violated by " +
                                            set_string(common));
  app.side_conditions.push_back({what, true});
}

bool fair(const RuleOptions& opt) { return opt.fair_attestation.has_value(); }

void require_safe(RuleApplication& app, const RuleOptions& opt, const MoQuery& q, const std::string& what) {
  if (fair(opt)) return;
  if (!q.is_safe())
    fail(ErrorKind::SideConditionError, rule_name(app.rule) + std::string(": ") + what +
                                            " must be a safety mo-query (P>= objectives only)");
  app.side_conditions.push_back({what + " is a safety mo-query", true});
}

void start(RuleApplication& app, Rule rule, const RuleOptions& opt) {
  app.rule = rule;
  if (opt.fair_attestation && opt.fair_attestation->empty())
    fail(ErrorKind::SideConditionError, "fair-strategy variants need a non-empty attestation note");
}

Premise attested(const std::string& statement, const std::string& provenance) {
  Premise p;
  p.kind = PremiseKind::Attested;
  p.statement = statement;
  p.status = Status::Holds;
  p.provenance = provenance;
  return p;
}

Premise from_verdict(PremiseKind kind, const std::string& statement, Verdict v) {
  Premise p;
  p.kind = kind;
  p.statement = statement;
  p.status = v.status;
  p.verdict = std::move(v);
  return p;
}

// Unbounded rewards leave the premise undecided rather than failing the rule.
template <class F>
Premise guarded(PremiseKind kind, const std::string& statement, F&& check) {
  try {
    return from_verdict(kind, statement, check());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnboundedReward) throw;
    Verdict v;
    v.status = Status::Unknown;
    v.detail = e.what();
    return from_verdict(kind, statement, std::move(v));
  }
}

Premise sat_premise(const RuleOptions& opt, const std::string& statement, const PPA& m, const Region& r,
                    const MoQuery& q) {
  if (fair(opt)) return attested(statement, *opt.fair_attestation);
  return guarded(PremiseKind::RegionSat, statement,
                 [&] { return region_sat(m, r, q, {opt.resolution, StrategyClass::Complete}); });
}

Premise triple_premise(const RuleOptions& opt, const std::string& statement, const PPA& m, const Region& r,
                       const MoQuery& a, const MoQuery& g, StrategyClass cls = StrategyClass::Partial) {
  if (fair(opt)) return attested(statement, *opt.fair_attestation);
  return guarded(PremiseKind::AgTriple, statement, [&] { return ag_triple_check(m, r, a, g, {opt.resolution, cls}); });
}

std::string sat_text(const std::string& model, const std::string& region, const MoQuery& q, const RuleOptions& opt) {
  return model + ", " + region + (fair(opt) ? " |=fair " : " |=cmp ") + query_string(q);
}

std::string triple_text(const std::string& model, const std::string& region, const MoQuery& a, const MoQuery& g,
                        const RuleOptions& opt) {
  return "<" + query_string(a) + "> " + model + ", " + region + (fair(opt) ? " fair " : " prt ") + "<" +
         query_string(g) + ">";
}

std::string extended(const std::string& model, const MoQuery& a) {
  return a.alphabet().empty() ? model : model + "[" + set_string(a.alphabet()) + "]";
}

void finish(RuleApplication& app, Conclusion c, const RuleOptions& opt) {
  c.fair = c.fair || fair(opt);
  bool any_attested = c.fair;
  Status st = Status::Holds;
  const Premise* first_bad = nullptr;
  for (const auto& p : app.premises) {
    if (p.kind == PremiseKind::Attested) any_attested = true;
    if (p.status == Status::Fails && st != Status::Fails) {
      st = Status::Fails;
      first_bad = &p;
    } else if (p.status == Status::Unknown && st == Status::Holds) {
      st = Status::Unknown;
      first_bad = &p;
    }
  }
  app.confidence = any_attested ? Confidence::Attested : Confidence::CheckedPerSample;
  if (st != Status::Holds) {
    app.status = st;
    app.note = std::string("premise ") + status_name(st) + ": " + first_bad->statement;
    return;
  }
  app.status = Status::Holds;
  if (c.region.is_empty()) app.note = "conclusion region is empty; the conclusion holds vacuously";
  app.conclusion = std::move(c);
}

}  // namespace

RuleApplication apply_asymmetric(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2, const MoQuery& a,
                                 const MoQuery& g, const RuleOptions& opt) {
  RuleApplication app;
  start(app, Rule::Asymmetric, opt);
  const auto n1 = name_of(opt, 0), n2 = name_of(opt, 1);
  require_subset(app, a.alphabet(), m1.alphabet(), "alphabet(A) within alphabet(" + n1 + ")");
  require_subset(app, g.alphabet(), unite(m2.alphabet(), a.alphabet()),
                 "alphabet(G) within alphabet(" + n2 + ") and alphabet(A)");
  require_safe(app, opt, a, "A");
  require_safe(app, opt, g, "G");
  app.premises.push_back(sat_premise(opt, sat_text(n1, "R1", a, opt), m1, r1, a));
  app.premises.push_back(
      triple_premise(opt, triple_text(extended(n2, a), "R2", a, g, opt), alphabet_extend(m2, a.alphabet()), r2, a, g));
  Conclusion c;
  c.kind = ConclusionKind::Satisfies;
  c.model = compose(m1, m2);
  c.region = intersect(r1, r2);
  c.guarantee = g;
  c.statement = sat_text(n1 + " || " + n2, "R1 & R2", g, opt);
  finish(app, std::move(c), opt);
  return app;
}

RuleApplication apply_circular(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2, const Region& r3,
                               const MoQuery& a1, const MoQuery& a2, const MoQuery& g, const RuleOptions& opt) {
  RuleApplication app;
  start(app, Rule::Circular, opt);
  const auto n1 = name_of(opt, 0), n2 = name_of(opt, 1);
  require_subset(app, a1.alphabet(), m2.alphabet(), "alphabet(A1) within alphabet(" + n2 + ")");
  require_subset(app, a2.alphabet(), unite(m1.alphabet(), a1.alphabet()),
                 "alphabet(A2) within alphabet(" + n1 + ") and alphabet(A1)");
  require_subset(app, g.alphabet(), unite(m2.alphabet(), a2.alphabet()),
                 "alphabet(G) within alphabet(" + n2 + ") and alphabet(A2)");
  require_safe(app, opt, a1, "A1");
  require_safe(app, opt, a2, "A2");
  require_safe(app, opt, g, "G");
  app.premises.push_back(sat_premise(opt, sat_text(n2, "R3", a1, opt), m2, r3, a1));
  app.premises.push_back(triple_premise(opt, triple_text(extended(n1, a1), "R1", a1, a2, opt),
                                        alphabet_extend(m1, a1.alphabet()), r1, a1, a2));
  app.premises.push_back(triple_premise(opt, triple_text(extended(n2, a2), "R2", a2, g, opt),
                                        alphabet_extend(m2, a2.alphabet()), r2, a2, g));
  Conclusion c;
  c.kind = ConclusionKind::Satisfies;
  c.model = compose(m1, m2);
  c.region = intersect(intersect(r1, r2), r3);
  c.guarantee = g;
  c.statement = sat_text(n1 + " || " + n2, "R1 & R2 & R3", g, opt);
  finish(app, std::move(c), opt);
  return app;
}

RuleApplication apply_asym_n(const std::vector<PPA>& models, const std::vector<Region>& regions,
                             const std::vector<MoQuery>& as, const MoQuery& g, const RuleOptions& opt) {
  RuleApplication app;
  start(app, Rule::AsymN, opt);
  const std::size_t n = models.size();
  if (n < 2 || regions.size() != n || as.size() != n - 1)
    fail(ErrorKind::InvalidArgument, "AsymN needs n >= 2 models, n regions and n-1 assumptions");
  require_subset(app, as[0].alphabet(), models[0].alphabet(), "alphabet(A1) within alphabet(" + name_of(opt, 0) + ")");
  for (std::size_t i = 1; i < n; ++i) {
    const MoQuery& next = i + 1 < n ? as[i] : g;
    const std::string label = i + 1 < n ? "A" + std::to_string(i + 1) : "G";
    require_subset(app, next.alphabet(), unite(models[i].alphabet(), as[i - 1].alphabet()),
                   "alphabet(" + label + ") within alphabet(" + name_of(opt, i) + ") and alphabet(A" +
                       std::to_string(i) + ")");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) require_safe(app, opt, as[i], "A" + std::to_string(i + 1));
  require_safe(app, opt, g, "G");
  app.premises.push_back(sat_premise(opt, sat_text(name_of(opt, 0), "R1", as[0], opt), models[0], regions[0], as[0]));
  for (std::size_t i = 1; i < n; ++i) {
    const MoQuery& next = i + 1 < n ? as[i] : g;
    app.premises.push_back(triple_premise(
        opt, triple_text(extended(name_of(opt, i), as[i - 1]), "R" + std::to_string(i + 1), as[i - 1], next, opt),
        alphabet_extend(models[i], as[i - 1].alphabet()), regions[i], as[i - 1], next));
  }
  Conclusion c;
  c.kind = ConclusionKind::Satisfies;
  c.model = models[0];
  c.region = regions[0];
  std::string names = name_of(opt, 0), rs = "R1";
  for (std::size_t i = 1; i < n; ++i) {
    c.model = compose(c.model, models[i]);
    c.region = intersect(c.region, regions[i]);
    names += " || " + name_of(opt, i);
    rs += " & R" + std::to_string(i + 1);
  }
  c.guarantee = g;
  c.statement = sat_text(names, rs, g, opt);
  finish(app, std::move(c), opt);
  return app;
}

RuleApplication apply_conjunction(const PPA& m, const Region& r1, const Region& r2, const MoQuery& a1,
                                  const MoQuery& g1, const MoQuery& a2, const MoQuery& g2, const RuleOptions& opt) {
  RuleApplication app;
  start(app, Rule::Conjunction, opt);
  const auto n = name_of(opt, 0);
  require_subset(app, g1.alphabet(), unite(m.alphabet(), a1.alphabet()),
                 "alphabet(G1) within alphabet(" + n + ") and alphabet(A1)");
  require_subset(app, g2.alphabet(), unite(m.alphabet(), a2.alphabet()),
                 "alphabet(G2) within alphabet(" + n + ") and alphabet(A2)");
  for (const auto& [q, label] : {std::pair{&a1, "A1"}, {&g1, "G1"}, {&a2, "A2"}, {&g2, "G2"}})
    require_safe(app, opt, *q, label);
  app.premises.push_back(triple_premise(opt, triple_text(extended(n, a1), "R1", a1, g1, opt),
                                        alphabet_extend(m, a1.alphabet()), r1, a1, g1));
  app.premises.push_back(triple_premise(opt, triple_text(extended(n, a2), "R2", a2, g2, opt),
                                        alphabet_extend(m, a2.alphabet()), r2, a2, g2));
  Conclusion c;
  c.kind = ConclusionKind::Triple;
  c.assumption = a1 + a2;
  c.guarantee = g1 + g2;
  c.model = alphabet_extend(m, c.assumption.alphabet());
  c.region = intersect(r1, r2);
  c.cls = StrategyClass::Partial;
  c.statement = triple_text(extended(n, c.assumption), "R1 & R2", c.assumption, c.guarantee, opt);
  finish(app, std::move(c), opt);
  return app;
}

RuleApplication apply_interleaving(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2,
                                   const MoQuery& a1, const MoQuery& a2, const ProbObjective& g1,
                                   const ProbObjective& g2, const RuleOptions& opt) {
  RuleApplication app;
  start(app, Rule::Interleaving, opt);
  const auto n1 = name_of(opt, 0), n2 = name_of(opt, 1);
  require_disjoint(app, unite(m1.alphabet(), a1.alphabet()), unite(m2.alphabet(), a2.alphabet()),
                   "alphabet(" + n1 + ") and alphabet(A1) disjoint from alphabet(" + n2 + ") and alphabet(A2)");
  MoQuery q1{{g1}}, q2{{g2}};
  require_subset(app, q1.alphabet(), unite(m1.alphabet(), a1.alphabet()),
                 "alphabet(L1) within alphabet(" + n1 + ") and alphabet(A1)");
  require_subset(app, q2.alphabet(), unite(m2.alphabet(), a2.alphabet()),
                 "alphabet(L2) within alphabet(" + n2 + ") and alphabet(A2)");
  if (g1.cmp != g2.cmp) fail(ErrorKind::SideConditionError, "Interleaving: guarantees use different comparisons");
  require_safe(app, opt, a1, "A1");
  require_safe(app, opt, a2, "A2");
  require_safe(app, opt, q1, "G1");
  require_safe(app, opt, q2, "G2");
  app.premises.push_back(triple_premise(opt, triple_text(extended(n1, a1), "R1", a1, q1, opt),
                                        alphabet_extend(m1, a1.alphabet()), r1, a1, q1));
  app.premises.push_back(triple_premise(opt, triple_text(extended(n2, a2), "R2", a2, q2, opt),
                                        alphabet_extend(m2, a2.alphabet()), r2, a2, q2));
  Conclusion c;
  c.kind = ConclusionKind::Triple;
  c.assumption = a1 + a2;
  c.guarantee = MoQuery{{union_objective(g1, g2, interleaving_threshold(g1.threshold, g2.threshold))}};
  c.model = alphabet_extend(compose(m1, m2), c.assumption.alphabet());
  c.region = intersect(r1, r2);
  c.cls = StrategyClass::Partial;
  c.statement =
      triple_text(extended("(" + n1 + " || " + n2 + ")", c.assumption), "R1 & R2", c.assumption, c.guarantee, opt);
  finish(app, std::move(c), opt);
  return app;
}

RuleApplication apply_reward_sum(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2, const MoQuery& a1,
                                 const MoQuery& a2, const RewardObjective& g1, const RewardObjective& g2,
                                 const RuleOptions& opt) {
  RuleApplication app;
  start(app, Rule::RewardSum, opt);
  const auto n1 = name_of(opt, 0), n2 = name_of(opt, 1);
  MoQuery q1{{g1}}, q2{{g2}};
  require_subset(app, q1.alphabet(), unite(m1.alphabet(), a1.alphabet()),
                 "alphabet(R1) within alphabet(" + n1 + ") and alphabet(A1)");
  require_subset(app, q2.alphabet(), unite(m2.alphabet(), a2.alphabet()),
                 "alphabet(R2) within alphabet(" + n2 + ") and alphabet(A2)");
  RewardObjective sum = reward_sum(g1, g2);
  app.side_conditions.push_back({"guarantees share the comparison " + std::string(cmp_symbol(g1.cmp)), true});
  // The rule quantifies over fair strategies. Without an attestation the premises are
  // checked over all complete strategies, which include the fair ones.
  auto premise = [&](const std::string& model, const std::string& region, const PPA& m, const Region& r,
                     const MoQuery& a, const MoQuery& g) {
    std::string text = "<" + query_string(a) + "> " + extended(model, a) + ", " + region + " fair <" +
                       query_string(g) + ">";
    if (fair(opt)) return attested(text, *opt.fair_attestation);
    return guarded(PremiseKind::AgTriple, text + " (checked over complete strategies)", [&] {
      return ag_triple_check(alphabet_extend(m, a.alphabet()), r, a, g, {opt.resolution, StrategyClass::Complete});
    });
  };
  app.premises.push_back(premise(n1, "R1", m1, r1, a1, q1));
  app.premises.push_back(premise(n2, "R2", m2, r2, a2, q2));
  Conclusion c;
  c.kind = ConclusionKind::Triple;
  c.fair = true;
  c.assumption = a1 + a2;
  c.guarantee = MoQuery{{sum}};
  c.model = alphabet_extend(compose(m1, m2), c.assumption.alphabet());
  c.region = intersect(r1, r2);
  c.statement = "<" + query_string(c.assumption) + "> " + extended("(" + n1 + " || " + n2 + ")", c.assumption) +
                ", R1 & R2 fair <" + query_string(c.guarantee) + ">";
  finish(app, std::move(c), opt);
  return app;
}

RuleApplication apply_monotonicity(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2,
                                   const Objective& o, const std::string& param, Direction dir,
                                   const RuleOptions& opt) {
  RuleApplication app;
  start(app, Rule::Monotonicity, opt);
  const auto n1 = name_of(opt, 0), n2 = name_of(opt, 1);
  const Alphabet sigma = objective_alphabet(o);
  require_subset(app, sigma, unite(m1.alphabet(), m2.alphabet()),
                 "alphabet(objective) within alphabet(" + n1 + ") and alphabet(" + n2 + ")");
  const std::string arrow = dir == Direction::Increasing ? "increasing" : "decreasing";
  auto text = [&](const std::string& model, const std::string& region) {
    return describe(o) + " on " + model + "[" + set_string(sigma) + "], " + region + " is " + arrow + " in " + param +
           (fair(opt) ? " (fair)" : " (prt)");
  };
  MonotoneOptions mo = opt.monotone;
  mo.cls = StrategyClass::Partial;
  require_graph_preserving(app, m1, r1, mo.resolution, "R1 graph-preserving for " + n1 + " away from box faces");
  require_graph_preserving(app, m2, r2, mo.resolution, "R2 graph-preserving for " + n2 + " away from box faces");
  for (const auto& [m, r, name, rn] : {std::tuple{&m1, &r1, n1, "R1"}, std::tuple{&m2, &r2, n2, "R2"}}) {
    if (fair(opt)) {
      app.premises.push_back(attested(text(name, rn), *opt.fair_attestation));
      continue;
    }
    Verdict v = monotone_check(alphabet_extend(*m, sigma), *r, o, param, dir, mo);
    app.premises.push_back(from_verdict(PremiseKind::Monotone, text(name, rn), std::move(v)));
  }
  Conclusion c;
  c.kind = ConclusionKind::Monotone;
  c.model = compose(m1, m2);
  c.region = intersect(r1, r2);
  c.cls = StrategyClass::Partial;
  c.objective = o;
  c.param = param;
  c.direction = dir;
  c.statement = describe(o) + " on " + n1 + " || " + n2 + ", R1 & R2 is " + arrow + " in " + param +
                (fair(opt) ? " (fair)" : " (prt)");
  finish(app, std::move(c), opt);
  return app;
}

namespace {

Verdict simulation_verdict(const PPA& a, const PPA& b, const Region& r, bool robust, unsigned resolution) {
  if (!robust) return strong_sim_region(a, b, r, resolution);
  Verdict v;
  v.caveat = kSampleCaveat;
  auto rel = robust_strong_sim(a, b, r, resolution);
  if (rel) {
    v.detail = "uniform relation " + relation_string(*rel, a.states(), b.states());
  } else {
    v.status = Status::Fails;
    v.detail = "no single relation is a strong simulation at every sampled valuation";
  }
  return v;
}

}  // namespace

RuleApplication apply_simulation_ag(const PPA& m1, const PPA& m2, const PPA& ma, const PPA& mg, const Region& r1,
                                    const Region& r2, bool robust, const RuleOptions& opt) {
  RuleApplication app;
  start(app, Rule::SimulationAG, opt);
  const auto n1 = name_of(opt, 0), n2 = name_of(opt, 1), na = name_of(opt, 2), ng = name_of(opt, 3);
  require_subset(app, ma.alphabet(), m1.alphabet(), "alphabet(" + na + ") within alphabet(" + n1 + ")");
  const std::string rel = robust ? " <=robust " : " <= ";
  app.premises.push_back(from_verdict(PremiseKind::SimLeq, n1 + rel + na + " on R1",
                                      simulation_verdict(m1, ma, r1, robust, opt.resolution)));
  app.premises.push_back(from_verdict(PremiseKind::SimLeq, n2 + " || " + na + rel + ng + " on R2",
                                      simulation_verdict(compose(m2, ma), mg, r2, robust, opt.resolution)));
  Conclusion c;
  c.kind = ConclusionKind::Simulation;
  c.model = compose(m1, m2);
  c.spec = mg;
  c.robust = robust;
  c.region = intersect(r1, r2);
  c.statement = n1 + " || " + n2 + rel + ng + " on R1 & R2";
  finish(app, std::move(c), opt);
  return app;
}

namespace {

PPA reduced(const RPA& u) { return to_ppa(pa_reduce(u)); }

Region unit_region() { return Region::finite({Valuation{}}); }

RPA conv_all(const std::vector<RPA>& us) {
  RPA out = us.front();
  for (std::size_t i = 1; i < us.size(); ++i) out = conv_compose(out, us[i]);
  return out;
}

void require_polytopic(const std::vector<const RPA*>& us) {
  for (const auto* u : us)
    if (!u->is_polytopic()) fail(ErrorKind::NonPolytopicComponent, "rPA rules need polytopic components");
}

void to_rpa_conclusion(RuleApplication& app, Rule rule, PPA model) {
  app.rule = rule;
  if (!app.conclusion) return;
  app.conclusion->model = std::move(model);
  app.conclusion->statement += " on the convex composition, which over-approximates the standard composition";
}

}  // namespace

RuleApplication apply_rpa_asymmetric(const RPA& u1, const RPA& u2, const MoQuery& a, const MoQuery& g,
                                     const RuleOptions& opt) {
  require_polytopic({&u1, &u2});
  auto app = apply_asymmetric(reduced(u1), reduced(u2), unit_region(), unit_region(), a, g, opt);
  to_rpa_conclusion(app, Rule::RpaAsymmetric, reduced(conv_compose(u1, u2)));
  return app;
}

RuleApplication apply_rpa_circular(const RPA& u1, const RPA& u2, const MoQuery& a1, const MoQuery& a2,
                                   const MoQuery& g, const RuleOptions& opt) {
  require_polytopic({&u1, &u2});
  auto app = apply_circular(reduced(u1), reduced(u2), unit_region(), unit_region(), unit_region(), a1, a2, g, opt);
  to_rpa_conclusion(app, Rule::RpaCircular, reduced(conv_compose(u1, u2)));
  return app;
}

RuleApplication apply_rpa_asym_n(const std::vector<RPA>& us, const std::vector<MoQuery>& as, const MoQuery& g,
                                 const RuleOptions& opt) {
  if (us.size() < 2) fail(ErrorKind::InvalidArgument, "AsymN needs n >= 2 models");
  std::vector<PPA> models;
  for (const auto& u : us) {
    require_polytopic({&u});
    models.push_back(reduced(u));
  }
  auto app = apply_asym_n(models, std::vector<Region>(us.size(), unit_region()), as, g, opt);
  to_rpa_conclusion(app, Rule::RpaAsymN, reduced(conv_all(us)));
  return app;
}

RuleApplication apply_rpa_conjunction(const RPA& u, const MoQuery& a1, const MoQuery& g1, const MoQuery& a2,
                                      const MoQuery& g2, const RuleOptions& opt) {
  require_polytopic({&u});
  auto app = apply_conjunction(reduced(u), unit_region(), unit_region(), a1, g1, a2, g2, opt);
  app.rule = Rule::RpaConjunction;
  return app;
}

RuleApplication apply_rpa_interleaving(const RPA& u1, const RPA& u2, const MoQuery& a1, const MoQuery& a2,
                                       const ProbObjective& g1, const ProbObjective& g2, const RuleOptions& opt) {
  require_polytopic({&u1, &u2});
  auto app = apply_interleaving(reduced(u1), reduced(u2), unit_region(), unit_region(), a1, a2, g1, g2, opt);
  to_rpa_conclusion(app, Rule::RpaInterleaving,
                    alphabet_extend(reduced(conv_compose(u1, u2)), (a1 + a2).alphabet()));
  return app;
}

Verdict check_conclusion(const Conclusion& c, const RuleOptions& opt) {
  if (c.fair) {
    Verdict v;
    v.status = Status::Unknown;
    v.detail = "conclusions over fair strategies are not checked directly";
    return v;
  }
  const CheckOptions co{opt.resolution, c.cls};
  switch (c.kind) {
    case ConclusionKind::Satisfies: return region_sat(c.model, c.region, c.guarantee, co);
    case ConclusionKind::Triple: return ag_triple_check(c.model, c.region, c.assumption, c.guarantee, co);
    case ConclusionKind::Monotone: {
      MonotoneOptions mo = opt.monotone;
      mo.cls = c.cls;
      return monotone_check(c.model, c.region, *c.objective, c.param, c.direction, mo);
    }
    case ConclusionKind::Simulation: return simulation_verdict(c.model, *c.spec, c.region, c.robust, opt.resolution);
  }
  return {};
}

}  // namespace agv
