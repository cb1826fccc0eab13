#include "agv/io_json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace agv {

namespace {

constexpr const char* kFormat = "agv/1";

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::FormatError, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_string()) fail(ErrorKind::FormatError, std::string("field '") + key + "' must be a string");
  return f.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const Json& f = j.at(key);
  if (!f.is_array()) fail(ErrorKind::FormatError, std::string("field '") + key + "' must be an array");
  for (const auto& x : f) {
    if (!x.is_string()) fail(ErrorKind::FormatError, std::string("field '") + key + "' must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

void expect_kind(const Json& j, const std::string& kind) {
  if (j.contains("kind") && j.at("kind") != kind)
    fail(ErrorKind::FormatError, "expected a document of kind '" + kind + "'");
}

Polynomial polynomial_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Polynomial(Rational(j.get<long>()));
  if (!j.is_string()) fail(ErrorKind::FormatError, where + ": probabilities must be strings");
  const auto text = j.get<std::string>();
  try {
    return Polynomial::parse(text);
  } catch (const ParseFailure& e) {
    throw ParseFailure(where + ": bad polynomial '" + text + "'", e.position());
  }
}

Json states_of(const std::vector<std::string>& names) { return Json(names); }

Json alphabet_of(const std::set<std::string>& sigma) { return Json(std::vector<std::string>(sigma.begin(), sigma.end())); }

Json composition_json(const CompositionInfo& c) {
  Json j;
  Json states = Json::array(), actions = Json::array();
  for (const auto& [a, b] : c.state_parts) states.push_back({a, b});
  for (const auto& [a, b] : c.action_parts) actions.push_back({a, b});
  j["state_parts"] = states;
  j["action_parts"] = actions;
  j["left_initial"] = c.left_initial;
  j["right_initial"] = c.right_initial;
  return j;
}

CompositionInfo composition_from_json(const Json& j) {
  CompositionInfo c;
  for (const auto& p : field(j, "state_parts")) c.state_parts.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  for (const auto& p : field(j, "action_parts")) c.action_parts.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  c.left_initial = j.value("left_initial", 0);
  c.right_initial = j.value("right_initial", 0);
  return c;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonSyntaxError("malformed JSON", e.byte > 0 ? e.byte - 1 : 0);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::FormatError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(ErrorKind::FormatError, "rationals must be strings such as \"9/10\"");
  return parse_rational(j.get<std::string>());
}

Json to_json(const Valuation& v) {
  Json j = Json::object();
  for (const auto& [p, x] : v) j[p] = to_string(x);
  return j;
}

Json to_json(const PPA& m) {
  Json j;
  j["format"] = kFormat;
  j["kind"] = "ppa";
  j["parameters"] = alphabet_of(m.params());
  j["alphabet"] = alphabet_of(m.alphabet());
  j["states"] = states_of(m.states());
  j["initial"] = m.state_name(m.initial());
  j["actions"] = states_of(m.actions());
  Json ts = Json::array();
  for (const auto& [key, t] : m.transitions()) {
    Json to = Json::object();
    for (const auto& [x, p] : t.dist) to[m.state_name(x)] = p.to_string();
    ts.push_back({{"state", m.state_name(key.first)}, {"action", m.action_name(key.second)}, {"label", t.label}, {"to", to}});
  }
  j["transitions"] = ts;
  if (m.composition) j["composition"] = composition_json(*m.composition);
  return j;
}

PPA ppa_from_json(const Json& j) {
  expect_kind(j, "ppa");
  PPA m;
  for (const auto& s : string_list(j, "states")) m.add_state(s);
  if (m.num_states() == 0) fail(ErrorKind::FormatError, "model has no states");
  for (const auto& a : string_list(j, "actions")) m.add_action(a);
  for (const auto& p : string_list(j, "parameters")) m.add_parameter(p);
  for (const auto& a : string_list(j, "alphabet")) m.add_symbol(a);
  m.set_initial(j.contains("initial") ? m.state(text_field(j, "initial")) : 0);
  for (const auto& t : field(j, "transitions")) {
    const auto s = text_field(t, "state"), a = text_field(t, "action");
    const auto label = t.contains("label") ? text_field(t, "label") : a;
    const std::string where = "transition (" + s + ", " + a + ")";
    std::vector<std::pair<int, Polynomial>> dist;
    for (const auto& [target, p] : field(t, "to").items()) {
      Polynomial poly = polynomial_from_json(p, where);
      for (const auto& x : poly.parameters())
        if (!m.params().count(x)) fail(ErrorKind::FormatError, where + ": undeclared parameter '" + x + "'");
      dist.emplace_back(m.state(target), std::move(poly));
    }
    std::sort(dist.begin(), dist.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    m.set_transition(m.state(s), m.add_action(a), label, std::move(dist));
  }
  if (j.contains("composition")) m.composition = composition_from_json(j.at("composition"));
  return m;
}

namespace {

Json dist_json(const Dist& d, const std::vector<std::string>& names) {
  Json j = Json::object();
  for (const auto& [x, p] : d) j[names.at(x)] = to_string(p);
  return j;
}

Dist dist_from_json(const Json& j, const RPA& u) {
  Dist d;
  for (const auto& [target, p] : j.items()) d.emplace_back(u.state(target), rational_from_json(p));
  return normalize_dist(std::move(d));
}

Json set_json(const UncertaintySet& set, const std::vector<std::string>& names) {
  Json j;
  switch (set.kind()) {
    case UncertaintySet::Kind::Interval: {
      Json b = Json::object();
      for (const auto& [x, iv] : set.bounds()) b[names.at(x)] = {to_string(iv.lower), to_string(iv.upper)};
      j["interval"] = b;
      break;
    }
    case UncertaintySet::Kind::Vertices: {
      if (set.is_singleton()) {
        j["dist"] = dist_json(set.points().front(), names);
        break;
      }
      Json pts = Json::array();
      for (const auto& p : set.points()) pts.push_back(dist_json(p, names));
      j["vertices"] = pts;
      j["convex"] = set.convex();
      break;
    }
    case UncertaintySet::Kind::Product: {
      // Products are written through their generators; composing again restores them.
      Json pts = Json::array();
      for (const auto& p : set.generators()) pts.push_back(dist_json(p, names));
      j["vertices"] = pts;
      j["convex"] = set.is_polytopic();
      break;
    }
  }
  return j;
}

}  // namespace

Json to_json(const RPA& u) {
  Json j;
  j["format"] = kFormat;
  j["kind"] = "rpa";
  j["alphabet"] = alphabet_of(u.alphabet());
  j["states"] = states_of(u.states());
  j["initial"] = u.state_name(u.initial());
  j["actions"] = states_of(u.actions());
  Json ts = Json::array();
  for (const auto& [key, t] : u.transitions()) {
    Json e = {{"state", u.state_name(key.first)}, {"action", u.action_name(key.second)}, {"label", t.label}};
    e.update(set_json(t.set, u.states()));
    ts.push_back(e);
  }
  j["transitions"] = ts;
  return j;
}

RPA rpa_from_json(const Json& j) {
  expect_kind(j, "rpa");
  RPA u;
  for (const auto& s : string_list(j, "states")) u.add_state(s);
  if (u.num_states() == 0) fail(ErrorKind::FormatError, "model has no states");
  for (const auto& a : string_list(j, "actions")) u.add_action(a);
  for (const auto& a : string_list(j, "alphabet")) u.add_symbol(a);
  u.set_initial(j.contains("initial") ? u.state(text_field(j, "initial")) : 0);
  for (const auto& t : field(j, "transitions")) {
    const auto s = text_field(t, "state"), a = text_field(t, "action");
    const auto label = t.contains("label") ? text_field(t, "label") : a;
    std::optional<UncertaintySet> set;
    if (t.contains("interval")) {
      std::vector<std::pair<int, Interval>> bounds;
      for (const auto& [target, b] : t.at("interval").items()) {
        if (!b.is_array() || b.size() != 2) fail(ErrorKind::FormatError, "interval bounds must be [lower, upper]");
        bounds.push_back({u.state(target), {rational_from_json(b.at(0)), rational_from_json(b.at(1))}});
      }
      set = UncertaintySet::interval(std::move(bounds));
    } else if (t.contains("vertices")) {
      std::vector<Dist> pts;
      for (const auto& p : t.at("vertices")) pts.push_back(dist_from_json(p, u));
      set = UncertaintySet::vertices(std::move(pts), t.value("convex", true));
    } else if (t.contains("dist")) {
      set = UncertaintySet::vertices({dist_from_json(t.at("dist"), u)});
    } else {
      fail(ErrorKind::FormatError, "transition (" + s + ", " + a + ") needs interval, vertices or dist");
    }
    u.set_transition(u.state(s), u.add_action(a), label, std::move(*set));
  }
  return u;
}

Json to_json(const DFA& d) {
  Json j;
  j["format"] = kFormat;
  j["kind"] = "dfa";
  j["alphabet"] = alphabet_of(d.alphabet());
  Json states = Json::array();
  for (int q = 0; q < d.num_states(); ++q) states.push_back({{"name", d.states()[q]}, {"accepting", d.accepting(q)}});
  j["states"] = states;
  j["initial"] = d.states()[d.initial()];
  Json ts = Json::array();
  for (int q = 0; q < d.num_states(); ++q)
    for (const auto& a : d.alphabet()) ts.push_back({{"from", d.states()[q]}, {"symbol", a}, {"to", d.states()[d.step(q, a)]}});
  j["transitions"] = ts;
  return j;
}

DFA dfa_from_json(const Json& j) {
  expect_kind(j, "dfa");
  const auto sigma_list = string_list(j, "alphabet");
  const std::set<std::string> sigma(sigma_list.begin(), sigma_list.end());
  if (j.contains("bad_prefix")) return DFA::bad_prefix(string_list(j, "bad_prefix"), sigma);
  if (j.contains("bad_count")) {
    const Json& c = j.at("bad_count");
    return DFA::bad_count(text_field(c, "symbol"), field(c, "count").get<unsigned>(), sigma);
  }
  if (j.value("accept_nothing", false)) return DFA::accept_nothing(sigma);
  DFA d;
  for (const auto& s : field(j, "states")) d.add_state(text_field(s, "name"), s.value("accepting", false));
  for (const auto& a : sigma) d.add_symbol(a);
  d.set_initial(j.contains("initial") ? d.state(text_field(j, "initial")) : 0);
  for (const auto& t : field(j, "transitions"))
    d.set_transition(d.state(text_field(t, "from")), text_field(t, "symbol"), d.state(text_field(t, "to")));
  d.check_total();
  return d;
}

Json to_json(const Objective& o) {
  Json j;
  std::visit(
      [&](const auto& x) {
        j["name"] = x.name;
        j["cmp"] = cmp_symbol(x.cmp);
        j["threshold"] = to_string(x.threshold);
      },
      o);
  if (const auto* p = std::get_if<ProbObjective>(&o)) {
    j["type"] = "probability";
    j["bad"] = to_json(p->bad);
  } else {
    const auto& r = std::get<RewardObjective>(o);
    j["type"] = "reward";
    Json rw = Json::object();
    for (const auto& [a, poly] : r.reward) rw[a] = poly.to_string();
    j["reward"] = rw;
  }
  return j;
}

Objective objective_from_json(const Json& j) {
  const auto type = text_field(j, "type");
  const auto name = j.value("name", std::string(type == "reward" ? "R" : "L"));
  const Cmp cmp = parse_cmp(j.value("cmp", std::string(">=")));
  const Rational threshold = rational_from_json(field(j, "threshold"));
  if (type == "probability") return ProbObjective{name, cmp, threshold, dfa_from_json(field(j, "bad"))};
  if (type == "reward") {
    RewardObjective r{name, cmp, threshold, {}};
    for (const auto& [a, p] : field(j, "reward").items()) r.reward[a] = polynomial_from_json(p, "reward of '" + a + "'");
    return r;
  }
  fail(ErrorKind::FormatError, "objective type must be 'probability' or 'reward'");
}

Json to_json(const MoQuery& q) {
  Json j;
  j["format"] = kFormat;
  j["kind"] = "query";
  Json os = Json::array();
  for (const auto& o : q.objectives) os.push_back(to_json(o));
  j["objectives"] = os;
  return j;
}

MoQuery query_from_json(const Json& j) {
  expect_kind(j, "query");
  MoQuery q;
  if (j.contains("type")) {
    q.objectives.push_back(objective_from_json(j));
    return q;
  }
  for (const auto& o : field(j, "objectives")) q.objectives.push_back(objective_from_json(o));
  return q;
}

Json to_json(const MoWitness& w) {
  Json j;
  Json rows = Json::array();
  for (std::size_t x = 0; x < w.states.size(); ++x) {
    Json c = Json::object();
    for (const auto& [a, p] : w.choice[x]) c[a] = to_string(p);
    Json row = {{"state", w.states[x]}, {"choice", c}};
    if (w.stay[x] != 0) row["stay"] = to_string(w.stay[x]);
    if (!c.empty() || w.stay[x] != 0) rows.push_back(row);
  }
  j["strategy"] = rows;
  Json vals = Json::array();
  for (const auto& v : w.values) vals.push_back(to_string(v));
  j["values"] = vals;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = status_name(v.status);
  if (v.valuation) j["valuation"] = to_json(*v.valuation);
  if (v.valuation2) j["valuation2"] = to_json(*v.valuation2);
  if (!v.detail.empty()) j["detail"] = v.detail;
  if (v.witness) j["witness"] = to_json(*v.witness);
  Json samples = Json::array();
  for (const auto& s : v.samples) {
    Json e = {{"valuation", to_json(s.valuation)}, {"status", status_name(s.status)}};
    if (!s.note.empty()) e["note"] = s.note;
    samples.push_back(e);
  }
  j["samples"] = samples;
  if (!v.caveat.empty()) j["caveat"] = v.caveat;
  return j;
}

Json to_json(const RuleApplication& app) {
  Json j;
  j["rule"] = rule_name(app.rule);
  j["status"] = status_name(app.status);
  j["confidence"] = confidence_name(app.confidence);
  Json sides = Json::array();
  for (const auto& s : app.side_conditions) sides.push_back({{"condition", s.statement}, {"ok", s.ok}});
  j["side_conditions"] = sides;
  Json premises = Json::array();
  for (const auto& p : app.premises) {
    Json e = {{"kind", premise_kind_name(p.kind)}, {"statement", p.statement}, {"status", status_name(p.status)}};
    if (!p.provenance.empty()) e["provenance"] = p.provenance;
    if (p.verdict) e["verdict"] = to_json(*p.verdict);
    premises.push_back(e);
  }
  j["premises"] = premises;
  if (app.conclusion) {
    const auto& c = *app.conclusion;
    j["conclusion"] = {{"statement", c.statement},
                       {"region", c.region.to_string()},
                       {"class", c.fair ? "fair" : class_name(c.cls)}};
  }
  if (!app.note.empty()) j["note"] = app.note;
  return j;
}

Json relation_json(const SimRelation& rel, const std::vector<std::string>& left, const std::vector<std::string>& right) {
  Json j = Json::array();
  for (const auto& [s, t] : rel) j.push_back({left.at(s), right.at(t)});
  return j;
}

namespace {

// Type errors inside well-formed JSON become format errors.
template <class F>
auto shape_checked(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::FormatError, std::string("unexpected document shape: ") + e.what());
  }
}

}  // namespace

PPA parse_ppa(const std::string& text) {
  return shape_checked([&] { return ppa_from_json(parse_json(text)); });
}
RPA parse_rpa(const std::string& text) {
  return shape_checked([&] { return rpa_from_json(parse_json(text)); });
}
DFA parse_dfa(const std::string& text) {
  return shape_checked([&] { return dfa_from_json(parse_json(text)); });
}
MoQuery parse_query(const std::string& text) {
  return shape_checked([&] { return query_from_json(parse_json(text)); });
}

std::string write_ppa(const PPA& m) { return dump(to_json(m)); }
std::string write_rpa(const RPA& u) { return dump(to_json(u)); }
std::string write_dfa(const DFA& d) { return dump(to_json(d)); }
std::string write_query(const MoQuery& q) { return dump(to_json(q)); }

PPA load_ppa(const std::string& path) { return parse_ppa(read_text_file(path)); }
RPA load_rpa(const std::string& path) { return parse_rpa(read_text_file(path)); }
MoQuery load_query(const std::string& path) { return parse_query(read_text_file(path)); }

namespace {

class Script {
 public:
  explicit Script(const std::string& path) : dir_(std::filesystem::path(path).parent_path()) {
    doc_ = parse_json(read_text_file(path));
    expect_kind(doc_, "proof");
  }

  const Json& doc() const { return doc_; }

  // A string is a path relative to the script; an object is an inline document.
  Json resolve(const Json& ref) const {
    if (ref.is_string()) return parse_json(read_text_file((dir_ / ref.get<std::string>()).string()));
    return ref;
  }

  bool has(const char* section, const std::string& key) const {
    return doc_.contains(section) && doc_.at(section).contains(key);
  }
  Json entry(const char* section, const std::string& key) const {
    if (!has(section, key)) fail(ErrorKind::FormatError, std::string("proof script lacks ") + section + "." + key);
    return resolve(doc_.at(section).at(key));
  }

  PPA model(const std::string& key) const { return ppa_from_json(entry("models", key)); }
  RPA rpa(const std::string& key) const { return rpa_from_json(entry("models", key)); }
  MoQuery query(const std::string& key) const { return query_from_json(entry("queries", key)); }
  Objective objective(const std::string& key) const {
    MoQuery q = query(key);
    if (q.objectives.size() != 1) fail(ErrorKind::FormatError, "queries." + key + " must hold one objective");
    return q.objectives.front();
  }
  Region region(const std::string& key) const {
    if (!has("regions", key)) fail(ErrorKind::FormatError, "proof script lacks regions." + key);
    return Region::parse(doc_.at("regions").at(key).get<std::string>());
  }
  std::string name(const std::string& key) const {
    Json m = entry("models", key);
    return m.value("name", key);
  }
  std::size_t count(const char* section, const std::string& prefix) const {
    std::size_t n = 0;
    while (has(section, prefix + std::to_string(n + 1))) ++n;
    return n;
  }

 private:
  std::filesystem::path dir_;
  Json doc_;
};

template <class T>
T single(const Objective& o, const char* what) {
  if (const auto* x = std::get_if<T>(&o)) return *x;
  fail(ErrorKind::FormatError, std::string("expected a ") + what + " objective");
}

}  // namespace

namespace {

ScriptRun run_script(const std::string& path) {
  Script s(path);
  const Json& d = s.doc();
  const Rule rule = parse_rule(text_field(d, "rule"));
  ScriptRun run;
  RuleOptions& opt = run.options;
  opt.resolution = d.value("resolution", 4u);
  if (d.contains("fair_attestation")) opt.fair_attestation = text_field(d, "fair_attestation");
  if (d.contains("monotone")) {
    const Json& m = d.at("monotone");
    opt.monotone.resolution = m.value("resolution", opt.monotone.resolution);
    opt.monotone.grid_denominator = m.value("grid_denominator", opt.monotone.grid_denominator);
    opt.monotone.random_strategies = m.value("random_strategies", opt.monotone.random_strategies);
    opt.monotone.max_strategies = m.value("max_strategies", opt.monotone.max_strategies);
    opt.monotone.seed = m.value("seed", opt.monotone.seed);
  }
  auto names = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) opt.names.push_back(s.name(k));
  };
  RuleApplication& app = run.application;
  switch (rule) {
    case Rule::Asymmetric:
      names({"M1", "M2"});
      app = apply_asymmetric(s.model("M1"), s.model("M2"), s.region("R1"), s.region("R2"), s.query("A"), s.query("G"), opt);
      break;
    case Rule::Circular:
      names({"M1", "M2"});
      app = apply_circular(s.model("M1"), s.model("M2"), s.region("R1"), s.region("R2"), s.region("R3"), s.query("A1"),
                           s.query("A2"), s.query("G"), opt);
      break;
    case Rule::AsymN: {
      const std::size_t n = s.count("models", "M");
      std::vector<PPA> models;
      std::vector<Region> regions;
      std::vector<MoQuery> as;
      for (std::size_t i = 1; i <= n; ++i) {
        const auto k = std::to_string(i);
        opt.names.push_back(s.name("M" + k));
        models.push_back(s.model("M" + k));
        regions.push_back(s.region("R" + k));
        if (i < n) as.push_back(s.query("A" + k));
      }
      app = apply_asym_n(models, regions, as, s.query("G"), opt);
      break;
    }
    case Rule::Conjunction:
      names({"M"});
      app = apply_conjunction(s.model("M"), s.region("R1"), s.region("R2"), s.query("A1"), s.query("G1"), s.query("A2"),
                              s.query("G2"), opt);
      break;
    case Rule::Interleaving:
      names({"M1", "M2"});
      app = apply_interleaving(s.model("M1"), s.model("M2"), s.region("R1"), s.region("R2"), s.query("A1"),
                               s.query("A2"), single<ProbObjective>(s.objective("G1"), "probability"),
                               single<ProbObjective>(s.objective("G2"), "probability"), opt);
      break;
    case Rule::RewardSum:
      names({"M1", "M2"});
      app = apply_reward_sum(s.model("M1"), s.model("M2"), s.region("R1"), s.region("R2"), s.query("A1"), s.query("A2"),
                             single<RewardObjective>(s.objective("G1"), "reward"),
                             single<RewardObjective>(s.objective("G2"), "reward"), opt);
      break;
    case Rule::Monotonicity: {
      names({"M1", "M2"});
      const auto dir = text_field(d, "direction");
      if (dir != "increasing" && dir != "decreasing")
        fail(ErrorKind::FormatError, "direction must be 'increasing' or 'decreasing'");
      app = apply_monotonicity(s.model("M1"), s.model("M2"), s.region("R1"), s.region("R2"), s.objective("O"),
                               text_field(d, "param"), dir == "increasing" ? Direction::Increasing : Direction::Decreasing,
                               opt);
      break;
    }
    case Rule::SimulationAG:
      names({"M1", "M2", "MA", "MG"});
      app = apply_simulation_ag(s.model("M1"), s.model("M2"), s.model("MA"), s.model("MG"), s.region("R1"),
                                s.region("R2"), d.value("robust", false), opt);
      break;
    case Rule::RpaAsymmetric:
      names({"M1", "M2"});
      app = apply_rpa_asymmetric(s.rpa("M1"), s.rpa("M2"), s.query("A"), s.query("G"), opt);
      break;
    case Rule::RpaCircular:
      names({"M1", "M2"});
      app = apply_rpa_circular(s.rpa("M1"), s.rpa("M2"), s.query("A1"), s.query("A2"), s.query("G"), opt);
      break;
    case Rule::RpaAsymN: {
      const std::size_t n = s.count("models", "M");
      std::vector<RPA> us;
      std::vector<MoQuery> as;
      for (std::size_t i = 1; i <= n; ++i) {
        const auto k = std::to_string(i);
        opt.names.push_back(s.name("M" + k));
        us.push_back(s.rpa("M" + k));
        if (i < n) as.push_back(s.query("A" + k));
      }
      app = apply_rpa_asym_n(us, as, s.query("G"), opt);
      break;
    }
    case Rule::RpaConjunction:
      names({"M"});
      app = apply_rpa_conjunction(s.rpa("M"), s.query("A1"), s.query("G1"), s.query("A2"), s.query("G2"), opt);
      break;
    case Rule::RpaInterleaving:
      names({"M1", "M2"});
      app = apply_rpa_interleaving(s.rpa("M1"), s.rpa("M2"), s.query("A1"), s.query("A2"),
                                   single<ProbObjective>(s.objective("G1"), "probability"),
                                   single<ProbObjective>(s.objective("G2"), "probability"), opt);
      break;
  }
  return run;
}

}  // namespace

ScriptRun run_proof_script(const std::string& path) {
  return shape_checked([&] { return run_script(path); });
}

}  // namespace agv
