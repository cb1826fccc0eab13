#include "agv/verify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "agv/lp.hpp"
#include "agv/mdp.hpp"

namespace agv {

Cmp negate(Cmp c) {
  switch (c) {
    case Cmp::LT: return Cmp::GE;
    case Cmp::LE: return Cmp::GT;
    case Cmp::GT: return Cmp::LE;
    case Cmp::GE: return Cmp::LT;
  }
  return c;
}

const char* cmp_symbol(Cmp c) {
  switch (c) {
    case Cmp::LT: return "<";
    case Cmp::LE: return "<=";
    case Cmp::GT: return ">";
    case Cmp::GE: return ">=";
  }
  return "?";
}

Cmp parse_cmp(const std::string& text) {
  if (text == "<") return Cmp::LT;
  if (text == "<=") return Cmp::LE;
  if (text == ">") return Cmp::GT;
  if (text == ">=") return Cmp::GE;
  fail(ErrorKind::FormatError, "unknown comparison '" + text + "'");
}

bool holds(const Rational& value, Cmp c, const Rational& threshold) {
  switch (c) {
    case Cmp::LT: return value < threshold;
    case Cmp::LE: return value <= threshold;
    case Cmp::GT: return value > threshold;
    case Cmp::GE: return value >= threshold;
  }
  return false;
}

namespace {

bool holds(const ExtRational& value, Cmp c, const Rational& threshold) {
  if (!value.infinite) return holds(value.value, c, threshold);
  return c == Cmp::GT || c == Cmp::GE;
}

bool strict(Cmp c) { return c == Cmp::LT || c == Cmp::GT; }

}  // namespace

Objective negate(const Objective& o) {
  return std::visit(
      [](auto x) -> Objective {
        x.cmp = negate(x.cmp);
        x.name = "not " + x.name;
        return x;
      },
      o);
}

std::set<std::string> objective_alphabet(const Objective& o) {
  if (const auto* p = std::get_if<ProbObjective>(&o)) return p->bad.alphabet();
  std::set<std::string> out;
  for (const auto& [a, r] : std::get<RewardObjective>(o).reward) out.insert(a);
  return out;
}

const std::string& objective_name(const Objective& o) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, o);
}

std::string describe(const Objective& o) {
  if (const auto* p = std::get_if<ProbObjective>(&o))
    return "P" + std::string(cmp_symbol(p->cmp)) + to_string(p->threshold) + "(" + p->name + ")";
  const auto& r = std::get<RewardObjective>(o);
  return "R" + std::string(cmp_symbol(r.cmp)) + to_string(r.threshold) + "(" + r.name + ")";
}

bool MoQuery::is_safe() const {
  for (const auto& o : objectives) {
    const auto* p = std::get_if<ProbObjective>(&o);
    if (!p || p->cmp != Cmp::GE) return false;
  }
  return true;
}

std::set<std::string> MoQuery::alphabet() const {
  std::set<std::string> out;
  for (const auto& o : objectives) {
    auto a = objective_alphabet(o);
    out.insert(a.begin(), a.end());
  }
  return out;
}

MoQuery MoQuery::operator+(const MoQuery& other) const {
  MoQuery out = *this;
  out.objectives.insert(out.objectives.end(), other.objectives.begin(), other.objectives.end());
  return out;
}

const char* class_name(StrategyClass c) { return c == StrategyClass::Complete ? "cmp" : "prt"; }

StrategyClass parse_class(const std::string& text) {
  if (text == "cmp") return StrategyClass::Complete;
  if (text == "prt") return StrategyClass::Partial;
  fail(ErrorKind::FormatError, "unknown strategy class '" + text + "' (expected cmp or prt)");
}

std::string to_string(const ExtRational& x) { return x.infinite ? "inf" : to_string(x.value); }

std::map<std::string, Rational> reward_at(const RewardObjective& o, const Valuation& v) {
  std::map<std::string, Rational> out;
  for (const auto& [a, p] : o.reward) {
    Rational r = p.eval(v);
    if (r < 0) fail(ErrorKind::InvalidArgument, "negative reward on '" + a + "'");
    out[a] = r;
  }
  return out;
}

MoQuery instantiate(const MoQuery& q, const Valuation& v) {
  MoQuery out;
  for (const auto& o : q.objectives) {
    if (const auto* r = std::get_if<RewardObjective>(&o)) {
      RewardObjective c = *r;
      c.reward.clear();
      for (const auto& [a, x] : reward_at(*r, v)) c.reward[a] = Polynomial(x);
      out.objectives.emplace_back(std::move(c));
    } else {
      out.objectives.push_back(o);
    }
  }
  return out;
}

namespace {

using Rows = std::vector<std::vector<std::pair<int, Rational>>>;

Graph chain_graph(const Rows& rows) {
  Graph g(rows.size());
  for (std::size_t s = 0; s < rows.size(); ++s)
    for (const auto& [t, p] : rows[s])
      if (p > 0) g[s].push_back(t);
  return g;
}

std::vector<bool> backward_reach(const Graph& g, const std::vector<bool>& target) {
  const int n = static_cast<int>(g.size());
  Graph rev(n);
  for (int s = 0; s < n; ++s)
    for (int t : g[s]) rev[t].push_back(s);
  std::vector<bool> seen = target;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s)
    if (target[s]) stack.push_back(s);
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int s : rev[t])
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
  }
  return seen;
}

// Probability of eventually hitting `target` in a substochastic chain.
std::vector<Rational> chain_reach(const Rows& rows, const std::vector<bool>& target) {
  const int n = static_cast<int>(rows.size());
  auto reach = backward_reach(chain_graph(rows), target);
  std::vector<bool> unknown(n);
  std::vector<Rational> fixed(n, 0);
  for (int s = 0; s < n; ++s) {
    unknown[s] = reach[s] && !target[s];
    if (target[s]) fixed[s] = 1;
  }
  Rows trimmed = rows;
  for (int s = 0; s < n; ++s)
    if (!unknown[s]) trimmed[s].clear();
  auto x = solve_chain(trimmed, std::vector<Rational>(n, 0), unknown, fixed);
  if (!x) throw std::logic_error("singular reachability system");
  return *x;
}

// Expected total reward per state in a substochastic chain with state rewards.
std::vector<ExtRational> chain_reward(const Rows& rows, const std::vector<Rational>& reward) {
  const int n = static_cast<int>(rows.size());
  Graph g = chain_graph(rows);
  std::vector<int> comp_of(n, -1);
  auto comps = strongly_connected_components(g);
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (int s : comps[k]) comp_of[s] = static_cast<int>(k);
  std::vector<bool> infinite_seed(n, false);
  for (const auto& comp : comps) {
    // A closed class whose rows are stochastic inside it recurs forever.
    bool closed = true, positive = false;
    for (int s : comp) {
      Rational inside = 0;
      for (const auto& [t, p] : rows[s]) {
        if (p == 0) continue;
        if (comp_of[t] != comp_of[s]) closed = false;
        else inside += p;
      }
      if (inside != 1) closed = false;
      if (reward[s] > 0) positive = true;
    }
    if (closed && positive)
      for (int s : comp) infinite_seed[s] = true;
  }
  auto infinite = backward_reach(g, infinite_seed);
  std::vector<bool> rewarding(n);
  for (int s = 0; s < n; ++s) rewarding[s] = reward[s] > 0;
  auto useful = backward_reach(g, rewarding);
  std::vector<bool> unknown(n);
  for (int s = 0; s < n; ++s) unknown[s] = useful[s] && !infinite[s];
  Rows trimmed = rows;
  for (int s = 0; s < n; ++s)
    if (!unknown[s]) trimmed[s].clear();
  auto x = solve_chain(trimmed, reward, unknown, std::vector<Rational>(n, 0));
  if (!x) throw std::logic_error("singular reward system");
  std::vector<ExtRational> out(n);
  for (int s = 0; s < n; ++s) out[s] = infinite[s] ? ExtRational{true, 0} : ExtRational{false, (*x)[s]};
  return out;
}

Rows strategy_rows(const PA& pa, const std::vector<SubDist>& sigma) {
  Rows rows(pa.num_states());
  for (int s = 0; s < pa.num_states(); ++s) {
    if (static_cast<std::size_t>(s) >= sigma.size()) continue;
    std::map<int, Rational> acc;
    for (const auto& [a, w] : sigma[s]) {
      if (w == 0) continue;
      const auto* t = pa.find(s, a);
      if (!t) fail(ErrorKind::InvalidArgument, "strategy uses a disabled action");
      for (const auto& [x, p] : t->dist) acc[x] += w * p;
    }
    for (auto& [x, p] : acc)
      if (p != 0) rows[s].emplace_back(x, p);
  }
  return rows;
}

Rational choice_reward(const std::map<std::string, Rational>& reward, const std::string& label) {
  auto it = reward.find(label);
  return it == reward.end() ? Rational(0) : it->second;
}

void check_reward_alphabet(const PA& pa, const std::map<std::string, Rational>& reward) {
  for (const auto& [a, r] : reward) {
    if (!pa.alphabet().count(a)) fail(ErrorKind::AlphabetMismatch, "reward symbol '" + a + "' is not in the model alphabet");
    if (r < 0) fail(ErrorKind::InvalidArgument, "negative reward on '" + a + "'");
  }
}

}  // namespace

// Policy iteration from an attractor strategy. Switching only on strict improvement
// keeps every visited strategy free of end components among the states that can
// still reach a target, so each evaluation is a nonsingular exact solve.
ReachResult max_reach(const PA& pa, const std::set<int>& targets) {
  Mdp m = to_mdp(pa);
  const int n = m.size();
  std::vector<bool> target(n, false);
  for (int t : targets) target.at(t) = true;
  auto positive = can_reach(m, target);

  std::vector<int> pick(n, -1);
  for (int s = 0; s < n; ++s) pick[s] = m.choices[s].empty() ? -1 : 0;
  std::vector<bool> settled = target;
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<bool> next = settled;
    for (int s = 0; s < n; ++s) {
      if (settled[s] || !positive[s]) continue;
      for (std::size_t k = 0; k < m.choices[s].size() && !next[s]; ++k)
        for (const auto& [t, p] : m.choices[s][k].succ)
          if (p > 0 && settled[t]) {
            pick[s] = static_cast<int>(k);
            next[s] = grew = true;
            break;
          }
    }
    settled = std::move(next);
  }

  auto sigma_of = [&] {
    std::vector<SubDist> sigma(n);
    for (int s = 0; s < n; ++s)
      if (pick[s] >= 0) sigma[s][m.choices[s][pick[s]].action] = 1;
    return sigma;
  };
  std::vector<Rational> x;
  for (bool improved = true; improved;) {
    x = chain_reach(strategy_rows(pa, sigma_of()), target);
    improved = false;
    for (int s = 0; s < n; ++s) {
      if (target[s] || !positive[s]) continue;
      Rational best = x[s];
      for (std::size_t k = 0; k < m.choices[s].size(); ++k) {
        Rational v = 0;
        for (const auto& [t, p] : m.choices[s][k].succ) v += p * x[t];
        if (v > best) {
          best = v;
          pick[s] = static_cast<int>(k);
          improved = true;
        }
      }
    }
  }
  return ReachResult{x[pa.initial()], x, Strategy::memoryless(sigma_of())};
}

Rational safety_prob(const PA& pa, const DFA& bad) {
  auto prod = dfa_product(pa, bad);
  return 1 - max_reach(prod.model, prod.bad).value;
}

Rational safety_prob_under(const PA& pa, const DFA& bad, const std::vector<SubDist>& sigma) {
  auto prod = dfa_product(pa, bad);
  std::vector<SubDist> lifted(prod.model.num_states());
  for (int x = 0; x < prod.model.num_states(); ++x) {
    const int s = prod.parts[x].first;
    if (static_cast<std::size_t>(s) >= sigma.size()) continue;
    for (const auto& [a, w] : sigma[s]) {
      auto id = prod.model.find_action(pa.action_name(a));
      if (!id) fail(ErrorKind::InvalidArgument, "strategy uses an unknown action");
      lifted[x][*id] = w;
    }
  }
  std::vector<bool> target(prod.model.num_states(), false);
  for (int b : prod.bad) target[b] = true;
  return 1 - chain_reach(strategy_rows(prod.model, lifted), target)[prod.model.initial()];
}

ExtRational exp_total_reward(const PA& pa, const std::map<std::string, Rational>& reward, bool maximize) {
  check_reward_alphabet(pa, reward);
  Mdp m = to_mdp(pa);
  const int n = m.size();
  auto reach = reachable_states(m);
  auto rew = [&](int s, int k) { return choice_reward(reward, m.choices[s][k].label); };

  if (maximize) {
    for (const auto& ec : maximal_end_components(m)) {
      if (!reach[ec.states[0]]) continue;
      for (const auto& [s, k] : ec.choices)
        if (rew(s, k) > 0) return {true, 0};
    }
    LinearProgram lp;
    std::vector<int> var(n, -1);
    for (int s = 0; s < n; ++s)
      if (reach[s]) var[s] = lp.add_var();
    for (int s = 0; s < n; ++s) {
      if (var[s] < 0) continue;
      lp.objective.emplace_back(var[s], 1);
      for (std::size_t k = 0; k < m.choices[s].size(); ++k) {
        LinExpr e{{var[s], 1}};
        for (const auto& [t, p] : m.choices[s][k].succ) e.emplace_back(var[t], -p);
        lp.add(std::move(e), Rel::GE, rew(s, static_cast<int>(k)));
      }
    }
    auto res = solve(lp);
    if (res.status != LpStatus::Optimal) throw std::logic_error("max reward LP not optimal");
    return {false, res.x[var[m.init]]};
  }

  // Minimum: settle in zero-reward end components (or deadlocks) as cheaply as possible.
  std::vector<bool> zero(n, false);
  for (const auto& ec : maximal_end_components(m, [&](int s, int k) { return rew(s, k) == 0; }))
    for (int s : ec.states) zero[s] = true;
  for (int s = 0; s < n; ++s)
    if (m.choices[s].empty()) zero[s] = true;
  auto sure = almost_sure_reach(m, zero);
  if (!sure[m.init]) return {true, 0};
  if (zero[m.init]) return {false, 0};
  LinearProgram lp;
  lp.maximize = true;
  std::vector<int> var(n, -1);
  for (int s = 0; s < n; ++s)
    if (sure[s] && !zero[s]) var[s] = lp.add_var();
  for (int s = 0; s < n; ++s) {
    if (var[s] < 0) continue;
    lp.objective.emplace_back(var[s], 1);
    for (std::size_t k = 0; k < m.choices[s].size(); ++k) {
      const auto& c = m.choices[s][k];
      bool inside = std::all_of(c.succ.begin(), c.succ.end(), [&](const auto& e) { return sure[e.first]; });
      if (!inside) continue;
      LinExpr e{{var[s], 1}};
      for (const auto& [t, p] : c.succ)
        if (var[t] >= 0) e.emplace_back(var[t], -p);
      lp.add(std::move(e), Rel::LE, rew(s, static_cast<int>(k)));
    }
  }
  auto res = solve(lp);
  if (res.status != LpStatus::Optimal) throw std::logic_error("min reward LP not optimal");
  return {false, res.x[var[m.init]]};
}

namespace {

struct JointProduct {
  PA model;
  std::vector<std::vector<bool>> bad;  // bad[i][x]: objective i is violated at product state x
};

JointProduct joint_product(const PA& pa, const std::vector<const DFA*>& dfas) {
  for (const DFA* d : dfas) {
    for (const auto& a : d->alphabet())
      if (!pa.alphabet().count(a)) fail(ErrorKind::AlphabetMismatch, "objective symbol '" + a + "' is not in the model alphabet");
    d->check_total();
  }
  JointProduct out;
  for (const auto& a : pa.actions()) out.model.add_action(a);
  for (const auto& sym : pa.alphabet()) out.model.add_symbol(sym);
  using Key = std::vector<int>;
  std::map<Key, int> index;
  std::vector<Key> keys;
  auto intern = [&](const Key& k) {
    auto [it, inserted] = index.emplace(k, static_cast<int>(keys.size()));
    if (inserted) {
      keys.push_back(k);
      std::string name = "(" + pa.state_name(k[0]);
      for (std::size_t i = 0; i < dfas.size(); ++i) name += "," + dfas[i]->states()[k[i + 1]];
      out.model.add_state(name + ")");
    }
    return it->second;
  };
  Key init{pa.initial()};
  for (const DFA* d : dfas) init.push_back(d->initial());
  out.model.set_initial(intern(init));
  for (std::size_t x = 0; x < keys.size(); ++x) {
    Key k = keys[x];
    for (int a : pa.enabled(k[0])) {
      const auto& t = pa.at(k[0], a);
      Key next = k;
      for (std::size_t i = 0; i < dfas.size(); ++i)
        if (!dfas[i]->accepting(k[i + 1])) next[i + 1] = dfas[i]->step(k[i + 1], t.label);
      std::vector<std::pair<int, Rational>> dist;
      for (const auto& [s, p] : t.dist) {
        next[0] = s;
        dist.emplace_back(intern(next), p);
      }
      out.model.set_transition(static_cast<int>(x), a, t.label, std::move(dist));
    }
  }
  out.bad.assign(dfas.size(), std::vector<bool>(keys.size(), false));
  for (std::size_t x = 0; x < keys.size(); ++x)
    for (std::size_t i = 0; i < dfas.size(); ++i) out.bad[i][x] = dfas[i]->accepting(keys[x][i + 1]);
  return out;
}

}  // namespace

MoResult mo_achievable(const PA& pa, const MoQuery& q, StrategyClass cls) {
  std::vector<const DFA*> dfas;
  std::vector<int> dfa_of(q.objectives.size(), -1);
  std::vector<std::map<std::string, Rational>> rewards(q.objectives.size());
  for (std::size_t i = 0; i < q.objectives.size(); ++i) {
    if (const auto* p = std::get_if<ProbObjective>(&q.objectives[i])) {
      dfa_of[i] = static_cast<int>(dfas.size());
      dfas.push_back(&p->bad);
    } else {
      rewards[i] = reward_at(std::get<RewardObjective>(q.objectives[i]), {});
      check_reward_alphabet(pa, rewards[i]);
    }
  }
  JointProduct jp = joint_product(pa, dfas);
  const PA& prod = jp.model;
  Mdp m = to_mdp(prod);
  const int n = m.size();

  auto mecs = maximal_end_components(m);
  std::vector<int> mec_of(n, -1);
  for (std::size_t k = 0; k < mecs.size(); ++k)
    for (int s : mecs[k].states) mec_of[s] = static_cast<int>(k);
  for (std::size_t i = 0; i < q.objectives.size(); ++i) {
    if (dfa_of[i] >= 0) continue;
    for (const auto& ec : mecs)
      for (const auto& [s, k] : ec.choices)
        if (choice_reward(rewards[i], m.choices[s][k].label) > 0)
          fail(ErrorKind::UnboundedReward, "reward objective '" + objective_name(q.objectives[i]) +
                                               "' has a reachable end component with positive reward");
  }

  LinearProgram lp;
  std::vector<std::vector<int>> y(n);
  std::vector<int> z(n, -1);
  for (int s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < m.choices[s].size(); ++k) y[s].push_back(lp.add_var());
    bool may_stay = cls == StrategyClass::Partial || mec_of[s] >= 0 || m.choices[s].empty();
    if (may_stay) z[s] = lp.add_var();
  }
  std::vector<LinExpr> flow(n);
  for (int s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < m.choices[s].size(); ++k) {
      flow[s].emplace_back(y[s][k], 1);
      for (const auto& [t, p] : m.choices[s][k].succ) flow[t].emplace_back(y[s][k], -p);
    }
    if (z[s] >= 0) flow[s].emplace_back(z[s], 1);
  }
  for (int s = 0; s < n; ++s) lp.add(flow[s], Rel::EQ, s == m.init ? 1 : 0);

  bool any_strict = false;
  for (const auto& o : q.objectives) any_strict = any_strict || strict(std::visit([](const auto& x) { return x.cmp; }, o));
  int eps = any_strict ? lp.add_var() : -1;

  // Objective value = base + sum(coef * y).
  for (std::size_t i = 0; i < q.objectives.size(); ++i) {
    LinExpr e;
    Rational base = 0;
    Cmp cmp;
    Rational threshold;
    if (dfa_of[i] >= 0) {
      const auto& bad = jp.bad[dfa_of[i]];
      const auto& po = std::get<ProbObjective>(q.objectives[i]);
      cmp = po.cmp;
      threshold = po.threshold;
      base = bad[m.init] ? 0 : 1;
      for (int s = 0; s < n; ++s) {
        if (bad[s]) continue;
        for (std::size_t k = 0; k < m.choices[s].size(); ++k) {
          Rational into = 0;
          for (const auto& [t, p] : m.choices[s][k].succ)
            if (bad[t]) into += p;
          if (into != 0) e.emplace_back(y[s][k], -into);
        }
      }
    } else {
      const auto& ro = std::get<RewardObjective>(q.objectives[i]);
      cmp = ro.cmp;
      threshold = ro.threshold;
      for (int s = 0; s < n; ++s)
        for (std::size_t k = 0; k < m.choices[s].size(); ++k) {
          Rational r = choice_reward(rewards[i], m.choices[s][k].label);
          if (r != 0) e.emplace_back(y[s][k], r);
        }
    }
    Rational rhs = threshold - base;
    switch (cmp) {
      case Cmp::GE: lp.add(e, Rel::GE, rhs); break;
      case Cmp::LE: lp.add(e, Rel::LE, rhs); break;
      case Cmp::GT: e.emplace_back(eps, -1); lp.add(e, Rel::GE, rhs); break;
      case Cmp::LT: e.emplace_back(eps, 1); lp.add(e, Rel::LE, rhs); break;
    }
  }

  MoResult result;
  if (any_strict) {
    LinearProgram first = lp;
    first.add({{eps, 1}}, Rel::LE, 1);
    first.objective = {{eps, 1}};
    first.maximize = true;
    auto r1 = solve(first);
    if (r1.status != LpStatus::Optimal || r1.value <= 0) return result;
    result.slack = r1.value;
    lp.add({{eps, 1}}, Rel::EQ, r1.value);
  }
  // Minimal total occupation rules out circulations that no mass ever enters.
  for (int s = 0; s < n; ++s)
    for (int v : y[s]) lp.objective.emplace_back(v, 1);
  auto r2 = solve(lp);
  if (r2.status != LpStatus::Optimal) {
    result.slack.reset();
    return result;
  }

  MoWitness w;
  std::vector<Rational> u(n, 0);
  for (int s = 0; s < n; ++s) {
    for (int v : y[s]) u[s] += r2.x[v];
    if (z[s] >= 0) u[s] += r2.x[z[s]];
  }
  w.states = prod.states();
  w.product = prod;
  w.choice.resize(n);
  w.stay.assign(n, 1);
  for (int s = 0; s < n; ++s) {
    if (u[s] == 0) continue;
    for (std::size_t k = 0; k < y[s].size(); ++k)
      if (r2.x[y[s][k]] != 0) w.choice[s][prod.action_name(m.choices[s][k].action)] = r2.x[y[s][k]] / u[s];
    w.stay[s] = z[s] >= 0 ? r2.x[z[s]] / u[s] : Rational(0);
  }

  // Exact re-evaluation: transient copy x and, for complete strategies, a staying copy n + x.
  Rows rows(2 * n);
  std::vector<std::vector<Rational>> state_reward(q.objectives.size(), std::vector<Rational>(2 * n, 0));
  for (int s = 0; s < n; ++s) {
    if (u[s] == 0) continue;
    std::map<int, Rational> acc;
    for (std::size_t k = 0; k < y[s].size(); ++k) {
      Rational w_k = r2.x[y[s][k]] / u[s];
      if (w_k == 0) continue;
      for (const auto& [t, p] : m.choices[s][k].succ) acc[t] += w_k * p;
      for (std::size_t i = 0; i < q.objectives.size(); ++i)
        if (dfa_of[i] < 0) state_reward[i][s] += w_k * choice_reward(rewards[i], m.choices[s][k].label);
    }
    if (cls == StrategyClass::Complete && z[s] >= 0 && r2.x[z[s]] != 0) acc[n + s] += r2.x[z[s]] / u[s];
    for (auto& [t, p] : acc) rows[s].emplace_back(t, p);
  }
  if (cls == StrategyClass::Complete) {
    for (int s = 0; s < n; ++s) {
      if (mec_of[s] < 0) continue;
      std::vector<int> inside;
      for (const auto& [x, k] : mecs[mec_of[s]].choices)
        if (x == s) inside.push_back(k);
      std::map<int, Rational> acc;
      Rational share = Rational(1) / static_cast<long>(inside.size());
      for (int k : inside) {
        for (const auto& [t, p] : m.choices[s][k].succ) acc[n + t] += share * p;
        for (std::size_t i = 0; i < q.objectives.size(); ++i)
          if (dfa_of[i] < 0) state_reward[i][n + s] += share * choice_reward(rewards[i], m.choices[s][k].label);
      }
      for (auto& [t, p] : acc) rows[n + s].emplace_back(t, p);
    }
  }
  for (std::size_t i = 0; i < q.objectives.size(); ++i) {
    ExtRational value;
    Cmp cmp;
    Rational threshold;
    if (dfa_of[i] >= 0) {
      std::vector<bool> target(2 * n, false);
      for (int s = 0; s < n; ++s) target[s] = target[n + s] = jp.bad[dfa_of[i]][s];
      value = {false, 1 - chain_reach(rows, target)[m.init]};
      const auto& po = std::get<ProbObjective>(q.objectives[i]);
      cmp = po.cmp;
      threshold = po.threshold;
    } else {
      value = chain_reward(rows, state_reward[i])[m.init];
      const auto& ro = std::get<RewardObjective>(q.objectives[i]);
      cmp = ro.cmp;
      threshold = ro.threshold;
    }
    if (!holds(value, cmp, threshold))
      throw std::logic_error("mo-query witness fails re-evaluation on " + describe(q.objectives[i]));
    w.values.push_back(value);
  }
  result.achievable = true;
  result.witness = std::move(w);
  return result;
}

std::vector<TableRow> witness_table(const MoWitness& w, int horizon) {
  std::vector<TableRow> rows;
  const PA& prod = w.product;
  if (prod.num_states() == 0) return rows;
  std::vector<FinitePath> frontier{FinitePath::initial(prod.initial())};
  for (int len = 0; len < horizon && !frontier.empty(); ++len) {
    std::vector<FinitePath> next;
    for (const auto& path : frontier) {
      for (const auto& [a, p] : w.choice.at(path.last())) {
        rows.push_back({path, a, p});
        const int act = prod.action(a);
        for (const auto& [t, q] : prod.at(path.last(), act).dist)
          if (q != 0) next.push_back(path.extended(act, t));
      }
    }
    frontier = std::move(next);
  }
  return rows;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

const char* const kSampleCaveat = "sound per sampled valuation";

// Returns the samples of r, or an empty list when nothing can be sampled.
std::vector<Valuation> sample_region(const Region& r, unsigned resolution) {
  if (r.is_empty()) return {};
  try {
    return r.samples(resolution);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EmptyRegion) return {};
    throw;
  }
}

PA instantiate_checked(const PPA& m, const Valuation& v) {
  if (well_defined(m, v) == Definedness::Neither)
    fail(ErrorKind::IllDefinedValuationInRegion, "valuation " + to_string(v) + " is not well-defined");
  return instantiate(m, v);
}

namespace {

void check_alphabet(const PPA& m, const MoQuery& q) {
  for (const auto& a : q.alphabet())
    if (!m.alphabet().count(a))
      fail(ErrorKind::AlphabetMismatch, "query symbol '" + a + "' is not in the model alphabet (extend the model first)");
}

std::string witness_note(const Objective& violated, const MoResult& r) {
  std::string s = "strategy achieves " + describe(violated);
  if (r.witness && !r.witness->values.empty()) s += " with value " + to_string(r.witness->values.back());
  return s;
}

}  // namespace

Verdict region_sat(const PPA& m, const Region& r, const MoQuery& q, const CheckOptions& opt) {
  check_alphabet(m, q);
  Verdict out;
  out.caveat = kSampleCaveat;
  auto vs = sample_region(r, opt.resolution);
  if (vs.empty()) {
    out.detail = "empty region: holds vacuously";
    return out;
  }
  for (const auto& v : vs) {
    PA pa = instantiate_checked(m, v);
    MoQuery qv = instantiate(q, v);
    SampleResult sr{v, Status::Holds, ""};
    for (const auto& o : qv.objectives) {
      Objective neg = negate(o);
      auto res = mo_achievable(pa, MoQuery{{neg}}, opt.cls);
      if (res.achievable) {
        sr.status = Status::Fails;
        sr.note = witness_note(neg, res);
        if (out.status == Status::Holds) {
          out.status = Status::Fails;
          out.valuation = v;
          out.witness = res.witness;
          out.detail = sr.note;
        }
        break;
      }
    }
    out.samples.push_back(std::move(sr));
  }
  return out;
}

Verdict ag_triple_check(const PPA& m, const Region& r, const MoQuery& a, const MoQuery& g, const CheckOptions& opt) {
  check_alphabet(m, a);
  check_alphabet(m, g);
  Verdict out;
  out.caveat = kSampleCaveat;
  auto vs = sample_region(r, opt.resolution);
  if (vs.empty()) {
    out.detail = "empty region: holds vacuously";
    return out;
  }
  for (const auto& v : vs) {
    PA pa = instantiate_checked(m, v);
    MoQuery av = instantiate(a, v), gv = instantiate(g, v);
    SampleResult sr{v, Status::Holds, ""};
    for (const auto& o : gv.objectives) {
      MoQuery bad = av;
      bad.objectives.push_back(negate(o));
      auto res = mo_achievable(pa, bad, opt.cls);
      if (res.achievable) {
        sr.status = Status::Fails;
        sr.note = "strategy satisfies the assumption and achieves " + describe(bad.objectives.back());
        if (res.witness) sr.note += " with value " + to_string(res.witness->values.back());
        if (out.status == Status::Holds) {
          out.status = Status::Fails;
          out.valuation = v;
          out.witness = res.witness;
          out.detail = sr.note;
        }
        break;
      }
    }
    out.samples.push_back(std::move(sr));
  }
  return out;
}

const char* direction_name(Direction d) { return d == Direction::Increasing ? "increasing" : "decreasing"; }

ExtRational objective_value(const PA& product, const std::set<int>& bad, const Objective& o,
                            const std::vector<SubDist>& strategy, const Valuation& v) {
  Rows rows = strategy_rows(product, strategy);
  if (std::holds_alternative<ProbObjective>(o)) {
    std::vector<bool> target(product.num_states(), false);
    for (int s : bad) target[s] = true;
    return {false, 1 - chain_reach(rows, target)[product.initial()]};
  }
  auto reward = reward_at(std::get<RewardObjective>(o), v);
  std::vector<Rational> r(product.num_states(), 0);
  for (int s = 0; s < product.num_states() && static_cast<std::size_t>(s) < strategy.size(); ++s)
    for (const auto& [a, w] : strategy[s]) r[s] += w * choice_reward(reward, product.at(s, a).label);
  return chain_reward(rows, r)[product.initial()];
}

namespace {

bool ext_less(const ExtRational& a, const ExtRational& b) {
  if (a.infinite) return false;
  if (b.infinite) return true;
  return a.value < b.value;
}

std::string strategy_text(const PPA& model, const std::vector<SubDist>& sigma) {
  std::string out;
  for (std::size_t s = 0; s < sigma.size(); ++s) {
    if (sigma[s].empty()) continue;
    out += model.state_name(static_cast<int>(s)) + ":";
    bool first = true;
    for (const auto& [a, w] : sigma[s]) {
      out += (first ? "" : ",") + model.action_name(a) + "=" + to_string(w);
      first = false;
    }
    out += " ";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace

Verdict monotone_check(const PPA& m, const Region& r, const Objective& o, const std::string& param, Direction dir,
                       const MonotoneOptions& opt) {
  Verdict out;
  out.caveat = std::string(kSampleCaveat) + "; per enumerated strategy class";
  auto vs = sample_region(r, opt.resolution);
  if (vs.empty()) {
    out.detail = "empty region: holds vacuously";
    return out;
  }
  for (const auto& v : vs)
    if (well_defined(m, v) == Definedness::Neither)
      fail(ErrorKind::IllDefinedValuationInRegion, "valuation " + to_string(v) + " is not well-defined");

  PPA model;
  std::set<int> bad;
  if (const auto* p = std::get_if<ProbObjective>(&o)) {
    auto prod = dfa_product(m, p->bad);
    model = std::move(prod.model);
    bad = std::move(prod.bad);
  } else {
    check_alphabet(m, MoQuery{{o}});
    model = m;
  }
  if (opt.cls == StrategyClass::Partial) model = tau_extend(model);

  // Structurally reachable states and their choices.
  const int n = model.num_states();
  std::vector<bool> seen(n, false);
  std::vector<int> order{model.initial()};
  seen[model.initial()] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int a : model.enabled(order[i]))
      for (const auto& [t, p] : model.at(order[i], a).dist)
        if (!p.is_zero() && !seen[t]) {
          seen[t] = true;
          order.push_back(t);
        }
  std::sort(order.begin(), order.end());

  std::vector<std::vector<SubDist>> strategies;
  std::size_t total = 1;
  bool capped = false;
  for (int s : order) {
    std::size_t k = std::max<std::size_t>(1, model.enabled(s).size());
    if (total * k > opt.max_strategies) {
      capped = true;
      total = opt.max_strategies;
    } else {
      total *= k;
    }
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<SubDist> sigma(n);
    std::size_t rest = idx;
    for (int s : order) {
      const auto& en = model.enabled(s);
      if (en.empty()) continue;
      sigma[s][en[rest % en.size()]] = 1;
      rest /= en.size();
    }
    strategies.push_back(std::move(sigma));
  }
  std::mt19937 rng(opt.seed);
  std::uniform_int_distribution<unsigned> pick(0, std::max(1u, opt.grid_denominator));
  for (unsigned i = 0; i < opt.random_strategies; ++i) {
    std::vector<SubDist> sigma(n);
    for (int s : order) {
      const auto& en = model.enabled(s);
      if (en.empty()) continue;
      std::vector<unsigned> w(en.size());
      unsigned sum = 0;
      for (auto& x : w) sum += (x = pick(rng));
      if (sum == 0) w[0] = sum = 1;
      for (std::size_t k = 0; k < en.size(); ++k)
        if (w[k] > 0) sigma[s][en[k]] = Rational(w[k]) / sum;
    }
    strategies.push_back(std::move(sigma));
  }

  std::vector<PA> inst;
  for (const auto& v : vs) inst.push_back(instantiate(model, v));

  // Axis-aligned neighbours along `param`.
  std::map<Valuation, std::vector<std::size_t>> lines;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Valuation key = vs[i];
    key.erase(param);
    lines[key].push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto& [key, idx] : lines) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return vs[a].count(param) && vs[b].count(param) ? vs[a].at(param) < vs[b].at(param) : a < b;
    });
    for (std::size_t k = 1; k < idx.size(); ++k) pairs.emplace_back(idx[k - 1], idx[k]);
  }

  for (const auto& sigma : strategies) {
    std::vector<ExtRational> f;
    for (std::size_t i = 0; i < vs.size(); ++i) f.push_back(objective_value(inst[i], bad, o, sigma, vs[i]));
    for (const auto& [lo, hi] : pairs) {
      bool bad_pair = dir == Direction::Increasing ? ext_less(f[hi], f[lo]) : ext_less(f[lo], f[hi]);
      if (!bad_pair) continue;
      out.status = Status::Fails;
      out.valuation = vs[lo];
      out.valuation2 = vs[hi];
      out.detail = "strategy {" + strategy_text(model, sigma) + "}: f(" + to_string(vs[lo]) + ") = " + to_string(f[lo]) +
                   ", f(" + to_string(vs[hi]) + ") = " + to_string(f[hi]);
      return out;
    }
  }
  out.detail = std::to_string(strategies.size()) + " strategies, " + std::to_string(pairs.size()) + " sample pairs" +
               (capped ? " (deterministic enumeration capped)" : "");
  for (const auto& v : vs) out.samples.push_back({v, Status::Holds, ""});
  return out;
}

}  // namespace agv
