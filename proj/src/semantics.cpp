#include "agv/semantics.hpp"

#include <deque>
#include <functional>

#include "agv/mdp.hpp"

namespace agv {

FinitePath FinitePath::extended(int action, int state) const {
  FinitePath p = *this;
  p.actions.push_back(action);
  p.states.push_back(state);
  return p;
}

template <class T>
std::string path_string(const Automaton<T>& m, const FinitePath& path) {
  std::string out = m.state_name(path.states[0]);
  for (std::size_t i = 0; i < path.actions.size(); ++i)
    out += " " + m.action_name(path.actions[i]) + " " + m.state_name(path.states[i + 1]);
  return out;
}

template std::string path_string(const PA&, const FinitePath&);
template std::string path_string(const PPA&, const FinitePath&);

Strategy Strategy::memoryless(std::vector<SubDist> per_state) {
  Strategy s;
  s.memoryless_ = true;
  s.per_state_ = std::move(per_state);
  return s;
}

Strategy Strategy::tabular(std::map<FinitePath, SubDist> table, int horizon) {
  Strategy s;
  s.memoryless_ = false;
  s.horizon_ = horizon;
  s.table_ = std::move(table);
  return s;
}

SubDist Strategy::decision(const FinitePath& path) const {
  if (memoryless_) {
    auto s = static_cast<std::size_t>(path.last());
    return s < per_state_.size() ? per_state_[s] : SubDist{};
  }
  if (static_cast<int>(path.length()) >= horizon_)
    fail(ErrorKind::HorizonExceedsStrategyTable,
         "strategy table covers paths shorter than " + std::to_string(horizon_));
  auto it = table_.find(path);
  return it == table_.end() ? SubDist{} : it->second;
}

Rational Strategy::prob(const FinitePath& path, int action) const {
  auto d = decision(path);
  auto it = d.find(action);
  return it == d.end() ? Rational(0) : it->second;
}

namespace {

void check_horizon(const Strategy& sigma, int horizon) {
  if (!sigma.is_memoryless() && sigma.horizon() < horizon)
    fail(ErrorKind::HorizonExceedsStrategyTable, "horizon " + std::to_string(horizon) +
                                                     " exceeds strategy table horizon " +
                                                     std::to_string(sigma.horizon()));
}

// Visits every initial path of length <= horizon with its measure. `visit` returns
// false to prune the subtree below a path.
void walk(const PA& pa, const Strategy& sigma, int horizon, bool skip_zero,
          const std::function<bool(const FinitePath&, const Rational&)>& visit) {
  std::vector<std::pair<FinitePath, Rational>> stack{{FinitePath::initial(pa.initial()), Rational(1)}};
  while (!stack.empty()) {
    auto [path, pr] = std::move(stack.back());
    stack.pop_back();
    if (!visit(path, pr)) continue;
    if (static_cast<int>(path.length()) >= horizon) continue;
    SubDist d = sigma.decision(path);
    for (int a : pa.enabled(path.last())) {
      auto it = d.find(a);
      Rational w = it == d.end() ? Rational(0) : it->second;
      if (skip_zero && w == 0) continue;
      for (const auto& [t, p] : pa.at(path.last(), a).dist) {
        Rational next = pr * w * p;
        if (skip_zero && next == 0) continue;
        stack.emplace_back(path.extended(a, t), std::move(next));
      }
    }
  }
}

}  // namespace

PathMeasure measure(const PA& pa, const Strategy& sigma, int horizon) {
  check_horizon(sigma, horizon);
  PathMeasure out;
  walk(pa, sigma, horizon, false, [&](const FinitePath& p, const Rational& pr) {
    out.emplace(p, pr);
    return true;
  });
  return out;
}

Rational path_probability(const PA& pa, const Strategy& sigma, const FinitePath& path) {
  if (path.states.empty() || path.states[0] != pa.initial()) return 0;
  Rational pr = 1;
  FinitePath prefix = FinitePath::initial(path.states[0]);
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    const auto* t = pa.find(prefix.last(), path.actions[i]);
    if (!t) return 0;
    Rational w = 0;
    for (const auto& [x, p] : t->dist)
      if (x == path.states[i + 1]) w = p;
    pr *= sigma.prob(prefix, path.actions[i]) * w;
    if (pr == 0) return 0;
    prefix = prefix.extended(path.actions[i], path.states[i + 1]);
  }
  return pr;
}

bool is_complete(const PA& pa, const Strategy& sigma, int horizon) {
  auto total_ok = [&](int s, const SubDist& d) {
    Rational sum = 0;
    for (const auto& [a, w] : d) sum += w;
    return pa.enabled(s).empty() || sum == 1;
  };
  if (sigma.is_memoryless()) {
    Mdp m = to_mdp(pa);
    Graph g(m.size());
    for (int s = 0; s < m.size(); ++s) {
      SubDist d = sigma.decision(FinitePath::initial(s));
      for (const auto& c : m.choices[s]) {
        auto it = d.find(c.action);
        if (it != d.end() && it->second > 0)
          for (const auto& e : c.succ) g[s].push_back(e.first);
      }
    }
    auto reach = reachable_from(g, pa.initial());
    for (int s = 0; s < m.size(); ++s)
      if (reach[s] && !total_ok(s, sigma.decision(FinitePath::initial(s)))) return false;
    return true;
  }
  check_horizon(sigma, horizon);
  bool ok = true;
  walk(pa, sigma, horizon, true, [&](const FinitePath& p, const Rational&) {
    if (static_cast<int>(p.length()) < horizon && !total_ok(p.last(), sigma.decision(p))) ok = false;
    return ok;
  });
  return ok;
}

namespace {

const CompositionInfo& composition_of(const PA& composed) {
  if (!composed.composition) fail(ErrorKind::NotComposedModel, "model carries no composition metadata");
  return *composed.composition;
}

int part(const std::pair<int, int>& p, int side) {
  if (side != 1 && side != 2) fail(ErrorKind::InvalidArgument, "side must be 1 or 2");
  return side == 1 ? p.first : p.second;
}

}  // namespace

FinitePath path_project(const PA& composed, const FinitePath& path, int side) {
  const auto& info = composition_of(composed);
  FinitePath out = FinitePath::initial(part(info.state_parts.at(path.states[0]), side));
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    int a = part(info.action_parts.at(path.actions[i]), side);
    if (a != -1) out = out.extended(a, part(info.state_parts.at(path.states[i + 1]), side));
  }
  return out;
}

namespace {

bool is_prefix(const FinitePath& p, const FinitePath& of) {
  if (p.length() > of.length()) return false;
  for (std::size_t i = 0; i < p.states.size(); ++i)
    if (p.states[i] != of.states[i]) return false;
  for (std::size_t i = 0; i < p.actions.size(); ++i)
    if (p.actions[i] != of.actions[i]) return false;
  return true;
}

}  // namespace

std::vector<FinitePath> lifted_paths(const FinitePath& pi, const PA& composed, int side, int horizon) {
  const auto& info = composition_of(composed);
  std::vector<FinitePath> out;
  // Depth-first over composed paths, pruning when the projection leaves pi's prefixes.
  std::vector<std::pair<FinitePath, FinitePath>> stack;
  FinitePath start = FinitePath::initial(composed.initial());
  FinitePath proj = FinitePath::initial(part(info.state_parts.at(composed.initial()), side));
  if (!is_prefix(proj, pi)) return out;
  stack.emplace_back(start, proj);
  while (!stack.empty()) {
    auto [path, pr] = std::move(stack.back());
    stack.pop_back();
    if (pr == pi) out.push_back(path);
    if (static_cast<int>(path.length()) >= horizon) continue;
    for (int a : composed.enabled(path.last())) {
      int ca = part(info.action_parts.at(a), side);
      if (ca != -1 && pr.length() >= pi.length()) continue;
      for (const auto& e : composed.at(path.last(), a).dist) {
        FinitePath np = pr;
        if (ca != -1) {
          np = pr.extended(ca, part(info.state_parts.at(e.first), side));
          if (!is_prefix(np, pi)) continue;
        }
        stack.emplace_back(path.extended(a, e.first), std::move(np));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational lifted_measure(const FinitePath& pi, const PA& composed, const Strategy& sigma, int side, int horizon) {
  const auto& info = composition_of(composed);
  Rational total = 0;
  for (const auto& path : lifted_paths(pi, composed, side, horizon)) {
    bool minimal = path.length() == 0 || part(info.action_parts.at(path.actions.back()), side) != -1;
    if (minimal) total += path_probability(composed, sigma, path);
  }
  return total;
}

Strategy strategy_project(const PA& composed, const Strategy& sigma, int side, int horizon) {
  const auto& info = composition_of(composed);
  check_horizon(sigma, horizon);
  std::map<FinitePath, Rational> denom;
  std::map<FinitePath, SubDist> numer;
  walk(composed, sigma, horizon, true, [&](const FinitePath& path, const Rational& pr) {
    FinitePath proj = path_project(composed, path, side);
    bool minimal = path.length() == 0 || part(info.action_parts.at(path.actions.back()), side) != -1;
    if (minimal) denom[proj] += pr;
    if (static_cast<int>(path.length()) < horizon) {
      for (const auto& [a, w] : sigma.decision(path)) {
        int ca = part(info.action_parts.at(a), side);
        if (ca != -1 && w > 0) numer[proj][ca] += pr * w;
      }
    }
    return true;
  });
  std::map<FinitePath, SubDist> table;
  for (const auto& [proj, d] : denom) {
    if (d == 0 || static_cast<int>(proj.length()) >= horizon) continue;
    auto it = numer.find(proj);
    if (it == numer.end()) continue;
    SubDist entry;
    for (const auto& [a, x] : it->second) entry[a] = x / d;
    table.emplace(proj, std::move(entry));
  }
  return Strategy::tabular(std::move(table), horizon);
}

const char* fair_verdict_name(FairVerdict v) {
  switch (v) {
    case FairVerdict::FairUpToHorizon: return "FairUpToHorizon";
    case FairVerdict::ViolatedWitness: return "ViolatedWitness";
    case FairVerdict::Unsupported: return "Unsupported";
  }
  return "?";
}

namespace {

bool hits(const std::set<std::string>& f, const std::string& label) { return f.count(label) > 0; }

}  // namespace

FairResult fair_check(const PA& pa, const Strategy& sigma, const std::vector<std::set<std::string>>& fairness,
                      int horizon) {
  Mdp m = to_mdp(pa);
  const int n = m.size();
  FairResult result;
  if (sigma.is_memoryless()) {
    // Induced chain: BSCCs reached with positive probability must each fire every fairness set.
    Graph g(n);
    std::vector<std::vector<std::pair<int, int>>> via(n);  // (successor, action)
    std::vector<std::set<std::string>> fired(n);
    for (int s = 0; s < n; ++s) {
      SubDist d = sigma.decision(FinitePath::initial(s));
      for (const auto& c : m.choices[s]) {
        auto it = d.find(c.action);
        if (it == d.end() || it->second <= 0) continue;
        fired[s].insert(c.label);
        for (const auto& e : c.succ) {
          g[s].push_back(e.first);
          via[s].emplace_back(e.first, c.action);
        }
      }
    }
    auto reach = reachable_from(g, m.init);
    std::vector<int> comp_of(n, -1);
    auto comps = strongly_connected_components(g);
    for (std::size_t k = 0; k < comps.size(); ++k)
      for (int s : comps[k]) comp_of[s] = static_cast<int>(k);
    for (const auto& comp : comps) {
      if (!reach[comp[0]]) continue;
      bool bottom = true;
      for (int s : comp)
        for (int t : g[s])
          if (comp_of[t] != comp_of[comp[0]]) bottom = false;
      if (!bottom) continue;
      bool fair = true;
      for (const auto& f : fairness) {
        bool seen = false;
        for (int s : comp)
          for (const auto& l : fired[s]) seen = seen || hits(f, l);
        fair = fair && seen;
      }
      if (g[comp[0]].empty()) fair = false;  // deadlock: no infinite continuation
      if (fair) continue;
      // Witness: shortest path into the offending bottom component.
      std::vector<std::pair<int, int>> parent(n, {-1, -1});
      std::vector<bool> seen(n, false);
      std::deque<int> q{m.init};
      seen[m.init] = true;
      int target = -1;
      while (!q.empty() && target < 0) {
        int s = q.front();
        q.pop_front();
        if (comp_of[s] == comp_of[comp[0]]) {
          target = s;
          break;
        }
        for (const auto& [t, a] : via[s])
          if (!seen[t]) {
            seen[t] = true;
            parent[t] = {s, a};
            q.push_back(t);
          }
      }
      std::vector<std::pair<int, int>> steps;
      for (int s = target; parent[s].first != -1; s = parent[s].first) steps.emplace_back(parent[s].second, s);
      FinitePath w = FinitePath::initial(m.init);
      for (auto it = steps.rbegin(); it != steps.rend(); ++it) w = w.extended(it->first, it->second);
      result.verdict = FairVerdict::ViolatedWitness;
      result.witness = w;
      result.note = "bottom component reached with positive probability misses a fairness set";
      return result;
    }
    result.note = "exact for memoryless strategies";
    return result;
  }
  check_horizon(sigma, horizon);
  // Necessary condition: from the end of every positive path, each fairness set stays reachable.
  std::vector<std::set<std::string>> enabled_labels(n);
  Graph g(n);
  for (int s = 0; s < n; ++s)
    for (const auto& c : m.choices[s]) {
      enabled_labels[s].insert(c.label);
      for (const auto& e : c.succ) g[s].push_back(e.first);
    }
  std::vector<std::vector<bool>> can_fire(fairness.size(), std::vector<bool>(n, false));
  for (std::size_t k = 0; k < fairness.size(); ++k) {
    std::vector<bool> target(n, false);
    for (int s = 0; s < n; ++s)
      for (const auto& l : enabled_labels[s]) target[s] = target[s] || hits(fairness[k], l);
    can_fire[k] = can_reach(m, target);
  }
  walk(pa, sigma, horizon, true, [&](const FinitePath& p, const Rational&) {
    if (result.witness) return false;
    bool at_end = static_cast<int>(p.length()) == horizon || g[p.last()].empty();
    if (!at_end) return true;
    bool ok = !g[p.last()].empty();
    for (std::size_t k = 0; k < fairness.size(); ++k) ok = ok && can_fire[k][p.last()];
    if (!ok) {
      result.verdict = FairVerdict::ViolatedWitness;
      result.witness = p;
      result.note = "a fairness set is unreachable after this path";
    }
    return false;
  });
  if (!result.witness) result.note = "necessary condition only; not a fairness certificate";
  return result;
}

FairResult fair_check_at(const PPA& m, const Valuation& v, const Strategy& sigma,
                         const std::vector<std::set<std::string>>& fairness, int horizon) {
  if (well_defined(m, v) != Definedness::GraphPreserving) {
    FairResult r;
    r.verdict = FairVerdict::Unsupported;
    r.note = "valuation " + to_string(v) + " is not graph-preserving";
    return r;
  }
  return fair_check(instantiate(m, v), sigma, fairness, horizon);
}

}  // namespace agv
