#include "agv/mdp.hpp"

#include <algorithm>
#include <deque>

namespace agv {

Mdp to_mdp(const PA& pa) {
  Mdp m;
  m.init = pa.initial();
  m.choices.resize(pa.num_states());
  for (int s = 0; s < pa.num_states(); ++s) {
    for (int a : pa.enabled(s)) {
      const auto& t = pa.at(s, a);
      Choice c;
      c.action = a;
      c.label = t.label;
      for (const auto& [x, w] : t.dist)
        if (w > 0) c.succ.emplace_back(x, w);
      m.choices[s].push_back(std::move(c));
    }
  }
  return m;
}

std::vector<std::vector<int>> strongly_connected_components(const Graph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> out;
  int counter = 0;
  // Iterative Tarjan to keep deep graphs off the call stack.
  std::vector<std::pair<int, std::size_t>> work;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    work.emplace_back(root, 0);
    while (!work.empty()) {
      auto& [v, edge] = work.back();
      if (edge == 0 && index[v] == -1) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (edge < g[v].size()) {
        int w = g[v][edge++];
        if (index[w] == -1) {
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      int finished = v;
      work.pop_back();
      if (!work.empty()) {
        int parent = work.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return out;
}

std::vector<bool> reachable_from(const Graph& g, int source) {
  std::vector<bool> seen(g.size(), false);
  std::deque<int> q{source};
  seen[source] = true;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (int t : g[s])
      if (!seen[t]) {
        seen[t] = true;
        q.push_back(t);
      }
  }
  return seen;
}

std::vector<bool> reachable_states(const Mdp& m) {
  Graph g(m.size());
  for (int s = 0; s < m.size(); ++s)
    for (const auto& c : m.choices[s])
      for (const auto& e : c.succ) g[s].push_back(e.first);
  return reachable_from(g, m.init);
}

std::vector<EndComponent> maximal_end_components(const Mdp& m, const ChoiceFilter& allowed) {
  const int n = m.size();
  std::vector<std::vector<bool>> active(n);
  for (int s = 0; s < n; ++s) {
    active[s].assign(m.choices[s].size(), true);
    if (allowed)
      for (std::size_t c = 0; c < m.choices[s].size(); ++c) active[s][c] = allowed(s, static_cast<int>(c));
  }
  std::vector<int> comp_of(n, -1);
  bool changed = true;
  while (changed) {
    changed = false;
    Graph g(n);
    for (int s = 0; s < n; ++s)
      for (std::size_t c = 0; c < m.choices[s].size(); ++c)
        if (active[s][c])
          for (const auto& e : m.choices[s][c].succ) g[s].push_back(e.first);
    auto comps = strongly_connected_components(g);
    for (std::size_t k = 0; k < comps.size(); ++k)
      for (int s : comps[k]) comp_of[s] = static_cast<int>(k);
    for (int s = 0; s < n; ++s)
      for (std::size_t c = 0; c < m.choices[s].size(); ++c) {
        if (!active[s][c]) continue;
        for (const auto& e : m.choices[s][c].succ)
          if (comp_of[e.first] != comp_of[s]) {
            active[s][c] = false;
            changed = true;
            break;
          }
      }
  }
  std::vector<EndComponent> out;
  std::map<int, EndComponent> by_comp;
  for (int s = 0; s < n; ++s)
    for (std::size_t c = 0; c < m.choices[s].size(); ++c)
      if (active[s][c]) by_comp[comp_of[s]].choices.emplace_back(s, static_cast<int>(c));
  for (auto& [k, ec] : by_comp) {
    for (const auto& sc : ec.choices)
      if (ec.states.empty() || ec.states.back() != sc.first) ec.states.push_back(sc.first);
    out.push_back(std::move(ec));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.states < b.states; });
  return out;
}

std::vector<bool> can_reach(const Mdp& m, const std::vector<bool>& target) {
  const int n = m.size();
  Graph rev(n);
  for (int s = 0; s < n; ++s)
    for (const auto& c : m.choices[s])
      for (const auto& e : c.succ) rev[e.first].push_back(s);
  std::vector<bool> seen = target;
  std::deque<int> q;
  for (int s = 0; s < n; ++s)
    if (target[s]) q.push_back(s);
  while (!q.empty()) {
    int t = q.front();
    q.pop_front();
    for (int s : rev[t])
      if (!seen[s]) {
        seen[s] = true;
        q.push_back(s);
      }
  }
  return seen;
}

std::vector<bool> almost_sure_reach(const Mdp& m, const std::vector<bool>& target) {
  const int n = m.size();
  std::vector<bool> keep(n, true);
  for (;;) {
    // Backward reachability of the target using only choices that stay inside `keep`.
    std::vector<bool> r = target;
    for (int s = 0; s < n; ++s) r[s] = r[s] && keep[s];
    bool grew = true;
    while (grew) {
      grew = false;
      for (int s = 0; s < n; ++s) {
        if (r[s] || !keep[s]) continue;
        for (const auto& c : m.choices[s]) {
          bool inside = true, hits = false;
          for (const auto& e : c.succ) {
            if (!keep[e.first]) inside = false;
            if (r[e.first]) hits = true;
          }
          if (inside && hits) {
            r[s] = true;
            grew = true;
            break;
          }
        }
      }
    }
    if (r == keep) return r;
    keep = r;
  }
}

std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    Rational inv = 1 / a[col][col];
    for (std::size_t k = col; k < n; ++k) a[col][k] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t k = col; k < n; ++k)
        if (a[col][k] != 0) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  return b;
}

std::optional<std::vector<Rational>> solve_chain(const std::vector<std::vector<std::pair<int, Rational>>>& rows,
                                                 const std::vector<Rational>& reward,
                                                 const std::vector<bool>& unknown,
                                                 const std::vector<Rational>& fixed) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> idx(n, -1);
  int k = 0;
  for (int s = 0; s < n; ++s)
    if (unknown[s]) idx[s] = k++;
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k, 0));
  std::vector<Rational> b(k, 0);
  for (int s = 0; s < n; ++s) {
    if (!unknown[s]) continue;
    int i = idx[s];
    a[i][i] += 1;
    b[i] += reward[s];
    for (const auto& [t, p] : rows[s]) {
      if (unknown[t]) a[i][idx[t]] -= p;
      else b[i] += p * fixed[t];
    }
  }
  auto x = solve_linear_system(std::move(a), std::move(b));
  if (!x) return std::nullopt;
  std::vector<Rational> out = fixed;
  for (int s = 0; s < n; ++s)
    if (unknown[s]) out[s] = (*x)[idx[s]];
  return out;
}

}  // namespace agv
