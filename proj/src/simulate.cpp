#include "agv/simulate.hpp"

#include <deque>
#include <map>

namespace agv {

bool dist_leq(const std::vector<std::pair<int, Rational>>& mu1, const std::vector<std::pair<int, Rational>>& mu2,
              const SimRelation& rel) {
  // Nodes: 0 source, 1 sink, then left support, then right support.
  std::map<int, int> left, right;
  for (const auto& [x, p] : mu1)
    if (p > 0) left.emplace(x, 0);
  for (const auto& [y, p] : mu2)
    if (p > 0) right.emplace(y, 0);
  int n = 2;
  for (auto& [x, id] : left) id = n++;
  for (auto& [y, id] : right) id = n++;
  std::vector<std::vector<Rational>> cap(n, std::vector<Rational>(n, 0));
  std::vector<std::vector<bool>> infinite(n, std::vector<bool>(n, false));
  Rational total = 0;
  for (const auto& [x, p] : mu1)
    if (p > 0) {
      cap[0][left[x]] += p;
      total += p;
    }
  for (const auto& [y, p] : mu2)
    if (p > 0) cap[right[y]][1] += p;
  for (const auto& [x, y] : rel) {
    auto l = left.find(x), r = right.find(y);
    if (l != left.end() && r != right.end()) infinite[l->second][r->second] = true;
  }
  auto residual = [&](int u, int v) { return infinite[u][v] || cap[u][v] > 0; };
  Rational flow = 0;
  for (;;) {
    std::vector<int> prev(n, -1);
    prev[0] = 0;
    std::deque<int> queue{0};
    while (!queue.empty() && prev[1] < 0) {
      int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < n; ++v)
        if (prev[v] < 0 && residual(u, v)) {
          prev[v] = u;
          queue.push_back(v);
        }
    }
    if (prev[1] < 0) break;
    // Every augmenting path passes a finite source or sink edge.
    std::optional<Rational> push;
    for (int v = 1; v != 0; v = prev[v]) {
      int u = prev[v];
      if (!infinite[u][v] && (!push || cap[u][v] < *push)) push = cap[u][v];
    }
    for (int v = 1; v != 0; v = prev[v]) {
      int u = prev[v];
      if (!infinite[u][v]) cap[u][v] -= *push;
      cap[v][u] += *push;
    }
    flow += *push;
  }
  return flow == total;
}

namespace {

bool matched(const PA& n1, const PA& n2, int s, int t, const SimRelation& rel) {
  for (int a1 : n1.enabled(s)) {
    const auto& t1 = n1.at(s, a1);
    bool found = false;
    for (int a2 : n2.enabled(t)) {
      const auto& t2 = n2.at(t, a2);
      if (t2.label == t1.label && dist_leq(t1.dist, t2.dist, rel)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

SimRelation all_pairs(int n1, int n2) {
  SimRelation rel;
  for (int s = 0; s < n1; ++s)
    for (int t = 0; t < n2; ++t) rel.emplace(s, t);
  return rel;
}

// Removes pairs failing the matching clause in any model pair until nothing changes.
SimRelation joint_fixpoint(const std::vector<std::pair<PA, PA>>& models, SimRelation rel) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = rel.begin(); it != rel.end();) {
      bool ok = true;
      for (const auto& [a, b] : models)
        if (!matched(a, b, it->first, it->second, rel)) {
          ok = false;
          break;
        }
      if (ok) {
        ++it;
      } else {
        it = rel.erase(it);
        changed = true;
      }
    }
  }
  return rel;
}

}  // namespace

std::optional<SimRelation> strong_sim(const PA& n1, const PA& n2) {
  SimRelation rel = joint_fixpoint({{n1, n2}}, all_pairs(n1.num_states(), n2.num_states()));
  if (!rel.count({n1.initial(), n2.initial()})) return std::nullopt;
  return rel;
}

std::string relation_string(const SimRelation& rel, const std::vector<std::string>& left,
                            const std::vector<std::string>& right) {
  std::string out = "{";
  bool first = true;
  for (const auto& [s, t] : rel) {
    out += (first ? "(" : ", (") + left.at(s) + "," + right.at(t) + ")";
    first = false;
  }
  return out + "}";
}

Verdict strong_sim_region(const PPA& m1, const PPA& m2, const Region& r, unsigned resolution) {
  Verdict out;
  out.caveat = kSampleCaveat;
  for (const auto& v : sample_region(r, resolution)) {
    PA a = instantiate_checked(m1, v), b = instantiate_checked(m2, v);
    auto rel = strong_sim(a, b);
    SampleResult sr{v, rel ? Status::Holds : Status::Fails, ""};
    if (rel) sr.note = "relation " + relation_string(*rel, a.states(), b.states());
    out.samples.push_back(sr);
    if (!rel && out.status == Status::Holds) {
      out.status = Status::Fails;
      out.valuation = v;
      out.detail = "no strong simulation relates the initial states at " + to_string(v);
    }
  }
  return out;
}

std::optional<SimRelation> robust_strong_sim(const PPA& m1, const PPA& m2, const Region& r, unsigned resolution) {
  std::vector<std::pair<PA, PA>> models;
  for (const auto& v : sample_region(r, resolution))
    models.emplace_back(instantiate_checked(m1, v), instantiate_checked(m2, v));
  SimRelation rel = joint_fixpoint(models, all_pairs(m1.num_states(), m2.num_states()));
  if (!rel.count({m1.initial(), m2.initial()})) return std::nullopt;
  return rel;
}

}  // namespace agv
