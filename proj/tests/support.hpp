#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "agv/automaton.hpp"
#include "agv/io.hpp"
#include "agv/robust.hpp"
#include "agv/semantics.hpp"

namespace agvtest {

using namespace agv;

inline std::string corpus(const std::string& file) { return std::string(AGV_CORPUS_DIR) + "/" + file; }

inline Rational q(long n, long d = 1) { return make_rational(n, d); }

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Random distribution over `n` outcomes with denominators dividing `den`.
inline std::vector<Rational> random_weights(std::mt19937& rng, int n, int den = 10) {
  std::vector<int> cuts{0, den};
  for (int i = 0; i + 1 < n; ++i) cuts.push_back(uniform(rng, 0, den));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> w;
  for (int i = 0; i < n; ++i) w.push_back(q(cuts[i + 1] - cuts[i], den));
  return w;
}

// Random PA with states `<prefix>0..`, at most one action per (state, label).
inline PA random_pa(std::mt19937& rng, const std::string& prefix, int states, const std::vector<std::string>& labels) {
  PA m;
  for (int s = 0; s < states; ++s) m.add_state(prefix + std::to_string(s));
  for (const auto& l : labels) m.add_symbol(l);
  for (int s = 0; s < states; ++s)
    for (const auto& l : labels) {
      if (uniform(rng, 0, 2) == 0) continue;
      int a = m.add_action(prefix + std::to_string(s) + "." + l);
      int k = uniform(rng, 1, std::min(states, 3));
      std::vector<int> succ(states);
      std::iota(succ.begin(), succ.end(), 0);
      std::shuffle(succ.begin(), succ.end(), rng);
      succ.resize(k);
      std::sort(succ.begin(), succ.end());
      auto w = random_weights(rng, k);
      std::vector<std::pair<int, Rational>> d;
      for (int i = 0; i < k; ++i)
        if (w[i] > 0) d.emplace_back(succ[i], w[i]);
      if (d.empty()) d.emplace_back(succ[0], 1);
      m.set_transition(s, a, l, d);
    }
  return m;
}

inline SubDist random_subdist(std::mt19937& rng, const std::vector<int>& enabled, bool partial) {
  SubDist d;
  if (enabled.empty()) return d;
  auto w = random_weights(rng, static_cast<int>(enabled.size()) + (partial ? 1 : 0), 4);
  for (std::size_t i = 0; i < enabled.size(); ++i)
    if (w[i] > 0) d[enabled[i]] = w[i];
  if (!partial && d.empty()) d[enabled.front()] = 1;
  return d;
}

// Tabular strategy over every path of length < horizon.
inline Strategy random_tabular(std::mt19937& rng, const PA& m, int horizon, bool partial) {
  std::map<FinitePath, SubDist> table;
  std::vector<FinitePath> frontier{FinitePath::initial(m.initial())};
  for (int k = 0; k < horizon; ++k) {
    std::vector<FinitePath> next;
    for (const auto& p : frontier) {
      table[p] = random_subdist(rng, m.enabled(p.last()), partial);
      for (int a : m.enabled(p.last()))
        for (const auto& [t, _] : m.at(p.last(), a).dist) next.push_back(p.extended(a, t));
    }
    frontier = std::move(next);
  }
  return Strategy::tabular(std::move(table), horizon);
}

inline std::vector<SubDist> random_memoryless(std::mt19937& rng, const PA& m, bool partial) {
  std::vector<SubDist> s(m.num_states());
  for (int i = 0; i < m.num_states(); ++i) s[i] = random_subdist(rng, m.enabled(i), partial);
  return s;
}

// Random polytopic rPA: per (state, label) either an interval set or a convex vertex set.
inline RPA random_rpa(std::mt19937& rng, const std::string& prefix, int states, const std::vector<std::string>& labels) {
  RPA u;
  for (int s = 0; s < states; ++s) u.add_state(prefix + std::to_string(s));
  for (const auto& l : labels) u.add_symbol(l);
  for (int s = 0; s < states; ++s)
    for (const auto& l : labels) {
      if (uniform(rng, 0, 2) == 0) continue;
      int a = u.add_action(prefix + std::to_string(s) + "." + l);
      if (uniform(rng, 0, 1) == 0) {
        // Interval around a random point, so the set is never empty.
        auto w = random_weights(rng, states);
        std::vector<std::pair<int, Interval>> b;
        for (int t = 0; t < states; ++t) {
          Rational lo = std::max(Rational(0), Rational(w[t] - q(uniform(rng, 0, 2), 10)));
          Rational hi = std::min(Rational(1), Rational(w[t] + q(uniform(rng, 0, 2), 10)));
          if (hi > 0) b.push_back({t, {lo, hi}});
        }
        u.set_transition(s, a, l, UncertaintySet::interval(std::move(b)));
      } else {
        std::vector<Dist> pts;
        int k = uniform(rng, 1, 3);
        for (int i = 0; i < k; ++i) {
          auto w = random_weights(rng, states);
          Dist d;
          for (int t = 0; t < states; ++t)
            if (w[t] > 0) d.emplace_back(t, w[t]);
          pts.push_back(normalize_dist(std::move(d)));
        }
        u.set_transition(s, a, l, UncertaintySet::vertices(std::move(pts), true));
      }
    }
  return u;
}

}  // namespace agvtest
