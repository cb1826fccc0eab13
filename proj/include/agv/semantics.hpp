#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agv/automaton.hpp"

namespace agv {

// Alternating path s0 a0 s1 ... sn stored as n+1 states and n actions.
struct FinitePath {
  std::vector<int> states;
  std::vector<int> actions;

  static FinitePath initial(int s) { return FinitePath{{s}, {}}; }
  std::size_t length() const { return actions.size(); }
  int last() const { return states.back(); }
  FinitePath extended(int action, int state) const;
  auto operator<=>(const FinitePath&) const = default;
};

template <class T>
std::string path_string(const Automaton<T>& m, const FinitePath& path);

using SubDist = std::map<int, Rational>;  // action index -> probability mass

class Strategy {
 public:
  Strategy() = default;
  static Strategy memoryless(std::vector<SubDist> per_state);
  // Decisions for every path shorter than `horizon`; absent paths stop immediately.
  static Strategy tabular(std::map<FinitePath, SubDist> table, int horizon);

  bool is_memoryless() const { return memoryless_; }
  int horizon() const { return horizon_; }
  SubDist decision(const FinitePath& path) const;
  Rational prob(const FinitePath& path, int action) const;

  const std::vector<SubDist>& per_state() const { return per_state_; }
  const std::map<FinitePath, SubDist>& table() const { return table_; }

 private:
  bool memoryless_ = true;
  int horizon_ = -1;
  std::vector<SubDist> per_state_;
  std::map<FinitePath, SubDist> table_;
};

using PathMeasure = std::map<FinitePath, Rational>;

// All initial paths of length <= horizon over declared transitions, zero entries included.
PathMeasure measure(const PA& pa, const Strategy& sigma, int horizon);
Rational path_probability(const PA& pa, const Strategy& sigma, const FinitePath& path);

// Total mass assigned at every reachable decision point of length < horizon is 1.
bool is_complete(const PA& pa, const Strategy& sigma, int horizon);

FinitePath path_project(const PA& composed, const FinitePath& path, int side);

// Composed initial paths of length <= horizon whose projection on `side` is pi.
std::vector<FinitePath> lifted_paths(const FinitePath& pi, const PA& composed, int side, int horizon);

// Measure of the set of lifted paths: the sum over its minimal elements.
Rational lifted_measure(const FinitePath& pi, const PA& composed, const Strategy& sigma, int side, int horizon);

Strategy strategy_project(const PA& composed, const Strategy& sigma, int side, int horizon);

enum class FairVerdict { FairUpToHorizon, ViolatedWitness, Unsupported };
const char* fair_verdict_name(FairVerdict v);

struct FairResult {
  FairVerdict verdict = FairVerdict::FairUpToHorizon;
  std::optional<FinitePath> witness;
  std::string note;
};

// Memoryless strategies are checked exactly via the bottom SCCs of the induced chain.
// Tabular strategies get a necessary condition: every positive-measure path of length
// `horizon` can still reach a transition labeled in each fairness set.
FairResult fair_check(const PA& pa, const Strategy& sigma, const std::vector<std::set<std::string>>& fairness,
                      int horizon);
FairResult fair_check_at(const PPA& m, const Valuation& v, const Strategy& sigma,
                         const std::vector<std::set<std::string>>& fairness, int horizon);

}  // namespace agv
