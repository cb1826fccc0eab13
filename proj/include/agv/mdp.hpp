#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agv/automaton.hpp"

namespace agv {

// Solver-side view of a PA: per state the enabled choices with positive successors only.
struct Choice {
  int action = -1;
  std::string label;
  std::vector<std::pair<int, Rational>> succ;
};

struct Mdp {
  int init = 0;
  std::vector<std::vector<Choice>> choices;
  int size() const { return static_cast<int>(choices.size()); }
};

Mdp to_mdp(const PA& pa);

using Graph = std::vector<std::vector<int>>;

// Tarjan; components are returned in reverse topological order.
std::vector<std::vector<int>> strongly_connected_components(const Graph& g);

std::vector<bool> reachable_from(const Graph& g, int source);
std::vector<bool> reachable_states(const Mdp& m);

struct EndComponent {
  std::vector<int> states;
  std::vector<std::pair<int, int>> choices;  // (state, choice index)
};

using ChoiceFilter = std::function<bool(int state, int choice)>;

std::vector<EndComponent> maximal_end_components(const Mdp& m, const ChoiceFilter& allowed = {});

// States from which some strategy reaches `target` with positive probability.
std::vector<bool> can_reach(const Mdp& m, const std::vector<bool>& target);
// States from which some strategy reaches `target` almost surely.
std::vector<bool> almost_sure_reach(const Mdp& m, const std::vector<bool>& target);

// Dense exact Gaussian elimination; returns nullopt when A is singular.
std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b);

// Expected total `reward` per state of the chain x = r + P x restricted to `unknown`
// states; states outside `unknown` use `fixed`. P rows may be substochastic.
std::optional<std::vector<Rational>> solve_chain(const std::vector<std::vector<std::pair<int, Rational>>>& rows,
                                                 const std::vector<Rational>& reward,
                                                 const std::vector<bool>& unknown,
                                                 const std::vector<Rational>& fixed);

}  // namespace agv
