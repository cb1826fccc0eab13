#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "agv/errors.hpp"
#include "agv/polynomial.hpp"

namespace agv {

template <class T>
struct Transition {
  std::string label;
  std::vector<std::pair<int, T>> dist;  // sorted by successor index
};

// Records how a composed model decomposes: component state indices per product
// state and component action indices per product action (-1 means idle).
struct CompositionInfo {
  std::vector<std::pair<int, int>> state_parts;
  std::vector<std::pair<int, int>> action_parts;
  int left_initial = 0;
  int right_initial = 0;
};

template <class T>
class Automaton {
 public:
  Automaton() = default;

  int add_state(const std::string& name);
  int add_action(const std::string& name);
  void set_initial(int s) { initial_ = s; }
  void add_parameter(const std::string& p) { params_.insert(p); }
  void add_symbol(const std::string& a) { alphabet_.insert(a); }
  // Adds or replaces δ(s, α). Labels are added to the alphabet.
  void set_transition(int s, int a, const std::string& label, std::vector<std::pair<int, T>> dist);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_actions() const { return static_cast<int>(actions_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& actions() const { return actions_; }
  const std::string& state_name(int s) const { return states_.at(s); }
  const std::string& action_name(int a) const { return actions_.at(a); }
  int initial() const { return initial_; }
  const std::set<std::string>& params() const { return params_; }
  const std::set<std::string>& alphabet() const { return alphabet_; }
  const std::map<std::pair<int, int>, Transition<T>>& transitions() const { return trans_; }

  std::optional<int> find_state(const std::string& name) const;
  std::optional<int> find_action(const std::string& name) const;
  int state(const std::string& name) const;
  int action(const std::string& name) const;

  const Transition<T>* find(int s, int a) const;
  const Transition<T>& at(int s, int a) const;
  // Enabled actions of s in increasing index order.
  const std::vector<int>& enabled(int s) const { return enabled_.at(s); }

  std::optional<CompositionInfo> composition;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actions_;
  std::map<std::string, int> state_index_;
  std::map<std::string, int> action_index_;
  int initial_ = 0;
  std::set<std::string> params_;
  std::set<std::string> alphabet_;
  std::map<std::pair<int, int>, Transition<T>> trans_;
  std::vector<std::vector<int>> enabled_;
};

using PPA = Automaton<Polynomial>;
using PA = Automaton<Rational>;

// Deterministic finite automaton over its own alphabet; total transition function.
class DFA {
 public:
  int add_state(const std::string& name, bool accepting = false);
  void set_initial(int q) { initial_ = q; }
  void add_symbol(const std::string& a) { alphabet_.insert(a); }
  void set_transition(int q, const std::string& symbol, int target);

  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  int initial() const { return initial_; }
  const std::set<std::string>& alphabet() const { return alphabet_; }
  bool accepting(int q) const { return accepting_.at(q); }
  int state(const std::string& name) const;
  // Symbols outside the alphabet leave the state unchanged.
  int step(int q, const std::string& symbol) const;
  // Throws FormatError unless every (state, symbol) pair has a successor.
  void check_total() const;

  // Bad-prefix automaton of "the projected word has the prefix `word`".
  static DFA bad_prefix(const std::vector<std::string>& word, const std::set<std::string>& alphabet);
  // Bad-prefix automaton of "symbol `a` occurs at least `count` times".
  static DFA bad_count(const std::string& symbol, unsigned count, const std::set<std::string>& alphabet);
  static DFA accept_nothing(const std::set<std::string>& alphabet);
  // Bad prefixes of L1 ∪ L2: the word has seen a bad prefix of both.
  static DFA bad_both(const DFA& b1, const DFA& b2);

 private:
  std::vector<std::string> states_;
  std::vector<bool> accepting_;
  std::map<std::string, int> index_;
  int initial_ = 0;
  std::set<std::string> alphabet_;
  std::map<std::pair<int, std::string>, int> delta_;
};

enum class Definedness { Neither, WellDefined, GraphPreserving };
const char* definedness_name(Definedness d);

PA instantiate(const PPA& m, const Valuation& v);
PPA to_ppa(const PA& m);
Definedness well_defined(const PPA& m, const Valuation& v);
// Every distribution is nonnegative and sums to one.
bool is_distribution_model(const PA& m);

template <class T>
Automaton<T> compose(const Automaton<T>& m1, const Automaton<T>& m2);

template <class T>
Automaton<T> alphabet_extend(const Automaton<T>& m, const std::set<std::string>& sigma);

template <class T>
Automaton<T> tau_extend(const Automaton<T>& m);

template <class T>
struct DfaProduct {
  Automaton<T> model;
  std::set<int> bad;
  std::vector<std::pair<int, int>> parts;  // (model state, dfa state)
};

template <class T>
DfaProduct<T> dfa_product(const Automaton<T>& m, const DFA& b);

// Keeps only states reachable from the initial state (structural support).
template <class T>
Automaton<T> prune_unreachable(const Automaton<T>& m);

// Structural isomorphism under a state renaming: same initial state and, per state,
// the same multiset of (label, distribution) pairs. Action names are ignored.
template <class T>
bool isomorphic(const Automaton<T>& a, const Automaton<T>& b,
                const std::function<std::string(const std::string&)>& rename = {});

// Drops tuple parentheses so differently nested products compare equal.
std::string flatten_name(const std::string& name);

}  // namespace agv
