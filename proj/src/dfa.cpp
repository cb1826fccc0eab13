#include "agv/automaton.hpp"

namespace agv {

int DFA::add_state(const std::string& name, bool accepting) {
  auto [it, inserted] = index_.emplace(name, num_states());
  if (!inserted) fail(ErrorKind::FormatError, "duplicate DFA state '" + name + "'");
  states_.push_back(name);
  accepting_.push_back(accepting);
  return it->second;
}

void DFA::set_transition(int q, const std::string& symbol, int target) {
  if (q < 0 || q >= num_states() || target < 0 || target >= num_states())
    fail(ErrorKind::FormatError, "DFA transition out of range");
  alphabet_.insert(symbol);
  delta_[{q, symbol}] = target;
}

int DFA::state(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) fail(ErrorKind::FormatError, "unknown DFA state '" + name + "'");
  return it->second;
}

int DFA::step(int q, const std::string& symbol) const {
  if (!alphabet_.count(symbol)) return q;
  auto it = delta_.find({q, symbol});
  if (it == delta_.end())
    fail(ErrorKind::FormatError, "DFA has no transition from '" + states_[q] + "' on '" + symbol + "'");
  return it->second;
}

void DFA::check_total() const {
  if (states_.empty()) fail(ErrorKind::FormatError, "DFA has no states");
  for (int q = 0; q < num_states(); ++q)
    for (const auto& a : alphabet_)
      if (!delta_.count({q, a}))
        fail(ErrorKind::FormatError, "DFA is not total: '" + states_[q] + "' lacks '" + a + "'");
}

DFA DFA::bad_prefix(const std::vector<std::string>& word, const std::set<std::string>& alphabet) {
  DFA d;
  for (std::size_t i = 0; i <= word.size(); ++i) d.add_state("q" + std::to_string(i), i == word.size());
  int safe = d.add_state("ok");
  for (const auto& a : alphabet) d.add_symbol(a);
  for (std::size_t i = 0; i <= word.size(); ++i)
    for (const auto& a : alphabet) {
      int q = static_cast<int>(i);
      if (i == word.size()) d.set_transition(q, a, q);
      else d.set_transition(q, a, a == word[i] ? q + 1 : safe);
    }
  for (const auto& a : alphabet) d.set_transition(safe, a, safe);
  d.set_initial(0);
  return d;
}

DFA DFA::bad_count(const std::string& symbol, unsigned count, const std::set<std::string>& alphabet) {
  DFA d;
  for (unsigned i = 0; i <= count; ++i) d.add_state("c" + std::to_string(i), i == count);
  for (const auto& a : alphabet) d.add_symbol(a);
  for (unsigned i = 0; i <= count; ++i)
    for (const auto& a : alphabet) {
      int q = static_cast<int>(i);
      d.set_transition(q, a, (a == symbol && i < count) ? q + 1 : q);
    }
  d.set_initial(0);
  return d;
}

DFA DFA::accept_nothing(const std::set<std::string>& alphabet) {
  DFA d;
  d.add_state("ok");
  for (const auto& a : alphabet) d.set_transition(0, a, 0);
  for (const auto& a : alphabet) d.add_symbol(a);
  return d;
}

DFA DFA::bad_both(const DFA& b1, const DFA& b2) {
  std::set<std::string> sigma = b1.alphabet();
  sigma.insert(b2.alphabet().begin(), b2.alphabet().end());
  DFA d;
  for (const auto& a : sigma) d.add_symbol(a);
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> todo;
  auto get = [&](int q1, int q2) {
    auto [it, inserted] = index.emplace(std::make_pair(q1, q2), d.num_states());
    if (inserted) {
      d.add_state("(" + b1.states()[q1] + "," + b2.states()[q2] + ")", b1.accepting(q1) && b2.accepting(q2));
      todo.emplace_back(q1, q2);
    }
    return it->second;
  };
  d.set_initial(get(b1.initial(), b2.initial()));
  while (!todo.empty()) {
    auto [q1, q2] = todo.back();
    todo.pop_back();
    int from = index.at({q1, q2});
    for (const auto& a : sigma) {
      // A component that has seen a bad prefix stays there.
      int n1 = b1.accepting(q1) ? q1 : b1.step(q1, a);
      int n2 = b2.accepting(q2) ? q2 : b2.step(q2, a);
      d.set_transition(from, a, get(n1, n2));
    }
  }
  return d;
}

}  // namespace agv
