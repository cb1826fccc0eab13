#include "agv/automaton.hpp"

#include <algorithm>
#include <deque>

namespace agv {

template <class T>
int Automaton<T>::add_state(const std::string& name) {
  auto [it, inserted] = state_index_.emplace(name, static_cast<int>(states_.size()));
  if (!inserted) fail(ErrorKind::FormatError, "duplicate state '" + name + "'");
  states_.push_back(name);
  enabled_.emplace_back();
  return it->second;
}

template <class T>
int Automaton<T>::add_action(const std::string& name) {
  auto it = action_index_.find(name);
  if (it != action_index_.end()) return it->second;
  int id = static_cast<int>(actions_.size());
  action_index_.emplace(name, id);
  actions_.push_back(name);
  return id;
}

template <class T>
void Automaton<T>::set_transition(int s, int a, const std::string& label, std::vector<std::pair<int, T>> dist) {
  if (s < 0 || s >= num_states()) fail(ErrorKind::FormatError, "transition source out of range");
  if (a < 0 || a >= num_actions()) fail(ErrorKind::FormatError, "transition action out of range");
  std::sort(dist.begin(), dist.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i].first < 0 || dist[i].first >= num_states())
      fail(ErrorKind::FormatError, "successor out of range in transition of state '" + states_[s] + "'");
    if (i > 0 && dist[i].first == dist[i - 1].first)
      fail(ErrorKind::FormatError, "duplicate successor '" + states_[dist[i].first] + "' in a distribution");
  }
  alphabet_.insert(label);
  auto key = std::make_pair(s, a);
  if (!trans_.count(key)) {
    auto& en = enabled_[s];
    en.insert(std::upper_bound(en.begin(), en.end(), a), a);
  }
  trans_[key] = Transition<T>{label, std::move(dist)};
}

template <class T>
std::optional<int> Automaton<T>::find_state(const std::string& name) const {
  auto it = state_index_.find(name);
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

template <class T>
std::optional<int> Automaton<T>::find_action(const std::string& name) const {
  auto it = action_index_.find(name);
  if (it == action_index_.end()) return std::nullopt;
  return it->second;
}

template <class T>
int Automaton<T>::state(const std::string& name) const {
  auto s = find_state(name);
  if (!s) fail(ErrorKind::FormatError, "unknown state '" + name + "'");
  return *s;
}

template <class T>
int Automaton<T>::action(const std::string& name) const {
  auto a = find_action(name);
  if (!a) fail(ErrorKind::FormatError, "unknown action '" + name + "'");
  return *a;
}

template <class T>
const Transition<T>* Automaton<T>::find(int s, int a) const {
  auto it = trans_.find({s, a});
  return it == trans_.end() ? nullptr : &it->second;
}

template <class T>
const Transition<T>& Automaton<T>::at(int s, int a) const {
  const auto* t = find(s, a);
  if (!t) fail(ErrorKind::InvalidArgument, "action '" + actions_.at(a) + "' not enabled in '" + states_.at(s) + "'");
  return *t;
}

template class Automaton<Polynomial>;
template class Automaton<Rational>;

const char* definedness_name(Definedness d) {
  switch (d) {
    case Definedness::Neither: return "Neither";
    case Definedness::WellDefined: return "WellDefined";
    case Definedness::GraphPreserving: return "GraphPreserving";
  }
  return "Neither";
}

namespace {

template <class U, class T, class F>
Automaton<U> map_model(const Automaton<T>& m, F&& f) {
  Automaton<U> out;
  for (const auto& s : m.states()) out.add_state(s);
  for (const auto& a : m.actions()) out.add_action(a);
  out.set_initial(m.initial());
  for (const auto& sym : m.alphabet()) out.add_symbol(sym);
  for (const auto& [key, t] : m.transitions()) {
    std::vector<std::pair<int, U>> dist;
    dist.reserve(t.dist.size());
    for (const auto& [succ, w] : t.dist) dist.emplace_back(succ, f(w));
    out.set_transition(key.first, key.second, t.label, std::move(dist));
  }
  out.composition = m.composition;
  return out;
}

template <class T>
void copy_header(const Automaton<T>& m, Automaton<T>& out) {
  for (const auto& s : m.states()) out.add_state(s);
  for (const auto& a : m.actions()) out.add_action(a);
  out.set_initial(m.initial());
  for (const auto& p : m.params()) out.add_parameter(p);
  for (const auto& sym : m.alphabet()) out.add_symbol(sym);
  for (const auto& [key, t] : m.transitions()) out.set_transition(key.first, key.second, t.label, t.dist);
}

}  // namespace

PA instantiate(const PPA& m, const Valuation& v) {
  for (const auto& p : m.params())
    if (!v.count(p)) fail(ErrorKind::MissingParameter, "parameter '" + p + "' is unassigned");
  return map_model<Rational>(m, [&](const Polynomial& poly) { return poly.eval(v); });
}

PPA to_ppa(const PA& m) {
  return map_model<Polynomial>(m, [](const Rational& r) { return Polynomial(r); });
}

Definedness well_defined(const PPA& m, const Valuation& v) {
  bool graph_preserving = true;
  for (const auto& [key, t] : m.transitions()) {
    Rational sum = 0;
    for (const auto& [succ, poly] : t.dist) {
      Rational x = poly.eval(v);
      if (x < 0 || x > 1) return Definedness::Neither;
      if ((x == 0) != poly.is_zero()) graph_preserving = false;
      sum += x;
    }
    if (sum != 1) return Definedness::Neither;
  }
  return graph_preserving ? Definedness::GraphPreserving : Definedness::WellDefined;
}

bool is_distribution_model(const PA& m) {
  for (const auto& [key, t] : m.transitions()) {
    Rational sum = 0;
    for (const auto& [succ, x] : t.dist) {
      if (x < 0) return false;
      sum += x;
    }
    if (sum != 1) return false;
  }
  return true;
}

template <class T>
Automaton<T> compose(const Automaton<T>& m1, const Automaton<T>& m2) {
  std::set<std::string> sigma = m1.alphabet();
  sigma.insert(m2.alphabet().begin(), m2.alphabet().end());
  for (const auto* m : {&m1, &m2})
    for (const auto& a : m->actions())
      if (sigma.count(a)) fail(ErrorKind::ActionAlphabetClash, "action '" + a + "' is also an alphabet symbol");

  Automaton<T> out;
  CompositionInfo info;
  const int n2 = m2.num_states();
  for (int i = 0; i < m1.num_states(); ++i)
    for (int j = 0; j < n2; ++j) {
      out.add_state("(" + m1.state_name(i) + "," + m2.state_name(j) + ")");
      info.state_parts.emplace_back(i, j);
    }
  out.set_initial(m1.initial() * n2 + m2.initial());
  info.left_initial = m1.initial();
  info.right_initial = m2.initial();
  for (const auto& p : m1.params()) out.add_parameter(p);
  for (const auto& p : m2.params()) out.add_parameter(p);
  for (const auto& a : sigma) out.add_symbol(a);

  auto register_action = [&](const std::string& name, int a1, int a2) {
    int before = out.num_actions();
    int id = out.add_action(name);
    if (id == before) info.action_parts.emplace_back(a1, a2);
    return id;
  };

  for (int i = 0; i < m1.num_states(); ++i) {
    for (int j = 0; j < n2; ++j) {
      int s = i * n2 + j;
      for (int a1 : m1.enabled(i)) {
        const auto& t1 = m1.at(i, a1);
        if (m2.alphabet().count(t1.label)) {
          for (int a2 : m2.enabled(j)) {
            const auto& t2 = m2.at(j, a2);
            if (t2.label != t1.label) continue;
            std::vector<std::pair<int, T>> dist;
            for (const auto& [x, w1] : t1.dist)
              for (const auto& [y, w2] : t2.dist) dist.emplace_back(x * n2 + y, w1 * w2);
            int id = register_action("(" + m1.action_name(a1) + "," + m2.action_name(a2) + ")", a1, a2);
            out.set_transition(s, id, t1.label, std::move(dist));
          }
        } else {
          std::vector<std::pair<int, T>> dist;
          for (const auto& [x, w1] : t1.dist) dist.emplace_back(x * n2 + j, w1);
          int id = register_action("(" + m1.action_name(a1) + "," + t1.label + ")", a1, -1);
          out.set_transition(s, id, t1.label, std::move(dist));
        }
      }
      for (int a2 : m2.enabled(j)) {
        const auto& t2 = m2.at(j, a2);
        if (m1.alphabet().count(t2.label)) continue;
        std::vector<std::pair<int, T>> dist;
        for (const auto& [y, w2] : t2.dist) dist.emplace_back(i * n2 + y, w2);
        int id = register_action("(" + t2.label + "," + m2.action_name(a2) + ")", -1, a2);
        out.set_transition(s, id, t2.label, std::move(dist));
      }
    }
  }
  out.composition = std::move(info);
  return out;
}

template <class T>
Automaton<T> alphabet_extend(const Automaton<T>& m, const std::set<std::string>& sigma) {
  std::vector<std::string> fresh;
  for (const auto& a : sigma)
    if (!m.alphabet().count(a)) fresh.push_back(a);
  for (const auto& a : fresh)
    if (m.find_action(a)) fail(ErrorKind::ActionAlphabetClash, "new symbol '" + a + "' is already an action");
  Automaton<T> out;
  copy_header(m, out);
  for (const auto& a : fresh) {
    int id = out.add_action(a);
    for (int s = 0; s < out.num_states(); ++s) out.set_transition(s, id, a, {{s, T(1)}});
  }
  if (fresh.empty()) out.composition = m.composition;
  return out;
}

template <class T>
Automaton<T> tau_extend(const Automaton<T>& m) {
  const std::string tau = "tau";
  if (m.alphabet().count(tau) || m.find_action(tau))
    fail(ErrorKind::InvalidArgument, "symbol 'tau' is not fresh");
  std::string sink = "s_tau";
  while (m.find_state(sink)) sink += "'";
  Automaton<T> out;
  copy_header(m, out);
  int n = m.num_states();
  int st = out.add_state(sink);
  int a = out.add_action(tau);
  for (int s = 0; s < n; ++s) out.set_transition(s, a, tau, {{st, T(1)}});
  out.add_symbol(tau);
  return out;
}

template <class T>
DfaProduct<T> dfa_product(const Automaton<T>& m, const DFA& b) {
  for (const auto& a : b.alphabet())
    if (!m.alphabet().count(a)) fail(ErrorKind::AlphabetMismatch, "DFA symbol '" + a + "' is not in the model alphabet");
  b.check_total();
  DfaProduct<T> out;
  const int nq = b.num_states();
  for (int s = 0; s < m.num_states(); ++s)
    for (int q = 0; q < nq; ++q) {
      out.model.add_state("(" + m.state_name(s) + "," + b.states()[q] + ")");
      out.parts.emplace_back(s, q);
      if (b.accepting(q)) out.bad.insert(s * nq + q);
    }
  for (const auto& a : m.actions()) out.model.add_action(a);
  out.model.set_initial(m.initial() * nq + b.initial());
  for (const auto& p : m.params()) out.model.add_parameter(p);
  for (const auto& sym : m.alphabet()) out.model.add_symbol(sym);
  for (const auto& [key, t] : m.transitions()) {
    for (int q = 0; q < nq; ++q) {
      int q2 = b.accepting(q) ? q : b.step(q, t.label);
      std::vector<std::pair<int, T>> dist;
      for (const auto& [x, w] : t.dist) dist.emplace_back(x * nq + q2, w);
      out.model.set_transition(key.first * nq + q, key.second, t.label, std::move(dist));
    }
  }
  return out;
}

template <class T>
Automaton<T> prune_unreachable(const Automaton<T>& m) {
  std::vector<bool> seen(m.num_states(), false);
  std::deque<int> queue{m.initial()};
  seen[m.initial()] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int a : m.enabled(s))
      for (const auto& [x, w] : m.at(s, a).dist)
        if (!seen[x]) {
          seen[x] = true;
          queue.push_back(x);
        }
  }
  Automaton<T> out;
  std::vector<int> remap(m.num_states(), -1);
  for (int s = 0; s < m.num_states(); ++s)
    if (seen[s]) remap[s] = out.add_state(m.state_name(s));
  for (const auto& a : m.actions()) out.add_action(a);
  out.set_initial(remap[m.initial()]);
  for (const auto& p : m.params()) out.add_parameter(p);
  for (const auto& sym : m.alphabet()) out.add_symbol(sym);
  for (const auto& [key, t] : m.transitions()) {
    if (!seen[key.first]) continue;
    std::vector<std::pair<int, T>> dist;
    for (const auto& [x, w] : t.dist) dist.emplace_back(remap[x], w);
    out.set_transition(remap[key.first], key.second, t.label, std::move(dist));
  }
  return out;
}

template <class T>
bool isomorphic(const Automaton<T>& a, const Automaton<T>& b,
                const std::function<std::string(const std::string&)>& rename) {
  if (a.num_states() != b.num_states()) return false;
  std::vector<int> to_b(a.num_states(), -1);
  std::vector<bool> hit(b.num_states(), false);
  for (int s = 0; s < a.num_states(); ++s) {
    std::string name = rename ? rename(a.state_name(s)) : a.state_name(s);
    std::optional<int> t;
    for (int u = 0; u < b.num_states() && !t; ++u) {
      std::string bn = rename ? rename(b.state_name(u)) : b.state_name(u);
      if (bn == name) t = u;
    }
    if (!t || hit[*t]) return false;
    hit[*t] = true;
    to_b[s] = *t;
  }
  if (to_b[a.initial()] != b.initial()) return false;
  auto signature = [](const Automaton<T>& m, int s, const std::vector<int>* map) {
    std::vector<std::string> sig;
    for (int act : m.enabled(s)) {
      const auto& t = m.at(s, act);
      std::vector<std::pair<int, std::string>> entries;
      for (const auto& [x, w] : t.dist) {
        std::string ws;
        if constexpr (std::is_same_v<T, Rational>) ws = to_string(w); else ws = w.to_string();
        entries.emplace_back(map ? (*map)[x] : x, ws);
      }
      std::sort(entries.begin(), entries.end());
      std::string line = t.label + "|";
      for (const auto& [x, ws] : entries) line += std::to_string(x) + ":" + ws + ";";
      sig.push_back(line);
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  for (int s = 0; s < a.num_states(); ++s)
    if (signature(a, s, &to_b) != signature(b, to_b[s], nullptr)) return false;
  return a.alphabet() == b.alphabet();
}

std::string flatten_name(const std::string& name) {
  std::string out;
  for (char c : name)
    if (c != '(' && c != ')') out += c;
  return out;
}

#define AGV_INSTANTIATE(T)                                                                         \
  template Automaton<T> compose(const Automaton<T>&, const Automaton<T>&);                         \
  template Automaton<T> alphabet_extend(const Automaton<T>&, const std::set<std::string>&);        \
  template Automaton<T> tau_extend(const Automaton<T>&);                                           \
  template DfaProduct<T> dfa_product(const Automaton<T>&, const DFA&);                             \
  template Automaton<T> prune_unreachable(const Automaton<T>&);                                    \
  template bool isomorphic(const Automaton<T>&, const Automaton<T>&,                               \
                           const std::function<std::string(const std::string&)>&);

AGV_INSTANTIATE(Polynomial)
AGV_INSTANTIATE(Rational)

#undef AGV_INSTANTIATE

}  // namespace agv
