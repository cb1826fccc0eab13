#include "agv/robust.hpp"

#include <algorithm>
#include <numeric>

#include "agv/lp.hpp"

namespace agv {

Dist normalize_dist(Dist d) {
  std::map<int, Rational> acc;
  for (const auto& [s, p] : d) {
    if (p < 0) fail(ErrorKind::FormatError, "negative probability " + to_string(p));
    acc[s] += p;
  }
  Dist out;
  for (auto& [s, p] : acc)
    if (p != 0) out.emplace_back(s, p);
  return out;
}

std::string dist_string(const Dist& d, const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ", ";
    out += (d[i].first < static_cast<int>(names.size()) ? names[d[i].first] : std::to_string(d[i].first)) + ": " +
           to_string(d[i].second);
  }
  return out + "}";
}

namespace {

Rational mass(const Dist& d) {
  Rational s = 0;
  for (const auto& e : d) s += e.second;
  return s;
}

Rational at(const Dist& d, int s) {
  auto it = std::lower_bound(d.begin(), d.end(), std::make_pair(s, Rational(0)),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  return it != d.end() && it->first == s ? it->second : Rational(0);
}

}  // namespace

UncertaintySet UncertaintySet::interval(std::vector<std::pair<int, Interval>> bounds) {
  std::sort(bounds.begin(), bounds.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational lo = 0, hi = 0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto& [s, iv] = bounds[i];
    if (i && bounds[i - 1].first == s) fail(ErrorKind::FormatError, "duplicate interval successor");
    if (iv.lower < 0 || iv.upper > 1 || iv.lower > iv.upper)
      fail(ErrorKind::InfeasibleIntervalSet, "interval [" + agv::to_string(iv.lower) + ", " + agv::to_string(iv.upper) +
                                                 "] is not a probability interval");
    lo += iv.lower;
    hi += iv.upper;
  }
  if (lo > 1 || hi < 1)
    fail(ErrorKind::InfeasibleIntervalSet, "interval bounds admit no distribution (sum of lower bounds " +
                                               agv::to_string(lo) + ", sum of upper bounds " + agv::to_string(hi) + ")");
  UncertaintySet u;
  u.kind_ = Kind::Interval;
  u.bounds_ = std::move(bounds);
  return u;
}

UncertaintySet UncertaintySet::vertices(std::vector<Dist> points, bool convex) {
  if (points.empty()) fail(ErrorKind::FormatError, "vertex list is empty");
  for (auto& p : points) {
    p = normalize_dist(std::move(p));
    if (mass(p) != 1) fail(ErrorKind::FormatError, "vertex does not sum to 1");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  UncertaintySet u;
  u.kind_ = Kind::Vertices;
  u.points_ = std::move(points);
  u.convex_ = convex;
  return u;
}

UncertaintySet UncertaintySet::dirac(int s) { return vertices({{{s, Rational(1)}}}); }

UncertaintySet UncertaintySet::product(UncertaintySet left, UncertaintySet right, int right_states) {
  UncertaintySet u;
  u.kind_ = Kind::Product;
  u.left_ = std::make_shared<const UncertaintySet>(std::move(left));
  u.right_ = std::make_shared<const UncertaintySet>(std::move(right));
  u.right_states_ = right_states;
  u.convex_ = u.is_polytopic();
  return u;
}

bool UncertaintySet::is_singleton() const {
  switch (kind_) {
    case Kind::Vertices: return points_.size() == 1;
    case Kind::Interval:
      return std::all_of(bounds_.begin(), bounds_.end(), [](const auto& b) { return b.second.lower == b.second.upper; });
    case Kind::Product: return left_->is_singleton() && right_->is_singleton();
  }
  return false;
}

bool UncertaintySet::is_polytopic() const {
  switch (kind_) {
    case Kind::Interval: return true;
    case Kind::Vertices: return convex_ || points_.size() == 1;
    case Kind::Product:
      // A product with a singleton factor is an affine image of the other factor.
      if (left_->is_singleton()) return right_->is_polytopic();
      if (right_->is_singleton()) return left_->is_polytopic();
      return false;
  }
  return false;
}

std::set<int> UncertaintySet::support() const {
  std::set<int> out;
  switch (kind_) {
    case Kind::Interval:
      for (const auto& [s, iv] : bounds_)
        if (iv.upper > 0) out.insert(s);
      break;
    case Kind::Vertices:
      for (const auto& p : points_)
        for (const auto& e : p) out.insert(e.first);
      break;
    case Kind::Product:
      for (int i : left_->support())
        for (int j : right_->support()) out.insert(i * right_states_ + j);
      break;
  }
  return out;
}

bool UncertaintySet::contains(const Dist& raw) const {
  Dist mu = normalize_dist(raw);
  if (mass(mu) != 1) return false;
  switch (kind_) {
    case Kind::Interval: {
      for (const auto& [s, p] : mu) {
        auto it = std::find_if(bounds_.begin(), bounds_.end(), [&](const auto& b) { return b.first == s; });
        if (it == bounds_.end() || p > it->second.upper) return false;
      }
      for (const auto& [s, iv] : bounds_)
        if (at(mu, s) < iv.lower) return false;
      return true;
    }
    case Kind::Vertices: {
      if (std::find(points_.begin(), points_.end(), mu) != points_.end()) return true;
      if (!convex_) return false;
      LinearProgram lp;
      std::set<int> succ;
      for (const auto& e : mu) succ.insert(e.first);
      for (const auto& p : points_)
        for (const auto& e : p) succ.insert(e.first);
      LinExpr total;
      for (std::size_t k = 0; k < points_.size(); ++k) total.emplace_back(lp.add_var(), 1);
      lp.add(total, Rel::EQ, 1);
      for (int s : succ) {
        LinExpr e;
        for (std::size_t k = 0; k < points_.size(); ++k) {
          Rational w = at(points_[k], s);
          if (w != 0) e.emplace_back(static_cast<int>(k), w);
        }
        lp.add(e, Rel::EQ, at(mu, s));
      }
      return solve(lp).status == LpStatus::Optimal;
    }
    case Kind::Product: return is_product_member(mu, *this).member;
  }
  return false;
}

std::vector<Dist> interval_extreme_points(const std::vector<std::pair<int, Interval>>& bounds, std::size_t cap) {
  const std::size_t k = bounds.size();
  if (k > 10) fail(ErrorKind::InvalidArgument, "extreme-point enumeration over more than 10 successors");
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  Rational base = 0;
  for (const auto& b : bounds) base += b.second.lower;
  std::set<Dist> out;
  do {
    Rational rest = 1 - base;
    Dist d;
    std::vector<Rational> x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = bounds[i].second.lower;
    for (std::size_t i : order) {
      Rational add = std::min(Rational(bounds[i].second.upper - bounds[i].second.lower), rest);
      x[i] += add;
      rest -= add;
    }
    if (rest != 0) fail(ErrorKind::InfeasibleIntervalSet, "interval bounds admit no distribution");
    for (std::size_t i = 0; i < k; ++i) d.emplace_back(bounds[i].first, x[i]);
    out.insert(normalize_dist(std::move(d)));
    if (out.size() > cap) fail(ErrorKind::InvalidArgument, "generator count exceeds cap " + std::to_string(cap));
  } while (std::next_permutation(order.begin(), order.end()));
  return {out.begin(), out.end()};
}

std::vector<Dist> UncertaintySet::generators(std::size_t cap) const {
  switch (kind_) {
    case Kind::Interval: return interval_extreme_points(bounds_, cap);
    case Kind::Vertices: return points_;
    case Kind::Product: {
      auto l = left_->generators(cap), r = right_->generators(cap);
      if (l.size() * r.size() > cap) fail(ErrorKind::InvalidArgument, "generator count exceeds cap " + std::to_string(cap));
      std::set<Dist> out;
      for (const auto& a : l)
        for (const auto& b : r) {
          Dist d;
          for (const auto& [i, p] : a)
            for (const auto& [j, q] : b) d.emplace_back(i * right_states_ + j, p * q);
          out.insert(normalize_dist(std::move(d)));
        }
      return {out.begin(), out.end()};
    }
  }
  return {};
}

std::vector<std::pair<int, Interval>> UncertaintySet::tight_bounds() const {
  if (kind_ == Kind::Interval) {
    Rational lo = 0, hi = 0;
    for (const auto& b : bounds_) {
      lo += b.second.lower;
      hi += b.second.upper;
    }
    std::vector<std::pair<int, Interval>> out;
    for (const auto& [s, iv] : bounds_) {
      Rational mn = std::max(iv.lower, Rational(1 - (hi - iv.upper)));
      Rational mx = std::min(iv.upper, Rational(1 - (lo - iv.lower)));
      out.push_back({s, {mn, mx}});
    }
    return out;
  }
  if (is_singleton() && kind_ == Kind::Vertices) {
    std::vector<std::pair<int, Interval>> out;
    for (const auto& [s, p] : points_[0]) out.push_back({s, {p, p}});
    return out;
  }
  fail(ErrorKind::NotIntervalRPA, "uncertainty set is not an interval set");
}

std::string UncertaintySet::to_string(const std::vector<std::string>& names) const {
  auto name = [&](int s) { return s < static_cast<int>(names.size()) ? names[s] : std::to_string(s); };
  switch (kind_) {
    case Kind::Interval: {
      std::string out = "interval{";
      for (std::size_t i = 0; i < bounds_.size(); ++i)
        out += (i ? ", " : "") + name(bounds_[i].first) + ": [" + agv::to_string(bounds_[i].second.lower) + ", " +
               agv::to_string(bounds_[i].second.upper) + "]";
      return out + "}";
    }
    case Kind::Vertices: {
      std::string out = convex_ ? "conv{" : "set{";
      for (std::size_t i = 0; i < points_.size(); ++i) out += (i ? "; " : "") + dist_string(points_[i], names);
      return out + "}";
    }
    case Kind::Product: return "product(" + left_->to_string({}) + " x " + right_->to_string({}) + ")";
  }
  return "";
}

ProductMembership is_product_member(const Dist& raw, const UncertaintySet& product) {
  if (product.kind() != UncertaintySet::Kind::Product)
    fail(ErrorKind::InvalidArgument, "is_product_member expects a product uncertainty set");
  ProductMembership r;
  Dist mu = normalize_dist(raw);
  if (mass(mu) != 1) {
    r.reason = "not a distribution (mass " + to_string(mass(mu)) + ")";
    return r;
  }
  const int n2 = product.right_states();
  std::map<int, std::map<int, Rational>> rows;
  for (const auto& [x, p] : mu) rows[x / n2][x % n2] = p;
  // Factor through the first row with positive mass, then check every product equation.
  const auto& [pivot, row] = *rows.begin();
  Rational pivot_mass = 0;
  for (const auto& [j, p] : row) {
    pivot_mass += p;
    r.pivot_row.emplace_back(pivot * n2 + j, p);
  }
  Dist mu1, mu2;
  for (const auto& [i, rw] : rows) {
    Rational m = 0;
    for (const auto& [j, p] : rw) m += p;
    mu1.emplace_back(i, m);
  }
  for (const auto& [j, p] : row) mu2.emplace_back(j, p / pivot_mass);
  r.factors = std::make_pair(mu1, mu2);
  std::set<int> cols;
  for (const auto& [i, rw] : rows)
    for (const auto& [j, p] : rw) cols.insert(j);
  for (const auto& [i, m1] : mu1)
    for (int j : cols) {
      Rational expected = m1 * at(mu2, j);
      auto rit = rows[i].find(j);
      Rational actual = rit == rows[i].end() ? Rational(0) : rit->second;
      if (expected != actual) {
        r.at = std::make_pair(i, j);
        r.expected = expected;
        r.actual = actual;
        r.reason = "product equation violated";
        return r;
      }
    }
  if (!product.left().contains(mu1)) {
    r.reason = "left factor is not in the left uncertainty set";
    return r;
  }
  if (!product.right().contains(mu2)) {
    r.reason = "right factor is not in the right uncertainty set";
    return r;
  }
  r.member = true;
  return r;
}

int RPA::add_state(const std::string& name) {
  auto [it, inserted] = state_index_.emplace(name, num_states());
  if (!inserted) fail(ErrorKind::FormatError, "duplicate state '" + name + "'");
  states_.push_back(name);
  enabled_.emplace_back();
  return it->second;
}

int RPA::add_action(const std::string& name) {
  auto [it, inserted] = action_index_.emplace(name, num_actions());
  if (inserted) actions_.push_back(name);
  return it->second;
}

void RPA::set_transition(int s, int a, const std::string& label, UncertaintySet set) {
  if (s < 0 || s >= num_states() || a < 0 || a >= num_actions()) fail(ErrorKind::FormatError, "transition out of range");
  for (int x : set.support())
    if (x < 0 || x >= num_states()) fail(ErrorKind::FormatError, "uncertainty set refers to an unknown state");
  alphabet_.insert(label);
  auto key = std::make_pair(s, a);
  if (!trans_.count(key)) {
    auto& en = enabled_[s];
    en.insert(std::upper_bound(en.begin(), en.end(), a), a);
  }
  trans_.insert_or_assign(key, RobustTransition{label, std::move(set)});
}

std::optional<int> RPA::find_state(const std::string& name) const {
  auto it = state_index_.find(name);
  return it == state_index_.end() ? std::nullopt : std::optional<int>(it->second);
}

std::optional<int> RPA::find_action(const std::string& name) const {
  auto it = action_index_.find(name);
  return it == action_index_.end() ? std::nullopt : std::optional<int>(it->second);
}

int RPA::state(const std::string& name) const {
  auto s = find_state(name);
  if (!s) fail(ErrorKind::FormatError, "unknown state '" + name + "'");
  return *s;
}

int RPA::action(const std::string& name) const {
  auto a = find_action(name);
  if (!a) fail(ErrorKind::FormatError, "unknown action '" + name + "'");
  return *a;
}

const RobustTransition& RPA::at(int s, int a) const {
  auto it = trans_.find({s, a});
  if (it == trans_.end()) fail(ErrorKind::InvalidArgument, "no transition for this state and action");
  return it->second;
}

bool RPA::is_interval() const {
  return std::all_of(trans_.begin(), trans_.end(), [](const auto& t) {
    const auto& u = t.second.set;
    return u.kind() == UncertaintySet::Kind::Interval || (u.kind() == UncertaintySet::Kind::Vertices && u.is_singleton());
  });
}

bool RPA::is_polytopic() const {
  return std::all_of(trans_.begin(), trans_.end(), [](const auto& t) { return t.second.set.is_polytopic(); });
}

namespace {

void copy_frame(const RPA& from, RPA& to) {
  for (const auto& s : from.states()) to.add_state(s);
  for (const auto& a : from.actions()) to.add_action(a);
  to.set_initial(from.initial());
  for (const auto& sym : from.alphabet()) to.add_symbol(sym);
}

}  // namespace

RPA rpa_compose(const RPA& u1, const RPA& u2) {
  std::set<std::string> sigma = u1.alphabet();
  sigma.insert(u2.alphabet().begin(), u2.alphabet().end());
  for (const auto* u : {&u1, &u2})
    for (const auto& a : u->actions())
      if (sigma.count(a)) fail(ErrorKind::ActionAlphabetClash, "action '" + a + "' is also an alphabet symbol");
  RPA out;
  const int n2 = u2.num_states();
  for (int i = 0; i < u1.num_states(); ++i)
    for (int j = 0; j < n2; ++j) out.add_state("(" + u1.state_name(i) + "," + u2.state_name(j) + ")");
  out.set_initial(u1.initial() * n2 + u2.initial());
  for (const auto& a : sigma) out.add_symbol(a);
  for (int i = 0; i < u1.num_states(); ++i)
    for (int j = 0; j < n2; ++j) {
      int s = i * n2 + j;
      for (int a1 : u1.enabled(i)) {
        const auto& t1 = u1.at(i, a1);
        if (u2.alphabet().count(t1.label)) {
          for (int a2 : u2.enabled(j)) {
            const auto& t2 = u2.at(j, a2);
            if (t2.label != t1.label) continue;
            int id = out.add_action("(" + u1.action_name(a1) + "," + u2.action_name(a2) + ")");
            out.set_transition(s, id, t1.label, UncertaintySet::product(t1.set, t2.set, n2));
          }
        } else {
          int id = out.add_action("(" + u1.action_name(a1) + "," + t1.label + ")");
          out.set_transition(s, id, t1.label, UncertaintySet::product(t1.set, UncertaintySet::dirac(j), n2));
        }
      }
      for (int a2 : u2.enabled(j)) {
        const auto& t2 = u2.at(j, a2);
        if (u1.alphabet().count(t2.label)) continue;
        int id = out.add_action("(" + t2.label + "," + u2.action_name(a2) + ")");
        out.set_transition(s, id, t2.label, UncertaintySet::product(UncertaintySet::dirac(i), t2.set, n2));
      }
    }
  return out;
}

RPA conv_compose(const RPA& u1, const RPA& u2) {
  for (const auto* u : {&u1, &u2})
    if (!u->is_polytopic()) fail(ErrorKind::NonPolytopicComponent, "convex composition needs polytopic components");
  RPA exact = rpa_compose(u1, u2);
  RPA out;
  copy_frame(exact, out);
  for (const auto& [key, t] : exact.transitions())
    out.set_transition(key.first, key.second, t.label, UncertaintySet::vertices(t.set.generators(), true));
  return out;
}

RPA interval_relax_compose(const RPA& i1, const RPA& i2) {
  for (const auto* u : {&i1, &i2})
    if (!u->is_interval()) fail(ErrorKind::NotIntervalRPA, "relaxed composition needs interval components");
  RPA exact = rpa_compose(i1, i2);
  RPA out;
  copy_frame(exact, out);
  const int n2 = i2.num_states();
  for (const auto& [key, t] : exact.transitions()) {
    auto b1 = t.set.left().tight_bounds(), b2 = t.set.right().tight_bounds();
    std::vector<std::pair<int, Interval>> bounds;
    for (const auto& [x, lx] : b1)
      for (const auto& [y, ly] : b2) bounds.push_back({x * n2 + y, {lx.lower * ly.lower, lx.upper * ly.upper}});
    out.set_transition(key.first, key.second, t.label, UncertaintySet::interval(std::move(bounds)));
  }
  return out;
}

RPA alphabet_extend_rpa(const RPA& u, const std::set<std::string>& sigma) {
  std::vector<std::string> fresh;
  for (const auto& a : sigma)
    if (!u.alphabet().count(a)) fresh.push_back(a);
  for (const auto& a : fresh)
    if (u.find_action(a)) fail(ErrorKind::ActionAlphabetClash, "new symbol '" + a + "' is already an action");
  RPA out;
  copy_frame(u, out);
  for (const auto& [key, t] : u.transitions()) out.set_transition(key.first, key.second, t.label, t.set);
  for (const auto& a : fresh) {
    int id = out.add_action(a);
    for (int s = 0; s < out.num_states(); ++s) out.set_transition(s, id, a, UncertaintySet::dirac(s));
  }
  return out;
}

namespace {

PA pa_frame(const RPA& u) {
  PA out;
  for (const auto& s : u.states()) out.add_state(s);
  out.set_initial(u.initial());
  for (const auto& sym : u.alphabet()) out.add_symbol(sym);
  return out;
}

}  // namespace

PA pa_reduce(const RPA& u, std::size_t cap) {
  PA out = pa_frame(u);
  for (const auto& [key, t] : u.transitions()) {
    if (!t.set.is_polytopic())
      fail(ErrorKind::NonPolytopicComponent, "PA-reduction needs polytopic uncertainty sets (state '" +
                                                 u.state_name(key.first) + "', action '" + u.action_name(key.second) + "')");
    auto gens = t.set.generators(cap);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int id = out.add_action(u.action_name(key.second) + "[" + std::to_string(k) + "]");
      out.set_transition(key.first, id, t.label, gens[k]);
    }
  }
  return out;
}

PA to_pa(const RPA& u) {
  PA out = pa_frame(u);
  for (const auto& a : u.actions()) out.add_action(a);
  for (const auto& [key, t] : u.transitions()) {
    if (!t.set.is_singleton()) fail(ErrorKind::InvalidArgument, "uncertainty set is not a singleton");
    out.set_transition(key.first, key.second, t.label, t.set.generators().front());
  }
  return out;
}

RPA from_pa(const PA& m) {
  RPA out;
  for (const auto& s : m.states()) out.add_state(s);
  for (const auto& a : m.actions()) out.add_action(a);
  out.set_initial(m.initial());
  for (const auto& sym : m.alphabet()) out.add_symbol(sym);
  for (const auto& [key, t] : m.transitions()) out.set_transition(key.first, key.second, t.label, UncertaintySet::vertices({t.dist}));
  return out;
}

PA fix_nature(const RPA& u, const std::map<std::pair<int, int>, Dist>& choice) {
  PA out = pa_frame(u);
  for (const auto& a : u.actions()) out.add_action(a);
  for (const auto& [key, t] : u.transitions()) {
    auto it = choice.find(key);
    Dist mu;
    if (it != choice.end()) {
      if (!t.set.contains(it->second))
        fail(ErrorKind::InvalidArgument, "nature choice at ('" + u.state_name(key.first) + "', '" +
                                             u.action_name(key.second) + "') is not in the uncertainty set");
      mu = normalize_dist(it->second);
    } else if (t.set.is_singleton()) {
      mu = t.set.generators().front();
    } else {
      fail(ErrorKind::InvalidArgument, "nature choice missing at ('" + u.state_name(key.first) + "', '" +
                                           u.action_name(key.second) + "')");
    }
    out.set_transition(key.first, key.second, t.label, mu);
  }
  return out;
}

namespace {

// All weight vectors of length k with entries in {0, 1/d, ..., 1} summing to 1.
void simplex_grid(std::size_t k, unsigned d, std::vector<unsigned>& cur, std::vector<std::vector<Rational>>& out) {
  if (cur.size() + 1 == k) {
    unsigned used = std::accumulate(cur.begin(), cur.end(), 0u);
    std::vector<Rational> w;
    for (unsigned c : cur) w.push_back(Rational(c) / d);
    w.push_back(Rational(d - used) / d);
    out.push_back(std::move(w));
    return;
  }
  unsigned used = std::accumulate(cur.begin(), cur.end(), 0u);
  for (unsigned c = 0; c + used <= d; ++c) {
    cur.push_back(c);
    simplex_grid(k, d, cur, out);
    cur.pop_back();
  }
}

}  // namespace

NatureModel memoryless_nature_model(const RPA& u, unsigned resolution, std::size_t max_points) {
  if (resolution == 0) fail(ErrorKind::InvalidArgument, "resolution must be positive");
  NatureModel nm;
  PPA& out = nm.model;
  for (const auto& s : u.states()) out.add_state(s);
  for (const auto& a : u.actions()) out.add_action(a);
  out.set_initial(u.initial());
  for (const auto& sym : u.alphabet()) out.add_symbol(sym);
  std::vector<Valuation> points{Valuation{}};
  int pair_index = 0;
  for (const auto& [key, t] : u.transitions()) {
    if (t.set.is_singleton()) {
      std::vector<std::pair<int, Polynomial>> dist;
      const auto gens = t.set.generators();
      for (const auto& [x, p] : gens.front()) dist.emplace_back(x, Polynomial(p));
      out.set_transition(key.first, key.second, t.label, std::move(dist));
      continue;
    }
    if (t.set.kind() == UncertaintySet::Kind::Product && !t.set.is_polytopic())
      fail(ErrorKind::NonPolytopicComponent, "memoryless nature model needs component-level uncertainty sets");
    auto gens = t.set.generators();
    std::vector<std::string> names;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      names.push_back("w" + std::to_string(pair_index) + "_" + std::to_string(k));
      out.add_parameter(names.back());
    }
    ++pair_index;
    std::map<int, Polynomial> acc;
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (const auto& [x, p] : gens[k]) acc[x] = acc[x] + Polynomial::variable(names[k]) * Polynomial(p);
    out.set_transition(key.first, key.second, t.label, {acc.begin(), acc.end()});
    std::vector<std::vector<Rational>> weights;
    bool convex = t.set.kind() != UncertaintySet::Kind::Vertices || t.set.convex();
    if (convex) {
      std::vector<unsigned> cur;
      simplex_grid(gens.size(), resolution, cur, weights);
    } else {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::vector<Rational> w(gens.size(), 0);
        w[k] = 1;
        weights.push_back(std::move(w));
      }
    }
    std::vector<Valuation> next;
    for (const auto& base : points)
      for (const auto& w : weights) {
        Valuation v = base;
        for (std::size_t k = 0; k < w.size(); ++k) v[names[k]] = w[k];
        next.push_back(std::move(v));
        if (next.size() > max_points) fail(ErrorKind::InvalidArgument, "nature sample count exceeds cap");
      }
    points = std::move(next);
  }
  nm.region = Region::finite(std::move(points));
  return nm;
}

}  // namespace agv
