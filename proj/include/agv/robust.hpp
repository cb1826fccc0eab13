#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "agv/automaton.hpp"
#include "agv/region.hpp"

namespace agv {

using Dist = std::vector<std::pair<int, Rational>>;  // sorted by successor, positive entries

Dist normalize_dist(Dist d);
std::string dist_string(const Dist& d, const std::vector<std::string>& names);

class UncertaintySet {
 public:
  enum class Kind { Interval, Vertices, Product };

  // Successors not listed have bound [0, 0].
  static UncertaintySet interval(std::vector<std::pair<int, Interval>> bounds);
  // `convex` selects the convex hull of the points; otherwise exactly the listed points.
  static UncertaintySet vertices(std::vector<Dist> points, bool convex = true);
  static UncertaintySet dirac(int s);
  // {mu1 x mu2}; successor (i, j) has index i * right_states + j.
  static UncertaintySet product(UncertaintySet left, UncertaintySet right, int right_states);

  Kind kind() const { return kind_; }
  const std::vector<std::pair<int, Interval>>& bounds() const { return bounds_; }
  const std::vector<Dist>& points() const { return points_; }
  bool convex() const { return convex_; }
  const UncertaintySet& left() const { return *left_; }
  const UncertaintySet& right() const { return *right_; }
  int right_states() const { return right_states_; }

  // Interval sets and convex vertex sets.
  bool is_polytopic() const;
  bool is_singleton() const;
  std::set<int> support() const;
  bool contains(const Dist& mu) const;
  // Extreme points (Interval), the points (Vertices), or pairwise products (Product).
  std::vector<Dist> generators(std::size_t cap = 10000) const;
  // Tight per-successor extrema over the set (Interval and singleton sets only).
  std::vector<std::pair<int, Interval>> tight_bounds() const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  Kind kind_ = Kind::Vertices;
  std::vector<std::pair<int, Interval>> bounds_;
  std::vector<Dist> points_;
  bool convex_ = true;
  std::shared_ptr<const UncertaintySet> left_, right_;
  int right_states_ = 0;
};

std::vector<Dist> interval_extreme_points(const std::vector<std::pair<int, Interval>>& bounds,
                                          std::size_t cap = 10000);

struct ProductMembership {
  bool member = false;
  std::optional<std::pair<Dist, Dist>> factors;  // candidate marginals (when a factorization was attempted)
  Dist pivot_row;                                // mu restricted to the first left state with positive mass
  // First violated product equation: mu(left, right) should equal `expected` but is `actual`.
  std::optional<std::pair<int, int>> at;
  Rational expected;
  Rational actual;
  std::string reason;
};

ProductMembership is_product_member(const Dist& mu, const UncertaintySet& product);

struct RobustTransition {
  std::string label;
  UncertaintySet set;
};

class RPA {
 public:
  int add_state(const std::string& name);
  int add_action(const std::string& name);
  void set_initial(int s) { initial_ = s; }
  void add_symbol(const std::string& a) { alphabet_.insert(a); }
  void set_transition(int s, int a, const std::string& label, UncertaintySet set);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_actions() const { return static_cast<int>(actions_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& actions() const { return actions_; }
  const std::string& state_name(int s) const { return states_.at(s); }
  const std::string& action_name(int a) const { return actions_.at(a); }
  int initial() const { return initial_; }
  const std::set<std::string>& alphabet() const { return alphabet_; }
  const std::map<std::pair<int, int>, RobustTransition>& transitions() const { return trans_; }
  std::optional<int> find_state(const std::string& name) const;
  std::optional<int> find_action(const std::string& name) const;
  int state(const std::string& name) const;
  int action(const std::string& name) const;
  const RobustTransition& at(int s, int a) const;
  const std::vector<int>& enabled(int s) const { return enabled_.at(s); }

  bool is_interval() const;
  bool is_polytopic() const;

 private:
  std::vector<std::string> states_, actions_;
  std::map<std::string, int> state_index_, action_index_;
  int initial_ = 0;
  std::set<std::string> alphabet_;
  std::map<std::pair<int, int>, RobustTransition> trans_;
  std::vector<std::vector<int>> enabled_;
};

RPA rpa_compose(const RPA& u1, const RPA& u2);
RPA conv_compose(const RPA& u1, const RPA& u2);
RPA interval_relax_compose(const RPA& i1, const RPA& i2);
RPA alphabet_extend_rpa(const RPA& u, const std::set<std::string>& sigma);

// Actions become (alpha, generator) pairs named `alpha[k]`.
PA pa_reduce(const RPA& u, std::size_t cap = 10000);

PA to_pa(const RPA& u);     // every set must be a singleton
RPA from_pa(const PA& m);   // singleton vertex sets

// Memoryless nature fixing the listed distributions; singleton sets need no entry.
PA fix_nature(const RPA& u, const std::map<std::pair<int, int>, Dist>& choice);

// Memoryless (once-and-for-all) nature as a parametric model: each non-singleton set
// (s, alpha) gets weights w over its generators. Convex sets sample the weight simplex
// with step 1/resolution; non-convex sets only their points.
struct NatureModel {
  PPA model;
  Region region;
};
NatureModel memoryless_nature_model(const RPA& u, unsigned resolution, std::size_t max_points = 10000);

}  // namespace agv
