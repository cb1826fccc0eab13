#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "agv/automaton.hpp"
#include "agv/region.hpp"
#include "agv/semantics.hpp"

namespace agv {

enum class Cmp { LT, LE, GT, GE };
Cmp negate(Cmp c);
const char* cmp_symbol(Cmp c);
Cmp parse_cmp(const std::string& text);
bool holds(const Rational& value, Cmp c, const Rational& threshold);

// Pr(L) ⋈ threshold where L is the set of words without a prefix accepted by `bad`.
struct ProbObjective {
  std::string name;
  Cmp cmp = Cmp::GE;
  Rational threshold;
  DFA bad;
};

// Expected total reward ⋈ threshold; rewards are attached to alphabet symbols.
struct RewardObjective {
  std::string name;
  Cmp cmp = Cmp::GE;
  Rational threshold;
  std::map<std::string, Polynomial> reward;
};

using Objective = std::variant<ProbObjective, RewardObjective>;

Objective negate(const Objective& o);
std::set<std::string> objective_alphabet(const Objective& o);
const std::string& objective_name(const Objective& o);
std::string describe(const Objective& o);

// Conjunction of objectives.
struct MoQuery {
  std::vector<Objective> objectives;

  bool empty() const { return objectives.empty(); }
  // Every objective is a lower-bounded probabilistic (safety) objective.
  bool is_safe() const;
  std::set<std::string> alphabet() const;
  MoQuery operator+(const MoQuery& other) const;
};

enum class StrategyClass { Complete, Partial };
const char* class_name(StrategyClass c);
StrategyClass parse_class(const std::string& text);

struct ReachResult {
  Rational value;
  std::vector<Rational> values;  // per state
  Strategy strategy;             // memoryless deterministic, attains every value
};

ReachResult max_reach(const PA& pa, const std::set<int>& targets);

// Infimum over strategies of Pr(L) for the safety language of `bad`.
Rational safety_prob(const PA& pa, const DFA& bad);
// Pr(L) under a fixed memoryless strategy of `pa`; stopping counts as safe.
Rational safety_prob_under(const PA& pa, const DFA& bad, const std::vector<SubDist>& sigma);

struct ExtRational {
  bool infinite = false;
  Rational value;
  bool operator==(const ExtRational&) const = default;
};
std::string to_string(const ExtRational& x);

ExtRational exp_total_reward(const PA& pa, const std::map<std::string, Rational>& reward, bool maximize);

// Product-level witness strategy for an achievable mo-query. At product state x the
// strategy takes `choice[x]`; the remaining mass `stay[x]` stops (partial class) or
// switches to remaining inside the end component of x forever (complete class).
struct MoWitness {
  std::vector<std::string> states;
  std::vector<std::map<std::string, Rational>> choice;
  std::vector<Rational> stay;
  std::vector<ExtRational> values;  // achieved value per objective, re-evaluated exactly
  PA product;                        // the objective product the strategy lives on
};

struct TableRow {
  FinitePath path;
  std::string action;
  Rational prob;
};
// The witness unrolled over product paths shorter than `horizon` with positive measure.
std::vector<TableRow> witness_table(const MoWitness& w, int horizon);

struct MoResult {
  bool achievable = false;
  std::optional<MoWitness> witness;
  std::optional<Rational> slack;  // positive slack certificate for strict comparisons
};

MoResult mo_achievable(const PA& pa, const MoQuery& q, StrategyClass cls);

enum class Status { Holds, Fails, Unknown };
const char* status_name(Status s);

struct SampleResult {
  Valuation valuation;
  Status status = Status::Holds;
  std::string note;
};

struct Verdict {
  Status status = Status::Holds;
  std::optional<Valuation> valuation;
  std::optional<Valuation> valuation2;  // second point of a monotonicity counterexample
  std::optional<MoWitness> witness;
  std::string detail;
  std::vector<SampleResult> samples;
  std::string caveat;
};

struct CheckOptions {
  unsigned resolution = 2;
  StrategyClass cls = StrategyClass::Complete;
};

extern const char* const kSampleCaveat;

// Samples of r; an empty region (or one that samples to nothing) gives no samples.
std::vector<Valuation> sample_region(const Region& r, unsigned resolution);
// Throws IllDefinedValuationInRegion when v does not give distributions.
PA instantiate_checked(const PPA& m, const Valuation& v);

Verdict region_sat(const PPA& m, const Region& r, const MoQuery& q, const CheckOptions& opt);
Verdict ag_triple_check(const PPA& m, const Region& r, const MoQuery& a, const MoQuery& g, const CheckOptions& opt);

enum class Direction { Increasing, Decreasing };
const char* direction_name(Direction d);

struct MonotoneOptions {
  unsigned resolution = 2;
  StrategyClass cls = StrategyClass::Complete;
  unsigned grid_denominator = 4;
  unsigned random_strategies = 16;
  unsigned max_strategies = 4096;
  unsigned seed = 1;
};

Verdict monotone_check(const PPA& m, const Region& r, const Objective& o, const std::string& param, Direction dir,
                       const MonotoneOptions& opt);

// Exact value of an objective under a fixed memoryless strategy on the (tau-extended)
// objective product; strategy indices refer to that product's actions.
ExtRational objective_value(const PA& product, const std::set<int>& bad, const Objective& o,
                            const std::vector<SubDist>& strategy, const Valuation& v = {});

MoQuery instantiate(const MoQuery& q, const Valuation& v);
std::map<std::string, Rational> reward_at(const RewardObjective& o, const Valuation& v);

}  // namespace agv
