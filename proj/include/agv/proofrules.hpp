#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agv/automaton.hpp"
#include "agv/region.hpp"
#include "agv/robust.hpp"
#include "agv/simulate.hpp"
#include "agv/verify.hpp"

namespace agv {

enum class Rule {
  Asymmetric,
  Circular,
  AsymN,
  Conjunction,
  Interleaving,
  RewardSum,
  Monotonicity,
  SimulationAG,
  RpaAsymmetric,
  RpaCircular,
  RpaConjunction,
  RpaAsymN,
  RpaInterleaving,
};
const char* rule_name(Rule r);
Rule parse_rule(const std::string& text);

enum class Confidence { CheckedPerSample, Attested };
const char* confidence_name(Confidence c);

enum class PremiseKind { RegionSat, AgTriple, Monotone, SimLeq, Attested };
const char* premise_kind_name(PremiseKind k);

struct Premise {
  PremiseKind kind = PremiseKind::RegionSat;
  std::string statement;
  Status status = Status::Unknown;
  std::optional<Verdict> verdict;
  std::string provenance;  // attested premises only
};

struct SideCheck {
  std::string statement;
  bool ok = true;
};

enum class ConclusionKind { Satisfies, Triple, Monotone, Simulation };

// Enough of the conclusion to re-check it directly.
struct Conclusion {
  ConclusionKind kind = ConclusionKind::Satisfies;
  std::string statement;
  PPA model;
  Region region;
  StrategyClass cls = StrategyClass::Complete;
  bool fair = false;  // quantifies over fair strategies only
  MoQuery assumption;
  MoQuery guarantee;
  std::optional<Objective> objective;
  std::string param;
  Direction direction = Direction::Increasing;
  std::optional<PPA> spec;
  bool robust = false;
};

struct RuleApplication {
  Rule rule = Rule::Asymmetric;
  std::vector<SideCheck> side_conditions;
  std::vector<Premise> premises;
  Status status = Status::Unknown;
  std::optional<Conclusion> conclusion;
  Confidence confidence = Confidence::CheckedPerSample;
  std::string note;
};

struct RuleOptions {
  unsigned resolution = 4;
  MonotoneOptions monotone;
  // Component names used in statements; defaults to M1, M2, ...
  std::vector<std::string> names;
  // Selects the fair-strategy variant; premises are then attested with this note.
  std::optional<std::string> fair_attestation;
};

RuleApplication apply_asymmetric(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2, const MoQuery& a,
                                 const MoQuery& g, const RuleOptions& opt = {});
RuleApplication apply_circular(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2, const Region& r3,
                               const MoQuery& a1, const MoQuery& a2, const MoQuery& g, const RuleOptions& opt = {});
// Premises: models[0] ⊨ as[0], then <as[i-1]> models[i] <as[i]>, last guarantee g.
RuleApplication apply_asym_n(const std::vector<PPA>& models, const std::vector<Region>& regions,
                             const std::vector<MoQuery>& as, const MoQuery& g, const RuleOptions& opt = {});
RuleApplication apply_conjunction(const PPA& m, const Region& r1, const Region& r2, const MoQuery& a1,
                                  const MoQuery& g1, const MoQuery& a2, const MoQuery& g2, const RuleOptions& opt = {});
RuleApplication apply_interleaving(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2,
                                   const MoQuery& a1, const MoQuery& a2, const ProbObjective& g1,
                                   const ProbObjective& g2, const RuleOptions& opt = {});
RuleApplication apply_reward_sum(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2, const MoQuery& a1,
                                 const MoQuery& a2, const RewardObjective& g1, const RewardObjective& g2,
                                 const RuleOptions& opt = {});
RuleApplication apply_monotonicity(const PPA& m1, const PPA& m2, const Region& r1, const Region& r2,
                                   const Objective& o, const std::string& param, Direction dir,
                                   const RuleOptions& opt = {});
RuleApplication apply_simulation_ag(const PPA& m1, const PPA& m2, const PPA& ma, const PPA& mg, const Region& r1,
                                    const Region& r2, bool robust, const RuleOptions& opt = {});

// Rules for polytopic rPAs, discharged on PA-reductions; conclusions concern the
// convex composition.
RuleApplication apply_rpa_asymmetric(const RPA& u1, const RPA& u2, const MoQuery& a, const MoQuery& g,
                                     const RuleOptions& opt = {});
RuleApplication apply_rpa_circular(const RPA& u1, const RPA& u2, const MoQuery& a1, const MoQuery& a2,
                                   const MoQuery& g, const RuleOptions& opt = {});
RuleApplication apply_rpa_asym_n(const std::vector<RPA>& us, const std::vector<MoQuery>& as, const MoQuery& g,
                                 const RuleOptions& opt = {});
RuleApplication apply_rpa_conjunction(const RPA& u, const MoQuery& a1, const MoQuery& g1, const MoQuery& a2,
                                      const MoQuery& g2, const RuleOptions& opt = {});
RuleApplication apply_rpa_interleaving(const RPA& u1, const RPA& u2, const MoQuery& a1, const MoQuery& a2,
                                       const ProbObjective& g1, const ProbObjective& g2, const RuleOptions& opt = {});

Rational interleaving_threshold(const Rational& p1, const Rational& p2);  // p1 + p2 - p1 * p2
// Pointwise sum; the threshold is r1 + r2 and the comparison must agree.
RewardObjective reward_sum(const RewardObjective& g1, const RewardObjective& g2);
// Bad-prefix DFA for the union of the two safety languages.
ProbObjective union_objective(const ProbObjective& g1, const ProbObjective& g2, const Rational& threshold);

// Checks a conclusion directly on its composed model at the same samples.
Verdict check_conclusion(const Conclusion& c, const RuleOptions& opt = {});

}  // namespace agv
