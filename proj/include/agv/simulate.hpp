#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "agv/automaton.hpp"
#include "agv/region.hpp"
#include "agv/verify.hpp"

namespace agv {

using SimRelation = std::set<std::pair<int, int>>;  // (left state, right state)

// mu1 ⊑_R mu2, decided by a rational max-flow on the support graph of rel.
bool dist_leq(const std::vector<std::pair<int, Rational>>& mu1, const std::vector<std::pair<int, Rational>>& mu2,
              const SimRelation& rel);

// Greatest strong simulation of n1 by n2, if it relates the initial states.
std::optional<SimRelation> strong_sim(const PA& n1, const PA& n2);

// Strong simulation at every sampled valuation; the relation may differ per valuation.
Verdict strong_sim_region(const PPA& m1, const PPA& m2, const Region& r, unsigned resolution);

// One relation that is a strong simulation at every sampled valuation.
std::optional<SimRelation> robust_strong_sim(const PPA& m1, const PPA& m2, const Region& r, unsigned resolution);

std::string relation_string(const SimRelation& rel, const std::vector<std::string>& left,
                            const std::vector<std::string>& right);

}  // namespace agv
