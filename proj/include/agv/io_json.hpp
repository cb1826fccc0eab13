#pragma once

// JSON conversions shared by the I/O module and the command-line tool.

#include "json.hpp"

#include "agv/io.hpp"
#include "agv/simulate.hpp"

namespace agv {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& x);
Json to_json(const Valuation& v);
Json to_json(const PPA& m);
Json to_json(const RPA& u);
Json to_json(const DFA& d);
Json to_json(const Objective& o);
Json to_json(const MoQuery& q);
Json to_json(const MoWitness& w);
Json to_json(const Verdict& v);
Json to_json(const RuleApplication& app);
Json relation_json(const SimRelation& rel, const std::vector<std::string>& left, const std::vector<std::string>& right);

Rational rational_from_json(const Json& j);
PPA ppa_from_json(const Json& j);
RPA rpa_from_json(const Json& j);
DFA dfa_from_json(const Json& j);
Objective objective_from_json(const Json& j);
MoQuery query_from_json(const Json& j);

// Raises ParseFailure on syntax errors.
Json parse_json(const std::string& text);
std::string dump(const Json& j);

}  // namespace agv
