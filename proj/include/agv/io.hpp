#pragma once

#include <string>
#include <utility>
#include <vector>

#include "agv/automaton.hpp"
#include "agv/proofrules.hpp"
#include "agv/robust.hpp"
#include "agv/verify.hpp"

namespace agv {

// JSON documents with a "kind" of ppa, rpa, dfa, query or proof. Rationals and
// polynomials are strings. Syntax errors raise ParseFailure with the byte offset.

// Malformed JSON; the offset refers to the whole document.
class JsonSyntaxError : public ParseFailure {
 public:
  using ParseFailure::ParseFailure;
};

std::string read_text_file(const std::string& path);
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset);

PPA parse_ppa(const std::string& text);
RPA parse_rpa(const std::string& text);
DFA parse_dfa(const std::string& text);
MoQuery parse_query(const std::string& text);

std::string write_ppa(const PPA& m);
std::string write_rpa(const RPA& u);
std::string write_dfa(const DFA& d);
std::string write_query(const MoQuery& q);

PPA load_ppa(const std::string& path);
RPA load_rpa(const std::string& path);
MoQuery load_query(const std::string& path);

// A proof script names one rule and its inputs; paths resolve against the script.
struct ScriptRun {
  RuleApplication application;
  RuleOptions options;
};
ScriptRun run_proof_script(const std::string& path);

}  // namespace agv
