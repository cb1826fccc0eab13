#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "agv/io.hpp"
#include "agv/io_json.hpp"
#include "agv/proofrules.hpp"
#include "agv/robust.hpp"
#include "agv/simulate.hpp"
#include "golden_suite.hpp"

using namespace agv;

namespace {

enum Exit { kHolds = 0, kFails = 1, kUsage = 2, kUnknown = 3 };

int exit_for(Status s) {
  switch (s) {
    case Status::Holds: return kHolds;
    case Status::Fails: return kFails;
    case Status::Unknown: return kUnknown;
  }
  return kUnknown;
}

// Raised after a diagnostic has been printed.
struct Reported {};

std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class Session {
 public:
  std::string command;
  std::string out_path;
  bool timing = false;
  Json inputs = Json::object();
  Json arguments = Json::object();

  template <class F>
  auto load(const std::string& role, const std::string& path, F&& parse) {
    std::string text;
    try {
      text = read_text_file(path);
    } catch (const Error& e) {
      std::cerr << path << ": " << e.what() << "\n";
      throw Reported{};
    }
    inputs[role] = {{"path", path}, {"digest", digest(text)}};
    try {
      return parse(text);
    } catch (const JsonSyntaxError& e) {
      const auto [line, col] = line_column(text, e.position());
      std::cerr << path << ":" << line << ":" << col << ": malformed JSON\n";
      throw Reported{};
    } catch (const ParseFailure& e) {
      std::cerr << path << ": " << e.what() << " (column " << e.position() + 1 << " of the expression)\n";
      throw Reported{};
    } catch (const Error& e) {
      std::cerr << path << ": " << e.what() << "\n";
      throw Reported{};
    }
  }

  PPA ppa(const std::string& role, const std::string& path) { return load(role, path, parse_ppa); }
  RPA rpa(const std::string& role, const std::string& path) { return load(role, path, parse_rpa); }
  DFA dfa(const std::string& role, const std::string& path) { return load(role, path, parse_dfa); }
  MoQuery query(const std::string& role, const std::string& path) { return load(role, path, parse_query); }

  Region region(const std::string& text) {
    arguments["region"] = text;
    try {
      return Region::parse(text);
    } catch (const ParseFailure& e) {
      std::cerr << "--region: " << e.what() << " (column " << e.position() + 1 << ")\n";
      throw Reported{};
    }
  }

  void emit_text(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << out_path << ": cannot write\n";
      throw Reported{};
    }
    out << text;
  }

  void emit_report(Json result, std::chrono::steady_clock::time_point start) const {
    Json j;
    j["command"] = command;
    j["arguments"] = arguments;
    j["inputs"] = inputs;
    j["result"] = std::move(result);
    if (timing)
      j["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    emit_text(dump(j));
  }
};

Valuation parse_valuation(const std::string& text) {
  Region r = Region::parse("finite:{" + text + "}");
  return std::get<Region::Finite>(r.parts().front()).points.front();
}

std::set<std::string> parse_symbols(const std::string& text) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    auto item = text.substr(start, comma - start);
    if (!item.empty()) out.insert(item);
    start = comma + 1;
  }
  return out;
}

Json table_json(const MoWitness& w, int horizon) {
  Json rows = Json::array();
  for (const auto& row : witness_table(w, horizon))
    rows.push_back({path_string(w.product, row.path), row.action, to_string(row.prob)});
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assume-guarantee verification of parametric and robust probabilistic automata"};
  app.require_subcommand(1);
  Session session;
  std::string model, left, right, region = "finite:{}", query, assume, dfa, valuation, alphabet, script, corpus,
                                   cls = "cmp", param, direction = "decreasing";
  unsigned resolution = 2;
  int horizon = 0;
  bool robust = false, prune = false;
  auto common_out = [&](CLI::App* sub) {
    sub->add_option("--out", session.out_path, "Write the output to this file");
    sub->add_flag("--timing", session.timing, "Include wall-clock time in the report");
  };
  auto binary = [&](CLI::App* sub) {
    sub->add_option("--left", left, "Left model file")->required();
    sub->add_option("--right", right, "Right model file")->required();
    common_out(sub);
  };

  auto* compose_cmd = app.add_subcommand("compose", "Parallel composition of two pPAs");
  binary(compose_cmd);
  auto* inst_cmd = app.add_subcommand("instantiate", "Instantiate a pPA at a valuation");
  inst_cmd->add_option("--model", model)->required();
  inst_cmd->add_option("--valuation", valuation, "e.g. p=1/10,q=9/10")->required();
  common_out(inst_cmd);
  auto* extend_cmd = app.add_subcommand("extend", "Alphabet extension with self-loops");
  extend_cmd->add_option("--model", model)->required();
  extend_cmd->add_option("--alphabet", alphabet, "Comma-separated symbols")->required();
  common_out(extend_cmd);
  auto* tau_cmd = app.add_subcommand("tau", "Tau extension");
  tau_cmd->add_option("--model", model)->required();
  common_out(tau_cmd);
  auto* product_cmd = app.add_subcommand("product", "Product with a bad-prefix DFA");
  product_cmd->add_option("--model", model)->required();
  product_cmd->add_option("--dfa", dfa)->required();
  product_cmd->add_flag("--prune", prune, "Drop unreachable states");
  common_out(product_cmd);

  auto* check_cmd = app.add_subcommand("check", "Check a query, an AG triple or monotonicity over a region");
  check_cmd->add_option("--model", model)->required();
  check_cmd->add_option("--query,--objective", query, "Query file (guarantee)")->required();
  check_cmd->add_option("--assume", assume, "Assumption query file for an AG triple");
  check_cmd->add_option("--region", region);
  check_cmd->add_option("--resolution", resolution);
  check_cmd->add_option("--class", cls)->check(CLI::IsMember({"cmp", "prt"}));
  check_cmd->add_option("--horizon", horizon, "Tabulate witness strategies over paths shorter than this");
  check_cmd->add_option("--monotone", param, "Check monotonicity in this parameter instead");
  check_cmd->add_option("--direction", direction)->check(CLI::IsMember({"increasing", "decreasing"}));
  common_out(check_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Strong simulation over a region");
  binary(sim_cmd);
  sim_cmd->add_option("--region", region);
  sim_cmd->add_option("--resolution", resolution);
  sim_cmd->add_flag("--robust", robust, "Require one relation for every sampled valuation");

  std::string rule_name_arg;
  auto* rule_cmd = app.add_subcommand("rule", "Apply a proof rule from a script");
  rule_cmd->add_option("name", rule_name_arg, "Rule name (must match the script)");
  rule_cmd->add_option("--script", script)->required();
  common_out(rule_cmd);

  auto* rpa_compose_cmd = app.add_subcommand("rpa-compose", "Standard rPA composition");
  binary(rpa_compose_cmd);
  auto* rpa_conv_cmd = app.add_subcommand("rpa-conv", "Convex rPA composition");
  binary(rpa_conv_cmd);
  auto* rpa_relax_cmd = app.add_subcommand("rpa-relax", "Interval-relaxation composition of iPAs");
  binary(rpa_relax_cmd);
  auto* rpa_reduce_cmd = app.add_subcommand("rpa-reduce", "PA-reduction of a polytopic rPA");
  rpa_reduce_cmd->add_option("--model", model)->required();
  common_out(rpa_reduce_cmd);

  auto* suite_cmd = app.add_subcommand("paper-suite", "Golden regression over the bundled corpus");
  suite_cmd->add_option("--corpus", corpus)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  session.command = sub->get_name();
  try {
    if (sub == compose_cmd) {
      session.emit_text(write_ppa(compose(session.ppa("left", left), session.ppa("right", right))));
      return kHolds;
    }
    if (sub == inst_cmd) {
      PPA m = session.ppa("model", model);
      Valuation v = parse_valuation(valuation);
      if (well_defined(m, v) == Definedness::Neither)
        fail(ErrorKind::IllDefinedValuationInRegion, to_string(v) + " does not give distributions");
      session.emit_text(write_ppa(to_ppa(instantiate(m, v))));
      return kHolds;
    }
    if (sub == extend_cmd) {
      session.emit_text(write_ppa(alphabet_extend(session.ppa("model", model), parse_symbols(alphabet))));
      return kHolds;
    }
    if (sub == tau_cmd) {
      session.emit_text(write_ppa(tau_extend(session.ppa("model", model))));
      return kHolds;
    }
    if (sub == product_cmd) {
      auto p = dfa_product(session.ppa("model", model), session.dfa("dfa", dfa));
      session.emit_text(write_ppa(prune ? prune_unreachable(p.model) : p.model));
      return kHolds;
    }
    if (sub == rpa_compose_cmd || sub == rpa_conv_cmd || sub == rpa_relax_cmd) {
      RPA u1 = session.rpa("left", left), u2 = session.rpa("right", right);
      RPA u = sub == rpa_compose_cmd ? rpa_compose(u1, u2)
              : sub == rpa_conv_cmd  ? conv_compose(u1, u2)
                                     : interval_relax_compose(u1, u2);
      session.emit_text(write_rpa(u));
      return kHolds;
    }
    if (sub == rpa_reduce_cmd) {
      session.emit_text(write_ppa(to_ppa(pa_reduce(session.rpa("model", model)))));
      return kHolds;
    }
    if (sub == check_cmd) {
      PPA m = session.ppa("model", model);
      MoQuery g = session.query("query", query);
      Region r = session.region(region);
      session.arguments["resolution"] = resolution;
      session.arguments["class"] = cls;
      Verdict v;
      if (!param.empty()) {
        if (g.objectives.size() != 1) fail(ErrorKind::FormatError, "monotonicity needs a single objective");
        session.arguments["monotone"] = param;
        session.arguments["direction"] = direction;
        MonotoneOptions opt;
        opt.resolution = resolution;
        opt.cls = parse_class(cls);
        v = monotone_check(m, r, g.objectives.front(), param,
                           direction == "increasing" ? Direction::Increasing : Direction::Decreasing, opt);
      } else {
        CheckOptions opt{resolution, parse_class(cls)};
        if (assume.empty()) {
          v = region_sat(m, r, g, opt);
        } else {
          v = ag_triple_check(m, r, session.query("assume", assume), g, opt);
        }
      }
      Json result = to_json(v);
      if (horizon > 0 && v.witness) {
        session.arguments["horizon"] = horizon;
        result["strategy_table"] = table_json(*v.witness, horizon);
      }
      session.emit_report(result, start);
      return exit_for(v.status);
    }
    if (sub == sim_cmd) {
      PPA m1 = session.ppa("left", left), m2 = session.ppa("right", right);
      Region r = session.region(region);
      session.arguments["resolution"] = resolution;
      session.arguments["robust"] = robust;
      Json result;
      Status status;
      if (robust) {
        auto rel = robust_strong_sim(m1, m2, r, resolution);
        status = rel ? Status::Holds : Status::Fails;
        result["status"] = status_name(status);
        if (rel) result["relation"] = relation_json(*rel, m1.states(), m2.states());
        else result["detail"] = "no single relation is a strong simulation at every sampled valuation";
      } else {
        Verdict v = strong_sim_region(m1, m2, r, resolution);
        status = v.status;
        result = to_json(v);
      }
      session.emit_report(result, start);
      return exit_for(status);
    }
    if (sub == rule_cmd) {
      session.inputs["script"] = {{"path", script}, {"digest", digest(session.load("script", script, [](const std::string& t) { return t; }))}};
      ScriptRun run = run_proof_script(script);
      if (!rule_name_arg.empty() && parse_rule(rule_name_arg) != run.application.rule)
        fail(ErrorKind::InvalidArgument, "script applies " + std::string(rule_name(run.application.rule)) + ", not " + rule_name_arg);
      session.emit_report(to_json(run.application), start);
      if (run.application.status == Status::Holds && run.application.confidence == Confidence::Attested) return kUnknown;
      return exit_for(run.application.status);
    }
    if (sub == suite_cmd) return run_golden_suite(corpus, std::cout) ? kHolds : kFails;
  } catch (const Reported&) {
    return kUsage;
  } catch (const JsonSyntaxError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
