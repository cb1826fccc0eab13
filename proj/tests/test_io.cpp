#include "doctest.h"
#include "support.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "agv/io_json.hpp"

using namespace agvtest;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the command-line tool with stderr folded into the captured output.
Run cli(const std::string& args) {
  std::string cmd = std::string(AGV_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("agv_test_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

const char* kModel = R"({
  "format": "agv/1",
  "kind": "ppa",
  "parameters": ["p"],
  "alphabet": ["a"],
  "states": ["s0", "s1"],
  "initial": "s0",
  "actions": ["s0.a"],
  "transitions": [
    {"state": "s0", "action": "s0.a", "label": "a", "to": {"s0": "PROB", "s1": "1-p"}}
  ]
}
)";

std::string model_with(const std::string& prob) {
  std::string text = kModel;
  text.replace(text.find("PROB"), 4, prob);
  return text;
}

}  // namespace

TEST_CASE("corpus documents round-trip") {
  for (const char* f : {"m1.json", "m2.json", "m1p.json", "m1pp.json", "m2p.json", "m1m2.json"}) {
    PPA m = load_ppa(corpus(f));
    std::string text = write_ppa(m);
    CHECK(write_ppa(parse_ppa(text)) == text);
    CHECK(isomorphic(parse_ppa(text), m));
  }
  for (const char* f : {"u1.json", "u2.json", "u1p.json", "u2p.json"}) {
    std::string text = write_rpa(load_rpa(corpus(f)));
    CHECK(write_rpa(parse_rpa(text)) == text);
  }
  for (const char* f : {"no_frown.json", "at_most_one_a.json", "not_acaf.json", "trivial_ab.json"}) {
    std::string text = write_query(load_query(corpus(f)));
    CHECK(write_query(parse_query(text)) == text);
  }
}

TEST_CASE("random models round-trip (property)") {
  std::mt19937 rng(12);
  for (int i = 0; i < 50; ++i) {
    PA m = compose(random_pa(rng, "s", uniform(rng, 1, 3), {"a", "b"}), random_pa(rng, "t", uniform(rng, 1, 3), {"b"}));
    std::string text = write_ppa(to_ppa(m));
    PPA back = parse_ppa(text);
    CHECK(write_ppa(back) == text);
    CHECK(back.composition.has_value());
    CHECK(isomorphic(instantiate(back, {}), m));
    RPA u = random_rpa(rng, "u", uniform(rng, 1, 3), {"a", "c"});
    std::string rt = write_rpa(u);
    CHECK(write_rpa(parse_rpa(rt)) == rt);
  }
}

TEST_CASE("DFA documents") {
  DFA d = DFA::bad_count("a", 2, {"a", "b"});
  std::string text = write_dfa(d);
  CHECK(write_dfa(parse_dfa(text)) == text);
  CHECK_THROWS_AS(parse_dfa(R"({"kind": "dfa", "states": ["q"], "initial": "q", "alphabet": ["a"], "accepting": [], "delta": []})"),
                  Error);
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(parse_ppa(model_with("p +")), ParseFailure);
  try {
    parse_ppa(model_with("p + * 2"));
    FAIL("expected a parse failure");
  } catch (const ParseFailure& e) {
    CHECK(std::string(e.what()).find("bad polynomial 'p + * 2'") != std::string::npos);
    CHECK(e.position() == 4);
  }
  try {
    parse_ppa("{\n  \"kind\": \"ppa\",\n  \"states\": [,]\n}");
    FAIL("expected a syntax error");
  } catch (const JsonSyntaxError& e) {
    std::string text = "{\n  \"kind\": \"ppa\",\n  \"states\": [,]\n}";
    CHECK(line_column(text, e.position()) == std::make_pair(std::size_t{3}, std::size_t{14}));
  }
  CHECK_THROWS_AS(parse_rpa(model_with("p")), Error);
  CHECK_THROWS_AS(parse_ppa(model_with("q")), Error);
  CHECK_THROWS_AS(load_ppa(corpus("no_such_file.json")), Error);
}

TEST_CASE("proof scripts") {
  ScriptRun run = run_proof_script(corpus("asym_safety.agproof"));
  CHECK(run.application.rule == Rule::Asymmetric);
  CHECK(run.application.status == Status::Holds);
  CHECK(run_proof_script(corpus("asym_outside.agproof")).application.status == Status::Fails);
  std::string j1 = dump(to_json(run.application));
  std::string j2 = dump(to_json(run_proof_script(corpus("asym_safety.agproof")).application));
  CHECK(j1 == j2);
}

TEST_CASE("command-line reports and exit codes") {
  auto ok = cli("rule --script " + corpus("asym_safety.agproof"));
  CHECK(ok.status == 0);
  CHECK(ok.out.find("\"status\": \"Holds\"") != std::string::npos);
  CHECK(cli("rule --script " + corpus("asym_safety.agproof")).out == ok.out);
  CHECK(cli("rule --script " + corpus("asym_outside.agproof")).status == 1);
  auto check = cli("check --model " + corpus("m1m2.json") + " --query " + corpus("no_frown.json") +
                   " --region box:p=[0,1/10],q=[0,1] --resolution 2");
  CHECK(check.status == 0);
  auto fails = cli("check --model " + corpus("m1m2.json") + " --query " + corpus("no_frown.json") +
                   " --region finite:{p=1/2,q=1}");
  CHECK(fails.status == 1);
  CHECK(cli("compose --left " + corpus("m1.json") + " --right " + corpus("m2.json")).out ==
        read_text_file(corpus("m1m2.json")));
}

TEST_CASE("command-line input errors exit with status 2 and a position") {
  auto poly = cli("instantiate --model " + temp_file("poly.json", model_with("p + * 2")) + " --valuation p=1/2");
  CHECK(poly.status == 2);
  CHECK(poly.out.find("bad polynomial 'p + * 2'") != std::string::npos);
  CHECK(poly.out.find("column 5") != std::string::npos);

  auto json = cli("instantiate --model " + temp_file("json.json", "{\n  \"kind\": \"ppa\",\n  \"states\": [,]\n}") +
                  " --valuation p=1/2");
  CHECK(json.status == 2);
  CHECK(json.out.find(":3:14: malformed JSON") != std::string::npos);

  auto region = cli("check --model " + corpus("m1.json") + " --query " + corpus("at_most_one_a.json") +
                    " --region box:p=[0,");
  CHECK(region.status == 2);
  CHECK(region.out.find("--region") != std::string::npos);
  CHECK(cli("frobnicate").status == 2);
}
