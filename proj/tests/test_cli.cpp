#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "selberg/cli.hpp"

using selberg::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("count prints the number of orders") {
  Run r = run({"count", "--graph", "GS", "--params", "2,1,1,1"});
  CHECK(r.code == selberg::kExitOk);
  CHECK(r.out == "2\n");
  Run fixed = run({"count", "--graph", "GX", "--alpha", "1,1,1", "--fix", "u1=1,u2=4,u3=6", "--method", "brute"});
  CHECK(fixed.code == 0);
  CHECK(fixed.out == "2\n");
}

TEST_CASE("verify selberg reports equality") {
  Run r = run({"verify", "selberg", "--n", "2", "--a", "1", "--b", "1", "--c", "1", "--methods", "dp,formula"});
  CHECK(r.code == 0);
  CHECK(r.out.find("equal: true") != std::string::npos);
}

TEST_CASE("formula") {
  Run r = run({"formula", "--kind", "intro", "--n", "2", "--t", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  Run s = run({"formula", "--kind", "combSelberg", "--params", "3,3,2,1"});
  CHECK(s.out == "302455296\n");
  Run zero = run({"formula", "--kind", "intro", "--n", "3", "--t", "0", "--format", "json"});
  CHECK(zero.code == 0);
  CHECK(nlohmann::json::parse(zero.out)["outside_derivation"] == true);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == selberg::kExitUsage);
  CHECK(run({"count"}).code == 2);
  CHECK(run({"count", "--graph", "GQ", "--params", "1"}).code == 2);
  CHECK(run({"count", "--graph", "GS", "--params", "2,1,x,1"}).code == 2);
  CHECK(run({"formula", "--kind", "intro", "--n", "3", "--t", "1", "--format", "yaml"}).code == 2);
  CHECK(run({"verify", "crux", "--alpha", "1,2,1", "--p", "1,6"}).code == 2);
  CHECK(run({"verify", "selberg", "--params", "3,3,2,1", "--methods", "brute"}).code == 2);
  Run r = run({"bogus"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("json outputs parse and repeat byte for byte") {
  std::vector<std::vector<std::string>> cmds{
      {"count", "--graph", "GS", "--params", "2,1,1,2", "--format", "json"},
      {"formula", "--kind", "combSelberg", "--params", "2,1,1,1", "--format", "json"},
      {"verify", "selberg", "--params", "2,2,1,1", "--methods", "dp,recurrence,formula", "--format", "json"},
      {"verify", "crux-prime", "--alpha", "1,1,1", "--all", "--format", "json"},
      {"verify", "gk", "--params", "2,1,1,1", "--check", "--format", "json"},
      {"verify", "crux", "--alpha", "1,1,1", "--p", "1,6", "--format", "json"},
      {"certify", "vandermonde", "--alpha", "1,2", "--format", "json"},
      {"vandermonde", "--alpha", "2,3", "--series", "1,1,1,1,1,1,1", "--format", "json"},
  };
  for (const auto& c : cmds) {
    Run a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out).is_object());
  }
  auto crux = nlohmann::json::parse(run(cmds[5]).out);
  CHECK(crux["summary"]["left_size"] == 24);
  CHECK(crux["summary"]["right_size"] == 24);
}

TEST_CASE("certificates and dot files are written") {
  std::string cert = "cli_test_cert.json", dot = "cli_test_graph.dot";
  Run c = run({"certify", "crux", "--alpha", "1,1,1", "--p", "1,6", "--out", cert});
  CHECK(c.code == 0);
  std::ifstream in(cert);
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j.contains("sijection"));
  Run d = run({"count", "--graph", "GX", "--alpha", "2,1,3", "--emit-dot", dot});
  CHECK(d.code == 0);
  std::ifstream din(dot);
  std::string first;
  std::getline(din, first);
  CHECK(first.find("digraph") != std::string::npos);
  std::remove(cert.c_str());
  std::remove(dot.c_str());
}

TEST_CASE("vandermonde text output") {
  Run r = run({"vandermonde", "--alpha", "2,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("equal: true") != std::string::npos);
}

}
