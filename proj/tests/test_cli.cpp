#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "finarg/apx.hpp"
#include "finarg/cli.hpp"
#include "support/reference.hpp"

using namespace finarg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("finarg_test_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("apx parsing") {
  const auto doc = parse_apx("% comment\narg(a). arg(b)\n.\natt(a,b). % trailing\narg(c').\n");
  CHECK(doc.names == std::vector<std::string>{"a", "b", "c'"});
  CHECK(doc.af.attacks(0, 1));
  CHECK(doc.af.attacks().size() == 1);
  CHECK(doc.index_of("b") == 1);
  CHECK_THROWS_AS(doc.index_of("z"), InputError);
  CHECK(parse_apx("").af.size() == 0);
}

TEST_CASE("apx errors carry line numbers") {
  auto msg = [](const std::string& text) {
    try {
      parse_apx(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(msg("arg(a).\natt(a,b).") == "line 2: undeclared argument 'b'");
  CHECK(msg("arg(a).\n\narg(a).") == "line 3: duplicate argument 'a'");
  CHECK(msg("foo(a).") == "line 1: unknown statement 'foo'");
  CHECK(msg("arg(a)") == "line 1: expected '.'");
  CHECK(msg("arg().") == "line 1: expected a name");
}

TEST_CASE("apx round trip") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const ApxDocument doc = with_default_names(ref::random_af(rng, 9, 30));
    const std::string text = emit_apx(doc, {"seeded"});
    const ApxDocument back = parse_apx(text);
    CHECK(back.af == doc.af);
    CHECK(back.names == doc.names);
    CHECK(emit_apx(back, {"seeded"}) == text);
  }
}

TEST_CASE("solve report") {
  const auto doc = parse_apx("arg(x). arg(y). arg(z). att(x,y). att(y,z).");
  const auto j = solve_report(doc, Semantics::stable, DecisionProblem::exists());
  CHECK(j["answer"] == true);
  CHECK(j["extensions"] == nlohmann::json::parse(R"([["x","z"]])"));
  CHECK(j["argument"].is_null());
  const auto k = solve_report(doc, Semantics::admissible, DecisionProblem::cred(1));
  CHECK(k["answer"] == false);
  CHECK(k["argument"] == "y");
  const auto inf = solve_report(doc, Semantics::inf_admissible, DecisionProblem::exists());
  CHECK(inf["answer"] == false);
  CHECK(inf["extensions"].empty());
}

TEST_CASE("solve subcommand") {
  const std::string f = write_temp("solve.apx", "arg(x). arg(y). att(x,y). att(y,x).\n");
  auto r = cli({"solve", f, "--semantics", "stb", "--problem", "uni", "--format", "json"});
  CHECK(r.code == kExitAnswered);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["answer"] == false);
  CHECK(j["extensions"].size() == 2);

  r = cli({"solve", f, "--semantics", "co", "--problem", "cred", "--arg", "x"});
  CHECK(r.code == kExitAnswered);
  CHECK(r.out.rfind("answer: true\n", 0) == 0);
  CHECK(r.out.find("extensions (3):") != std::string::npos);

  r = cli({"solve", f, "--semantics", "stb", "--format", "csv"});
  CHECK(r.out == "semantics,problem,argument,answer,extensions\nstb,exists,,true,{x};{y}\n");

  CHECK(cli({"solve", f, "--problem", "cred"}).code == kExitInputError);
  CHECK(cli({"solve", f, "--problem", "cred", "--arg", "nope"}).code == kExitInputError);
  CHECK(cli({"solve", f, "--semantics", "pr"}).code == kExitInputError);
  CHECK(cli({"solve", "/nonexistent/file.apx"}).code == kExitInputError);
  CHECK(cli({"solve"}).code == kExitInputError);
  CHECK(cli({}).code == kExitInputError);
  CHECK(cli({"--help"}).code == kExitAnswered);

  const std::string bad = write_temp("bad.apx", "arg(a).\natt(a,q).\n");
  r = cli({"solve", bad});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("gadget subcommand") {
  auto r = cli({"gadget", "fig1", "-n", "5", "-p", "stages=1"});
  CHECK(r.code == kExitAnswered);
  CHECK(r.out.rfind("% gadget fig1 (fig1(1))\n% first 5 arguments\n", 0) == 0);
  const ApxDocument doc = parse_apx(r.out);
  CHECK(doc.names == std::vector<std::string>{"a0", "a1", "a2", "a3", "b1"});
  CHECK(doc.af.attacks(doc.index_of("b1"), doc.index_of("a2")));

  r = cli({"gadget", "fig2", "-n", "4"});
  CHECK(r.out.find("% a_1 = a1") != std::string::npos);
  CHECK(cli({"gadget", "nosuch"}).code == kExitInputError);
  CHECK(cli({"gadget", "fig1", "-p", "stages"}).code == kExitInputError);
  CHECK(cli({"gadget", "random", "--seed", "3", "-p", "n=5"}).out ==
        cli({"gadget", "random", "--seed", "3", "-p", "n=5"}).out);
  r = cli({"gadget", "union", "-n", "4", "-p", "left=stars", "-p", "right=fig1"});
  CHECK(r.code == kExitAnswered);
  CHECK(r.out.find("arg(L.c0).") != std::string::npos);
}

TEST_CASE("trace subcommand") {
  auto r = cli({"trace", "stars", "-p", "stars=4", "--semantics", "inf-stb", "--stages", "24", "--expect",
                "reject"});
  CHECK(r.code == kExitAnswered);
  CHECK(r.out.find("final: reject at stage 24 (expected reject, matched yes)") != std::string::npos);

  r = cli({"trace", "fig1", "-p", "stages=1,2", "--semantics", "ad", "--problem", "cred", "--arg", "a6",
           "--stages", "3", "--format", "json"});
  CHECK(r.code == kExitAnswered);
  std::istringstream lines(r.out);
  std::string line;
  int records = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("final")) {
      CHECK(j["final"] == "accept");
      CHECK(j["expected"].is_null());
    } else {
      CHECK(j["class"] == "pi1");
      ++records;
    }
  }
  CHECK(records == 4);

  r = cli({"trace", "tree_cf", "--semantics", "inf-cf", "--stages", "2"});
  CHECK(r.code == kExitUnknown);
  CHECK(cli({"trace"}).code == kExitInputError);
  CHECK(cli({"trace", "stars", "--expect", "maybe"}).code == kExitInputError);
  CHECK(cli({"trace", "stars", "--semantics", "inf-co", "--problem", "uni"}).code == kExitInputError);
}

TEST_CASE("tree subcommand") {
  const std::string f = write_temp("tree.apx", "arg(x). arg(y). att(x,y). att(y,x).\n");
  auto r = cli({"tree", f, "--kind", "stb", "--depth", "2"});
  CHECK(r.code == kExitAnswered);
  CHECK(r.out == "[]  In={} Out={}\n"
                 "  [0]  In={x} Out={}\n"
                 "    [0,1]  In={x} Out={y}\n"
                 "  [2]  In={y} Out={x}\n"
                 "    [2,0]  In={y} Out={x}\n"
                 "# nodes 5, frontier at depth 2: 2\n");
  r = cli({"tree", f, "--kind", "co", "--depth", "1", "--format", "dot"});
  CHECK(r.out.rfind("digraph tree {", 0) == 0);
  CHECK(r.out.find("InS+=") != std::string::npos);
  r = cli({"tree", "--gadget", "stars", "--kind", "stb", "--depth", "3", "--D", "c0"});
  CHECK(r.code == kExitAnswered);
  CHECK(r.out.find("frontier at depth 3") != std::string::npos);
  CHECK(cli({"tree", f, "--depth", "100"}).code == kExitInputError);
  CHECK(cli({"tree", f, "--kind", "pr"}).code == kExitInputError);
  CHECK(cli({"tree", "--gadget", "stars", "--kind", "inf-na", "--depth", "2"}).code == kExitInputError);
  CHECK(cli({"tree", "--gadget", "stars", "--kind", "inf-na", "--depth", "2", "--cap", "5"}).code == kExitAnswered);
  CHECK(cli({"tree", f, "--depth", "2", "--budget", "2"}).code == kExitUnknown);
}
