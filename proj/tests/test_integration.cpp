#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sys/wait.h>

#include "finarg/apx.hpp"
#include "finarg/cli.hpp"
#include "support/golden.hpp"

using namespace finarg;
namespace fs = std::filesystem;

namespace {

struct Proc {
  int code;
  std::string out;
};

Proc afsolve(const std::string& args) {
  const std::string cmd = std::string(AFSOLVE_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp(const std::string& name) { return (fs::temp_directory_path() / ("finarg_it_" + name)).string(); }

}  // namespace

TEST_CASE("gadget to file to solve") {
  const std::string f = temp("stars.apx");
  const Proc g = afsolve("gadget stars -p stars=2 -n 9");
  REQUIRE(g.code == 0);
  std::ofstream(f) << g.out;
  const Proc s = afsolve("solve " + f + " --semantics stb --problem uni --format json");
  CHECK(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["answer"] == true);
  REQUIRE(j["extensions"].size() == 1);
  CHECK(j["extensions"][0] == nlohmann::json::parse(R"(["c0","c1"])"));
}

TEST_CASE("exit codes of the binary") {
  CHECK(afsolve("solve /nonexistent.apx").code == kExitInputError);
  CHECK(afsolve("frobnicate").code == kExitInputError);
  CHECK(afsolve("trace tree_cf --semantics inf-na --stages 1").code == kExitUnknown);
  const std::string f = temp("cycle.apx");
  std::ofstream(f) << "arg(a). arg(b). arg(c). att(a,b). att(b,c). att(c,a).\n";
  const Proc s = afsolve("solve " + f + " --semantics stb");
  CHECK(s.code == kExitAnswered);
  CHECK(s.out == "answer: false\nextensions (0):\n");
}

TEST_CASE("large frameworks go through the anytime path") {
  // 30 arguments is past the brute-force cap
  ApxDocument doc = with_default_names(FiniteAF(30, {{0, 1}, {1, 2}, {2, 0}}));
  const std::string f = temp("big.apx");
  std::ofstream(f) << emit_apx(doc);
  const Proc s = afsolve("solve " + f + " --semantics stb --problem exists --format json");
  CHECK(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["answer"] == false);
  CHECK(j["extensions"].is_null());
  const Proc c = afsolve("solve " + f + " --semantics ad --problem cred --arg a5 --format json");
  CHECK(nlohmann::json::parse(c.out)["answer"] == true);
}

TEST_CASE("trace reproduces the golden verdicts") {
  for (const char* file : {"fig1.json", "stars.json", "fig2.json"}) {
    const auto gj = golden::load(file);
    const std::string id = gj["gadget"].get<std::string>();
    for (const auto& c : gj["cases"]) {
      std::string args = "trace " + id;
      for (const auto& [k, v] : c["params"].items()) args += " -p " + k + "=" + v.get<std::string>();
      args += " --semantics " + c["semantics"].get<std::string>() + " --problem " + c["problem"].get<std::string>();
      if (c.contains("arg")) args += " --arg " + c["arg"].get<std::string>();
      const std::size_t stages = std::max<std::size_t>(2 * c["stage"].get<std::size_t>(), golden::kMinHorizon);
      args += " --stages " + std::to_string(stages) + " --expect " + c["answer"].get<std::string>() + " --format csv";
      CAPTURE(args);
      const Proc p = afsolve(args);
      CHECK(p.code == 0);
      CHECK(p.out.find(",yes\n") != std::string::npos);
    }
  }
}
