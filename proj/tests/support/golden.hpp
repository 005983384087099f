#pragma once

// Golden gadget cases: each records the answer a process settles on and the
// first stage from which it holds.

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "finarg/cli.hpp"
#include "finarg/decide.hpp"

namespace golden {

inline constexpr std::size_t kMinHorizon = 32;

inline nlohmann::json load(const std::string& name) {
  std::ifstream in(std::string(FINARG_GOLDEN_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing golden file " + name);
  return nlohmann::json::parse(in);
}

inline std::map<std::string, std::string> params(const nlohmann::json& j) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = v.get<std::string>();
  return out;
}

inline finarg::ArgumentId find_arg(const finarg::GadgetInstance& g, const std::string& name) {
  for (finarg::ArgumentId m = 0; m < 100000; ++m)
    if (g.af.name(m) == name) return m;
  throw std::runtime_error("no argument " + name);
}

struct CaseRun {
  bool ok = false;
  std::string label;
  std::string detail;
  finarg::ConvergenceClass cls = finarg::ConvergenceClass::none;
  std::vector<finarg::Verdict> stream;
};

inline std::string label_of(const std::string& gadget, const nlohmann::json& c) {
  std::string l = gadget + "(" + c["params"].dump() + ") " + c["problem"].get<std::string>() + "_" +
                  c["semantics"].get<std::string>();
  if (c.contains("arg")) l += "(" + c["arg"].get<std::string>() + ")";
  return l;
}

/// Runs one case through max(2*stage, kMinHorizon) and checks that the answer
/// first settles exactly at the recorded stage.
inline CaseRun run_case(const std::string& gadget, const nlohmann::json& c) {
  using namespace finarg;
  CaseRun r;
  r.label = label_of(gadget, c);
  const GadgetInstance g = make_gadget(gadget, params(c["params"]));
  std::optional<ArgumentId> arg;
  if (c.contains("arg")) arg = find_arg(g, c["arg"].get<std::string>());
  const DecisionProblem p{*parse_problem(c["problem"].get<std::string>()), arg};
  auto proc = make_process(g.af, p, *parse_semantics(c["semantics"].get<std::string>()));
  const std::size_t stage = c["stage"].get<std::size_t>();
  const std::size_t horizon = std::max(2 * stage, kMinHorizon);
  r.stream = proc.run(horizon);
  r.cls = proc.cls();
  const std::string want = c["answer"].get<std::string>();
  std::size_t settled = horizon + 1;
  for (std::size_t s = horizon + 1; s-- > 0;) {
    if (to_string(r.stream[s].answer) != want) break;
    settled = s;
  }
  r.ok = settled == stage;
  r.detail = r.label + ": " + std::string(to_string(r.stream.back().answer)) + " from stage " +
             (settled > horizon ? std::string("-") : std::to_string(settled)) + " through " +
             std::to_string(horizon) + ", expected " + want + " from " + std::to_string(stage);
  return r;
}

}  // namespace golden
