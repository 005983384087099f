#pragma once

// afsolve front end. run_cli is the whole program minus process plumbing so
// tests can drive it in-process.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "finarg/apx.hpp"
#include "finarg/decide.hpp"
#include "finarg/finitary.hpp"

namespace finarg {

enum ExitCode : int { kExitAnswered = 0, kExitInputError = 1, kExitUnknown = 2 };

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct GadgetInstance {
  std::string id;
  FinitaryAF af;
  std::function<std::string(ArgumentId)> construction_name;
};

/// Gadget ids: fig1, stars, fig2, chain_w, unistb, tree_cf, union, random.
/// Unknown ids or malformed parameters throw InputError.
GadgetInstance make_gadget(const std::string& id, const std::map<std::string, std::string>& params,
                           std::optional<std::uint64_t> seed = std::nullopt);

/// Truncation of a gadget as an APX document with a name-mapping comment block.
std::string gadget_apx(const GadgetInstance& g, std::size_t n);

/// The JSON report of `solve`: {semantics, problem, argument, answer, extensions}.
/// answer is a boolean, or the string "unknown"; extensions is null when the
/// framework is too large to enumerate.
nlohmann::json solve_report(const ApxDocument& doc, Semantics sigma, const DecisionProblem& p,
                            AnytimeOptions opts = {});

nlohmann::json verdict_json(const Verdict& v);

}  // namespace finarg
