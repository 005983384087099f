#pragma once

// Anytime deciders for finitary frameworks.
//
// A process is advanced one stage at a time. Stage s looks at arguments below
// a stage-dependent bound, tree depth s and pair horizon s, and reports a
// verdict whose limit behaviour follows the process's convergence class.
// Candidate arguments at stage s are 0..floor(s/4) for infinite universes and
// the whole universe for finite ones. On a finite universe every process is
// exact from the forced tree depth onwards.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finarg/af.hpp"
#include "finarg/finitary.hpp"
#include "finarg/oracle.hpp"
#include "finarg/trees.hpp"

namespace finarg {

enum class ConvergenceClass { computable, sigma1, pi1, sigma2, pi2, d_sigma2, u_sigma2, pi3, none };
enum class Answer { accept, reject, unknown };

std::string_view to_string(ConvergenceClass c);
std::string_view to_string(Answer a);

struct Verdict {
  Answer answer = Answer::unknown;
  std::size_t stage = 0;
  ConvergenceClass cls = ConvergenceClass::none;
  std::string evidence;
};

/// Reads AFSOLVE_BUDGET, falling back to 10^6.
std::size_t default_node_budget();

struct AnytimeOptions {
  std::size_t node_budget = default_node_budget();  // per tree search
  std::size_t subset_budget = 100'000;              // finite-witness checks per stage
};

class AnytimeProcess {
 public:
  /// Computes the answer at one stage. Stages are requested in order 0,1,2,...
  using Step = std::function<std::pair<Answer, std::string>(std::size_t stage)>;

  AnytimeProcess(DecisionProblem problem, Semantics sigma, FinitaryAF af, ConvergenceClass cls, Step step);

  /// Verdict for the next stage. ResourceError inside a stage becomes unknown.
  Verdict advance();
  /// Advances through `last_stage` inclusive; returns the new verdicts.
  std::vector<Verdict> run(std::size_t last_stage);

  std::size_t next_stage() const { return next_; }
  std::optional<Verdict> last() const { return last_; }
  ConvergenceClass cls() const { return cls_; }
  const DecisionProblem& problem() const { return problem_; }
  Semantics semantics() const { return sigma_; }
  const FinitaryAF& af() const { return af_; }

 private:
  DecisionProblem problem_;
  Semantics sigma_;
  FinitaryAF af_;
  ConvergenceClass cls_;
  Step step_;
  std::size_t next_ = 0;
  std::optional<Verdict> last_;
};

/// Dispatches on semantics and problem. Throws InputError for combinations
/// without an approximation scheme (skep/uni under inf-co) and for arguments
/// outside a finite universe.
AnytimeProcess make_process(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma,
                            AnytimeOptions opts = {});

bool cred_cf_fast(const FinitaryAF& faf, ArgumentId a);
AnytimeProcess skep_na_anytime(const FinitaryAF& faf, ArgumentId a);
AnytimeProcess uni_na_anytime(const FinitaryAF& faf);
/// sigma in {ad, co, stb}.
AnytimeProcess tree_anytime(const FinitaryAF& faf, Semantics sigma, const DecisionProblem& p,
                            AnytimeOptions opts = {});
/// p in {exists, ne, cred, skep}.
AnytimeProcess infad_anytime(const FinitaryAF& faf, const DecisionProblem& p, AnytimeOptions opts = {});
AnytimeProcess infstb_anytime(const FinitaryAF& faf, const DecisionProblem& p, AnytimeOptions opts = {});
/// p in {exists, ne, cred}.
AnytimeProcess infco_anytime(const FinitaryAF& faf, const DecisionProblem& p, AnytimeOptions opts = {});
/// sigma in {inf-ad, inf-stb}.
AnytimeProcess uni_inf_anytime(const FinitaryAF& faf, Semantics sigma, AnytimeOptions opts = {});
/// inf-cf / inf-na at the given stage.
Verdict infcf_trivia(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma, std::size_t stage);

/// Candidates b whose tree T_{sigma + D u {b} - E} is alive at depth `stage`.
/// sigma in {ad, stb}.
std::vector<ArgumentId> y_set_probe(const FinitaryAF& faf, Semantics sigma, const Extension& D,
                                    const Extension& E, std::size_t stage, AnytimeOptions opts = {});

/// Highest candidate index (exclusive) considered at a stage.
std::size_t candidate_bound(const FinitaryAF& faf, std::size_t stage);

/// First stage from which a finite universe's answers are exact; nullopt for
/// infinite universes.
std::optional<std::size_t> exact_stage(const FinitaryAF& faf, Semantics sigma);

/// sigma1 streams never go accept -> reject, pi1 streams never reject -> accept.
/// Unknown verdicts are skipped. Other classes always pass.
bool obeys_class_law(const std::vector<Verdict>& stream, ConvergenceClass cls);

}  // namespace finarg
