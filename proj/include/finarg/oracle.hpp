#pragma once

// Brute-force reference semantics for finite frameworks.
//
// enumerate() scans the powerset with a bitmask kernel split across OpenMP
// threads; enumerate_serial() walks the same powerset through the set-based
// predicates in af.hpp and is kept as the reference the kernel is tested
// against. Both return extensions in ascending bitmask order.

#include <optional>
#include <string_view>
#include <vector>

#include "finarg/af.hpp"

namespace finarg {

enum class Problem { cred, skep, exists, ne, uni };

std::string_view to_string(Problem p);
std::optional<Problem> parse_problem(std::string_view tag);

struct DecisionProblem {
  Problem kind = Problem::exists;
  std::optional<ArgumentId> argument;

  static DecisionProblem cred(ArgumentId a) { return {Problem::cred, a}; }
  static DecisionProblem skep(ArgumentId a) { return {Problem::skep, a}; }
  static DecisionProblem exists() { return {Problem::exists, std::nullopt}; }
  static DecisionProblem ne() { return {Problem::ne, std::nullopt}; }
  static DecisionProblem uni() { return {Problem::uni, std::nullopt}; }

  /// Throws InputError when cred/skep lack an argument or the others carry one.
  void validate() const;
};

struct OracleOptions {
  std::size_t max_args = 24;
};

inline constexpr std::size_t kHardArgumentLimit = 62;

/// sigma(af) in ascending bitmask order. inf-* tags yield an empty list.
std::vector<Extension> enumerate(const FiniteAF& af, Semantics sigma, OracleOptions opts = {});
std::vector<Extension> enumerate_serial(const FiniteAF& af, Semantics sigma,
                                        OracleOptions opts = {});

/// Least fixed point of the characteristic function, iterated from the empty set.
Extension grounded(const FiniteAF& af);

bool decide_finite(const FiniteAF& af, const DecisionProblem& p, Semantics sigma,
                   OracleOptions opts = {});

/// Bitmask helpers shared with the acceptance sweeps.
std::uint64_t to_mask(const Extension& s);
Extension from_mask(std::uint64_t mask);

}  // namespace finarg
