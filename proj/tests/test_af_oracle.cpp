#include <doctest.h>

#include <random>

#include "finarg/af.hpp"
#include "finarg/oracle.hpp"
#include "support/reference.hpp"

using namespace finarg;

namespace {
const FiniteAF F1(3, {{0, 1}, {1, 2}});
const FiniteAF F2(1, {{0, 0}});
const FiniteAF F3(2, {{0, 1}, {1, 0}});
}  // namespace

TEST_CASE("FiniteAF basics") {
  FiniteAF af(3, {{1, 2}, {0, 1}, {0, 1}, {2, 2}});
  CHECK(af.attacks().size() == 3);
  CHECK(af.attackers_of(1) == std::vector<ArgumentId>{0});
  CHECK(af.targets_of(0) == std::vector<ArgumentId>{1});
  CHECK(af.self_attacking(2));
  CHECK_FALSE(af.self_attacking(0));
  CHECK(af.attackers_mask(2) == 0b110);
  CHECK_THROWS_AS(FiniteAF(2, {{0, 2}}), InputError);
}

TEST_CASE("semantics tags") {
  for (auto s : {Semantics::conflict_free, Semantics::naive, Semantics::admissible, Semantics::complete,
                 Semantics::stable, Semantics::inf_conflict_free, Semantics::inf_naive, Semantics::inf_admissible,
                 Semantics::inf_complete, Semantics::inf_stable})
    CHECK(parse_semantics(to_string(s)) == s);
  CHECK_FALSE(parse_semantics("pr").has_value());
  CHECK(is_infinite(Semantics::inf_stable));
  CHECK(base_semantics(Semantics::inf_admissible) == Semantics::admissible);
  CHECK(normalize({3, 1, 3, 0}) == Extension{0, 1, 3});
}

TEST_CASE("set operators") {
  CHECK(attacked_by(F1, {0}) == Extension{1});
  CHECK(attackers(F1, {2}) == Extension{1});
  CHECK(characteristic(F1, {}) == Extension{0});
  CHECK(characteristic(F1, {0}) == Extension{0, 2});
  CHECK(is_conflict_free(F1, {0, 2}));
  CHECK_FALSE(is_conflict_free(F1, {0, 1}));
  CHECK_THROWS_AS(check_extension(F1, {5}), InputError);
}

TEST_CASE("oracle examples") {
  CHECK(enumerate(F1, Semantics::stable) == std::vector<Extension>{{0, 2}});
  CHECK(enumerate(F3, Semantics::complete) == std::vector<Extension>{{}, {0}, {1}});
  CHECK(enumerate(F1, Semantics::admissible) == std::vector<Extension>{{}, {0}, {0, 2}});
  CHECK_FALSE(decide_finite(F2, DecisionProblem::ne(), Semantics::conflict_free));
  CHECK_FALSE(decide_finite(F3, DecisionProblem::uni(), Semantics::stable));
  CHECK(grounded(F1) == Extension{0, 2});
  CHECK(grounded(F3).empty());
  CHECK(enumerate(F1, Semantics::inf_admissible).empty());
}

TEST_CASE("oracle caps and validation") {
  FiniteAF big(30, {});
  CHECK_THROWS_AS(enumerate(big, Semantics::admissible), ResourceError);
  CHECK_THROWS_AS(decide_finite(F1, DecisionProblem{Problem::cred, std::nullopt}, Semantics::admissible), InputError);
  CHECK_THROWS_AS(decide_finite(F1, DecisionProblem::cred(7), Semantics::admissible), InputError);
}

TEST_CASE("oracle agrees with brute force on random frameworks") {
  std::mt19937_64 rng(20261019);
  for (int it = 0; it < 300; ++it) {
    const FiniteAF af = ref::random_af(rng, 7);
    const ref::Graph g(af);
    for (auto s : {Semantics::conflict_free, Semantics::naive, Semantics::admissible, Semantics::complete,
                   Semantics::stable}) {
      std::vector<Extension> want;
      for (auto S : g.all(s)) want.push_back(ref::members(S));
      const auto got = enumerate(af, s);
      REQUIRE(got == want);
      CHECK(enumerate_serial(af, s) == got);
      for (const char* p : {"exists", "ne", "uni"}) {
        CHECK(decide_finite(af, DecisionProblem{*parse_problem(p), std::nullopt}, s) == ref::decide(g, s, p));
      }
      for (ArgumentId a = 0; a < af.size(); ++a) {
        CHECK(decide_finite(af, DecisionProblem::cred(a), s) == ref::decide(g, s, "cred", a));
        CHECK(decide_finite(af, DecisionProblem::skep(a), s) == ref::decide(g, s, "skep", a));
      }
    }
    CHECK(grounded(af) == ref::members(g.grounded()));
  }
}

TEST_CASE("characterizations from the oracle") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    const FiniteAF af = ref::random_af(rng, 6);
    Extension good;
    const Extension g = grounded(af);
    for (ArgumentId x = 0; x < af.size(); ++x) {
      CHECK(decide_finite(af, DecisionProblem::cred(x), Semantics::conflict_free) == !af.self_attacking(x));
      CHECK(decide_finite(af, DecisionProblem::skep(x), Semantics::complete) ==
            std::binary_search(g.begin(), g.end(), x));
      CHECK_FALSE(decide_finite(af, DecisionProblem::skep(x), Semantics::admissible));
      if (!af.self_attacking(x)) good.push_back(x);
    }
    CHECK(decide_finite(af, DecisionProblem::uni(), Semantics::naive) == is_conflict_free(af, good));
  }
}

TEST_CASE("mask helpers") {
  CHECK(to_mask({0, 3}) == 9);
  CHECK(from_mask(9) == Extension{0, 3});
}
