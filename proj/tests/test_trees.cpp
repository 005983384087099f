#include <doctest.h>

#include <algorithm>
#include <random>

#include "finarg/oracle.hpp"
#include "finarg/trees.hpp"
#include "support/reference.hpp"

using namespace finarg;

namespace {

const FiniteAF F1(3, {{0, 1}, {1, 2}});
const FiniteAF F2(1, {{0, 0}});
const FiniteAF F3(2, {{0, 1}, {1, 0}});

Semantics sem_of(TreeKind k) {
  switch (k) {
    case TreeKind::ad: return Semantics::admissible;
    case TreeKind::co: return Semantics::complete;
    default: return Semantics::stable;
  }
}

std::vector<CodeString> bfs_frontier(const TreeSpec& spec, std::size_t d) {
  std::vector<CodeString> layer{CodeString{}};
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<CodeString> next;
    for (const auto& s : layer)
      for (auto& c : children(spec, s)) next.push_back(std::move(c));
    layer = std::move(next);
  }
  return layer;
}

std::vector<CodeString> engine_frontier(const TreeSpec& spec, std::size_t d, bool propagate) {
  AttackCache cache(spec.af);
  TreeSearch search(spec, cache, d, SearchOptions{1'000'000, propagate});
  std::vector<CodeString> out;
  CHECK(search.run([&](const CodeString& c, const std::vector<ArgumentId>&) {
    out.push_back(c);
    return true;
  }) == SearchStatus::complete);
  CHECK(search.stats().frontier == out.size());
  return out;
}

// Sets containing D and avoiding E, from the test-side brute force.
std::vector<Extension> expected(const FiniteAF& af, TreeKind k, std::uint64_t D, std::uint64_t E) {
  const ref::Graph g(af);
  std::vector<Extension> out;
  for (auto S : g.all(sem_of(k)))
    if ((S & D) == D && (S & E) == 0) out.push_back(ref::members(S));
  return out;
}

}  // namespace

TEST_CASE("tree kind tags") {
  CHECK(parse_tree_kind("ad") == TreeKind::ad);
  CHECK(parse_tree_kind("inf-na") == TreeKind::inf_na);
  CHECK(parse_tree_kind("na") == TreeKind::inf_na);
  CHECK_FALSE(parse_tree_kind("pr").has_value());
  CHECK(to_string(TreeKind::co) == "co");
}

TEST_CASE("small tree examples") {
  const TreeSpec s3 = TreeSpec::make(F3, TreeKind::stb);
  CHECK(children(s3, {}) == std::vector<CodeString>{{0}, {2}});
  CHECK(ins_out_sets(s3, {2}).in == Extension{1});
  CHECK(ins_out_sets(s3, {2}).out == Extension{0});
  CHECK(children(TreeSpec::make(F2, TreeKind::stb), {}).empty());
  CHECK_FALSE(alive_at_depth(TreeSpec::make(F2, TreeKind::stb), 1));
  CHECK(alive_at_depth(TreeSpec::make(F2, TreeKind::ad), forced_depth(F2, TreeKind::ad)));
  CHECK(is_node(s3, {0, 1}));
  CHECK_FALSE(is_node(s3, {0, 0}));
  CHECK(forced_depth(F1, TreeKind::ad) == 10);
  CHECK(forced_depth(F1, TreeKind::stb) == 3);
  CHECK(extensions_via_tree(F1, TreeKind::stb) == std::vector<Extension>{{0, 2}});
  CHECK(extensions_via_tree(F3, TreeKind::co) == std::vector<Extension>{{}, {0}, {1}});
  CHECK(extensions_via_tree(F1, TreeKind::ad, {2}) == std::vector<Extension>{{0, 2}});
  CHECK(extensions_via_tree(F3, TreeKind::co, {}, {0}) == std::vector<Extension>{{}, {1}});
}

TEST_CASE("tree spec validation") {
  CHECK_THROWS_AS(TreeSpec::make(F1, TreeKind::ad, {0}, {0}), InputError);
  CHECK_THROWS_AS(TreeSpec::make(F1, TreeKind::ad, {7}), InputError);
  const FinitaryAF succ([](ArgumentId m) { return std::vector<ArgumentId>{m + 1}; }, "succ");
  CHECK_THROWS_AS(TreeSpec::make(succ, TreeKind::inf_na, {0}), InputError);
  CHECK_THROWS_AS(children(TreeSpec::make(succ, TreeKind::inf_na), {}), InputError);
  CHECK_THROWS_AS(forced_depth(F1, TreeKind::inf_na), InputError);
  CHECK(bitmask_less({0, 1}, {2}));
  CHECK(bitmask_less({}, {0}));
  CHECK_FALSE(bitmask_less({2}, {0, 1}));
}

TEST_CASE("inf-na tree with a cap") {
  // m attacked by m+1: the naive sets are the maximal independent sets.
  const FinitaryAF succ([](ArgumentId m) { return std::vector<ArgumentId>{m + 1}; }, "succ");
  const TreeSpec spec = TreeSpec::make(succ, TreeKind::inf_na, {}, {}, std::nullopt, 6);
  auto d4 = bfs_frontier(spec, 4);
  CHECK_FALSE(d4.empty());
  for (const auto& c : d4) {
    const Extension in = ins_out_sets(spec, c).in;
    for (std::size_t i = 1; i < in.size(); ++i) CHECK(in[i] > in[i - 1] + 1);
  }
  std::sort(d4.begin(), d4.end());
  auto eng = engine_frontier(spec, 4, true);
  std::sort(eng.begin(), eng.end());
  CHECK(eng == d4);
}

TEST_CASE("tree frontier equals the oracle on random frameworks") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 120; ++iter) {
    const FiniteAF af = ref::random_af(rng, 4, 35);
    const std::size_t n = af.size();
    const std::uint64_t D = n ? rng() % (1u << n) : 0;
    const std::uint64_t E = n ? (rng() % (1u << n)) & ~D : 0;
    for (TreeKind k : {TreeKind::ad, TreeKind::stb, TreeKind::co}) {
      CAPTURE(iter);
      CAPTURE(to_string(k));
      CHECK(extensions_via_tree(af, k) == expected(af, k, 0, 0));
      CHECK(extensions_via_tree(af, k, from_mask(D), from_mask(E)) == expected(af, k, D, E));
    }
  }
}

TEST_CASE("search engine matches the reference frontier") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 60; ++iter) {
    const FiniteAF af = ref::random_af(rng, 4, 35);
    for (TreeKind k : {TreeKind::ad, TreeKind::stb, TreeKind::co}) {
      const TreeSpec spec = TreeSpec::make(af, k);
      const std::size_t top = std::min<std::size_t>(forced_depth(af, k), 7);
      for (std::size_t d = 0; d <= top; ++d) {
        auto bfs = bfs_frontier(spec, d);
        std::sort(bfs.begin(), bfs.end());
        for (bool prop : {false, true}) {
          auto eng = engine_frontier(spec, d, prop);
          std::sort(eng.begin(), eng.end());
          CHECK(eng == bfs);
        }
      }
    }
  }
}

TEST_CASE("budget exhaustion") {
  const FinitaryAF free_([](ArgumentId) { return std::vector<ArgumentId>{}; }, "free");
  const TreeSpec spec = TreeSpec::make(free_, TreeKind::ad, {}, {}, 64);
  CHECK(alive_at_depth(spec, 20));
  const FinitaryAF dense(
      [](ArgumentId m) {
        std::vector<ArgumentId> v;
        for (ArgumentId i = 0; i < 40; ++i)
          if (i != m) v.push_back(i);
        return v;
      },
      "dense", 40);
  CHECK_THROWS_AS(alive_at_depth(TreeSpec::make(dense, TreeKind::co), 60, SearchOptions{5, false}), ResourceError);
}
