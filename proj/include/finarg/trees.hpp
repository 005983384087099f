#pragma once

// Tree encodings T_{sigma+D-E} of extensions.
//
// A node is a CodeString; its entries decide, level by level, why each
// argument is in or out (and for the complete tree, why it is or is not
// attacked by the extension). Paths through the tree correspond to
// extensions that contain D and avoid E.
//
// Attack pairs for the admissible tree are enumerated by target ascending,
// then attacker ascending, scanning only targets below `pair_horizon`.
// Levels coding nonexistent arguments or pairs admit only label 0 and
// contribute nothing.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "finarg/af.hpp"
#include "finarg/finitary.hpp"
#include "finarg/gadgets.hpp"

namespace finarg {

enum class TreeKind { ad, stb, co, inf_na };

std::string_view to_string(TreeKind k);
std::optional<TreeKind> parse_tree_kind(std::string_view tag);

inline constexpr std::size_t kDefaultPairHorizon = 1024;

struct TreeSpec {
  FinitaryAF af;
  TreeKind kind = TreeKind::ad;
  Extension D;
  Extension E;
  std::size_t pair_horizon = kDefaultPairHorizon;
  /// inf-na only: labels (argument indices) must stay below the cap.
  std::optional<std::uint32_t> label_cap;

  /// Validates D and E (disjoint, inside the universe, empty for inf-na).
  /// The horizon defaults to the universe size for finite frameworks.
  static TreeSpec make(FinitaryAF af, TreeKind kind, Extension D = {}, Extension E = {},
                       std::optional<std::size_t> pair_horizon = std::nullopt,
                       std::optional<std::uint32_t> label_cap = std::nullopt);
  static TreeSpec make(const FiniteAF& af, TreeKind kind, Extension D = {}, Extension E = {});
};

/// The pair sequence g_0, g_1, ... of the admissible tree.
class AttackPairEnum {
 public:
  AttackPairEnum(AttackCache& cache, std::size_t horizon);
  /// nullopt once the pairs with targets below the horizon are used up.
  std::optional<Attack> pair_at(std::size_t j);
  /// Number of pairs with target below the horizon (forces a full scan).
  std::size_t size();

 private:
  bool extend();
  AttackCache* cache_;
  std::size_t limit_;
  std::size_t next_target_ = 0;
  std::vector<Attack> pairs_;
};

struct InOutSets {
  Extension in;
  Extension out;
  Extension in_splus;   // complete tree only
  Extension out_splus;  // complete tree only
};

/// Reference implementations, evaluated from the definitions for each call.
InOutSets ins_out_sets(const TreeSpec& spec, const CodeString& s);
bool is_node(const TreeSpec& spec, const CodeString& s);
/// Children in ascending label order. inf-na needs a label cap.
std::vector<CodeString> children(const TreeSpec& spec, const CodeString& s);

struct SearchOptions {
  std::size_t node_budget = 1'000'000;
  /// Look-ahead over future levels; prunes only subtrees with no node at the
  /// target depth, so results are unchanged.
  bool propagate = true;
};

enum class SearchStatus { complete, stopped, budget_exhausted };

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t frontier = 0;
};

/// Depth-first enumeration of the nodes of length `depth`.
class TreeSearch {
 public:
  using Visitor = std::function<bool(const CodeString& code, const std::vector<ArgumentId>& in)>;

  TreeSearch(const TreeSpec& spec, AttackCache& cache, std::size_t depth, SearchOptions opts = {});
  ~TreeSearch();
  TreeSearch(const TreeSearch&) = delete;
  TreeSearch& operator=(const TreeSearch&) = delete;

  /// Visits every node of length `depth` in label order (the hint's labels
  /// are tried first); the visitor returns false to stop early. `in` lists
  /// the In-set in insertion order.
  SearchStatus run(const Visitor& visit, const CodeString* hint = nullptr);
  const SearchStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Some node of length d exists. Throws ResourceError when the budget runs out.
bool alive_at_depth(const TreeSpec& spec, std::size_t d, SearchOptions opts = {});

/// Depth after which every level of a finite framework's tree is forced:
/// 2(n + |R|) for ad/co, n for stb.
std::size_t forced_depth(const FiniteAF& af, TreeKind kind);

/// Decoded In-sets of the surviving frontier at the forced depth, in
/// ascending bitmask order.
std::vector<Extension> extensions_via_tree(const FiniteAF& af, TreeKind kind, const Extension& D = {},
                                           const Extension& E = {}, SearchOptions opts = {});

/// Orders sets as their bitmasks would compare.
bool bitmask_less(const Extension& a, const Extension& b);

}  // namespace finarg
