#pragma once

// The gadget families as executable finitary frameworks.
//
// Every gadget compacts its (possibly sparse) universe into dense indices via
// a fixed layout, and exposes that layout so tests and the CLI can translate
// between the construction's names and indices.
//
// Layouts:
//   fig1     blocks k = (a_2k, a_2k+1, [b_k if stages.contains(k)])
//   stars    cells (t, p), t = star, p = 0 centre / p > 0 leaf, enumerated
//            along diagonals t+p with t ascending; star t exists iff t == 0
//            or count.contains(t-1)
//   fig2     cells (0, p) = a_p and (i, m) = d^i_j for i >= 1 where
//            card(i).contains(m) and j = #{m' < m in card(i)}; diagonal order
//   chain_w  cells (n, m) = a_{n,m}; diagonal order
//   unistb   a_i = 2i, b_i = 2i+1
//   tree_cf  a_i = i-th node of the tree in breadth-first, left-to-right order

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finarg/finitary.hpp"
#include "finarg/stage_set.hpp"

namespace finarg {

/// A node of a tree over naturals; the empty string is the root.
using CodeString = std::vector<std::uint32_t>;

std::string to_string(const CodeString& s);

class Fig1Gadget {
 public:
  explicit Fig1Gadget(StageSet stages);

  ArgumentId a(std::size_t k) const;
  std::optional<ArgumentId> b(std::size_t k) const;
  /// ('a', k) or ('b', k).
  std::pair<char, std::size_t> role(ArgumentId m) const;
  std::string construction_name(ArgumentId m) const;
  const FinitaryAF& af() const { return af_; }

 private:
  std::size_t block_start(std::size_t k) const;
  StageSet stages_;
  FinitaryAF af_;
};

class StarsGadget {
 public:
  explicit StarsGadget(StageSet count);
  /// Exactly k stars (k >= 1).
  static StarsGadget with_stars(std::size_t k);

  bool star_exists(std::size_t t) const;
  ArgumentId center(std::size_t t) const;
  ArgumentId leaf(std::size_t t, std::size_t p) const;  // p >= 1
  /// (star, position); position 0 is the centre.
  std::pair<std::size_t, std::size_t> cell(ArgumentId m) const;
  bool is_center(ArgumentId m) const { return cell(m).second == 0; }
  std::string construction_name(ArgumentId m) const;
  const FinitaryAF& af() const { return af_; }

 private:
  struct Layout;
  std::shared_ptr<const Layout> layout_;
  FinitaryAF af_;
};

class Fig2Gadget {
 public:
  using CardFn = std::function<StageSet(std::size_t)>;
  /// card(i) for i >= 1 must contain 0; checked lazily, InputError on violation.
  explicit Fig2Gadget(CardFn card);

  ArgumentId a(std::size_t p) const;
  /// d^i_j; nullopt when card(i) has at most j elements below `search_limit`.
  std::optional<ArgumentId> d(std::size_t i, std::size_t j, std::size_t search_limit = 4096) const;
  struct Role {
    bool is_a;
    std::size_t i;  // column (0 for a)
    std::size_t j;  // p for a, rank for d
  };
  Role role(ArgumentId m) const;
  std::string construction_name(ArgumentId m) const;
  const FinitaryAF& af() const { return af_; }

 private:
  struct Layout;
  std::shared_ptr<const Layout> layout_;
  FinitaryAF af_;
};

class ChainGadget {
 public:
  explicit ChainGadget(EnumerationSchedule w);

  /// a_{n,m} if it exists.
  std::optional<ArgumentId> arg(std::size_t n, std::size_t m) const;
  std::pair<std::size_t, std::size_t> cell(ArgumentId x) const;
  std::string construction_name(ArgumentId m) const;
  const FinitaryAF& af() const { return af_; }

 private:
  struct Layout;
  std::shared_ptr<const Layout> layout_;
  FinitaryAF af_;
};

class UniStbGadget {
 public:
  using ExpFn = std::function<StageSet(std::size_t)>;
  explicit UniStbGadget(ExpFn exp);

  static ArgumentId a(std::size_t i) { return static_cast<ArgumentId>(2 * i); }
  static ArgumentId b(std::size_t i) { return static_cast<ArgumentId>(2 * i + 1); }
  std::string construction_name(ArgumentId m) const;
  const FinitaryAF& af() const { return af_; }

 private:
  FinitaryAF af_;
};

class TreeCfGadget {
 public:
  using Membership = std::function<bool(const CodeString&)>;
  /// Children of a node carry labels below `branching`.
  TreeCfGadget(Membership tree, std::uint32_t branching);

  /// The i-th node in breadth-first, left-to-right order.
  CodeString node(ArgumentId i) const;
  std::string construction_name(ArgumentId m) const;
  const FinitaryAF& af() const { return af_; }

 private:
  struct Walk;
  std::shared_ptr<const Walk> walk_;
  FinitaryAF af_;
};

/// true iff one string is a prefix of the other.
bool comparable(const CodeString& x, const CodeString& y);

}  // namespace finarg
