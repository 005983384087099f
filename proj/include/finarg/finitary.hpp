#pragma once

// Infinite finitary frameworks presented by an attacker oracle.
//
// Argument m is identified with index m. attackers_of(m) must terminate and
// return the complete (finite) attacker set of m. A FinitaryAF may also carry
// a finite universe size, in which case only indices below it exist; this is
// how finite frameworks are run through the anytime machinery.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finarg/af.hpp"

namespace finarg {

class FinitaryAF {
 public:
  using AttackerFn = std::function<std::vector<ArgumentId>(ArgumentId)>;
  using NameFn = std::function<std::string(ArgumentId)>;

  FinitaryAF(AttackerFn attackers, std::string description,
             std::optional<std::size_t> universe = std::nullopt, NameFn names = {});

  /// A finite framework seen as a bounded-universe finitary one.
  static FinitaryAF from_finite(const FiniteAF& af, std::string description = "finite");

  /// Sorted, duplicate-free. Empty for indices outside a finite universe.
  /// Throws InputError if the oracle names a nonexistent argument.
  std::vector<ArgumentId> attackers_of(ArgumentId m) const;
  bool attacks(ArgumentId attacker, ArgumentId target) const;

  std::optional<std::size_t> universe() const { return impl_->universe; }
  bool is_finite() const { return impl_->universe.has_value(); }
  bool exists(ArgumentId m) const { return !impl_->universe || m < *impl_->universe; }

  /// Display name of argument m ("a<m>" unless the constructor supplied names).
  std::string name(ArgumentId m) const;
  const std::string& description() const { return impl_->description; }

 private:
  struct Impl {
    AttackerFn attackers;
    NameFn names;
    std::string description;
    std::optional<std::size_t> universe;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Induced sub-framework on indices < n (clipped to a finite universe).
FiniteAF truncate(const FinitaryAF& faf, std::size_t n);

/// Even indices host x, odd indices host y. Both sides must be infinite.
FinitaryAF disjoint_union(const FinitaryAF& x, const FinitaryAF& y);

/// Memoizes attacker sets of one framework. Not thread-safe; each search or
/// anytime process owns its own.
class AttackCache {
 public:
  explicit AttackCache(FinitaryAF af) : af_(std::move(af)) {}

  const std::vector<ArgumentId>& attackers(ArgumentId m);
  bool attacks(ArgumentId attacker, ArgumentId target);
  bool self_attacking(ArgumentId m) { return attacks(m, m); }
  bool conflict(ArgumentId x, ArgumentId y) { return attacks(x, y) || attacks(y, x); }

  const FinitaryAF& af() const { return af_; }
  std::size_t oracle_calls() const { return calls_; }

 private:
  FinitaryAF af_;
  std::vector<std::optional<std::vector<ArgumentId>>> memo_;
  std::size_t calls_ = 0;
};

}  // namespace finarg
