#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finarg {

/// A decidable set of naturals standing in for the expansionary stages of a
/// c.e. set in the gadget constructions.
///
/// When finite_bound() is set to B, contains(n) is false for every n > B.
class StageSet {
 public:
  StageSet();  // empty set
  StageSet(std::function<bool(std::size_t)> contains, std::optional<std::size_t> finite_bound,
           std::string description);

  static StageSet empty();
  static StageSet all();
  static StageSet explicit_set(std::vector<std::size_t> members);
  /// {start, start+step, ...}; `count` terms when given, otherwise infinite.
  static StageSet progression(std::size_t start, std::size_t step,
                              std::optional<std::size_t> count = std::nullopt);
  /// {0, ..., k-1}
  static StageSet below(std::size_t k);

  /// Literal syntax used by the CLI:
  ///   "none" | "all" | "1,2,5" | "lt:K" | "ap:START:STEP[:COUNT]"
  static StageSet parse(std::string_view literal);

  bool contains(std::size_t n) const { return contains_(n); }
  std::optional<std::size_t> finite_bound() const { return bound_; }
  const std::string& description() const { return description_; }

  /// Members <= limit, ascending.
  std::vector<std::size_t> members_upto(std::size_t limit) const;

 private:
  std::function<bool(std::size_t)> contains_;
  std::optional<std::size_t> bound_;
  std::string description_;
};

/// Stagewise enumeration of a c.e. set W: entry_stage(n) is the stage (>= 1)
/// at which n enters W, or nullopt if it never does.
class EnumerationSchedule {
 public:
  EnumerationSchedule();  // W empty
  explicit EnumerationSchedule(std::function<std::optional<std::size_t>(std::size_t)> entry,
                               std::string description);

  /// Explicit (n, stage) pairs; stages must be >= 1.
  static EnumerationSchedule explicit_entries(std::vector<std::pair<std::size_t, std::size_t>> e);
  /// "none" | "n:stage,n:stage,..."
  static EnumerationSchedule parse(std::string_view literal);

  std::optional<std::size_t> entry_stage(std::size_t n) const { return entry_(n); }
  /// n in W[j]
  bool enumerated_by(std::size_t n, std::size_t stage) const;
  const std::string& description() const { return description_; }

 private:
  std::function<std::optional<std::size_t>(std::size_t)> entry_;
  std::string description_;
};

}  // namespace finarg
