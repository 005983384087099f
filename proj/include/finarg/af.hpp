#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace finarg {

/// Dense argument index. Names only exist in the file-format layer.
using ArgumentId = std::uint32_t;

/// A set of arguments, kept sorted and free of duplicates.
using Extension = std::vector<ArgumentId>;

struct Attack {
  ArgumentId attacker;
  ArgumentId target;
  friend auto operator<=>(const Attack&, const Attack&) = default;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Semantics {
  conflict_free,
  naive,
  admissible,
  complete,
  stable,
  inf_conflict_free,
  inf_naive,
  inf_admissible,
  inf_complete,
  inf_stable,
};

std::string_view to_string(Semantics s);
std::optional<Semantics> parse_semantics(std::string_view tag);

/// True for the inf-* tags.
bool is_infinite(Semantics s);

/// The finite counterpart of an inf-* tag (inf_admissible -> admissible); identity otherwise.
Semantics base_semantics(Semantics s);

/// Sort and deduplicate.
Extension normalize(Extension members);

/// A finite argumentation framework with arguments 0..size()-1.
///
/// Self-attacks are kept as given. Duplicate attack pairs collapse into one.
class FiniteAF {
 public:
  FiniteAF() = default;
  FiniteAF(std::size_t n_args, std::vector<Attack> attacks);

  std::size_t size() const { return n_args_; }
  /// Sorted by (target, attacker).
  const std::vector<Attack>& attacks() const { return attacks_; }
  /// Sorted ascending.
  const std::vector<ArgumentId>& attackers_of(ArgumentId target) const;
  const std::vector<ArgumentId>& targets_of(ArgumentId attacker) const;
  bool attacks(ArgumentId attacker, ArgumentId target) const;
  bool self_attacking(ArgumentId a) const { return attacks(a, a); }

  /// Bitmask views, available when size() <= 64.
  std::uint64_t attackers_mask(ArgumentId target) const;
  std::uint64_t targets_mask(ArgumentId attacker) const;

  friend bool operator==(const FiniteAF& a, const FiniteAF& b) {
    return a.n_args_ == b.n_args_ && a.attacks_ == b.attacks_;
  }

 private:
  std::size_t n_args_ = 0;
  std::vector<Attack> attacks_;
  std::vector<std::vector<ArgumentId>> attackers_;
  std::vector<std::vector<ArgumentId>> targets_;
  std::vector<std::uint64_t> attackers_mask_;
  std::vector<std::uint64_t> targets_mask_;
};

/// Throws InputError if some member is out of range.
void check_extension(const FiniteAF& af, const Extension& s);

/// S^- : arguments attacking some member of S.
Extension attackers(const FiniteAF& af, const Extension& s);
/// S^+ : arguments attacked by some member of S.
Extension attacked_by(const FiniteAF& af, const Extension& s);
/// f_F(S): arguments all of whose attackers are attacked by S.
Extension characteristic(const FiniteAF& af, const Extension& s);

bool is_conflict_free(const FiniteAF& af, const Extension& s);

/// Membership test for the finite semantics. inf-* tags are always false on a
/// finite framework, since no extension there is infinite.
bool is_extension(const FiniteAF& af, const Extension& s, Semantics sigma);

}  // namespace finarg
