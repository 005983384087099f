#include "finarg/af.hpp"

#include <algorithm>
#include <array>

namespace finarg {

namespace {

constexpr std::array<std::pair<Semantics, std::string_view>, 10> kSemanticsNames{{
    {Semantics::conflict_free, "cf"},
    {Semantics::naive, "na"},
    {Semantics::admissible, "ad"},
    {Semantics::complete, "co"},
    {Semantics::stable, "stb"},
    {Semantics::inf_conflict_free, "inf-cf"},
    {Semantics::inf_naive, "inf-na"},
    {Semantics::inf_admissible, "inf-ad"},
    {Semantics::inf_complete, "inf-co"},
    {Semantics::inf_stable, "inf-stb"},
}};

const std::vector<ArgumentId> kNoArguments;

}  // namespace

std::string_view to_string(Semantics s) {
  for (const auto& [tag, name] : kSemanticsNames)
    if (tag == s) return name;
  return "?";
}

std::optional<Semantics> parse_semantics(std::string_view tag) {
  for (const auto& [s, name] : kSemanticsNames)
    if (name == tag) return s;
  return std::nullopt;
}

bool is_infinite(Semantics s) {
  switch (s) {
    case Semantics::inf_conflict_free:
    case Semantics::inf_naive:
    case Semantics::inf_admissible:
    case Semantics::inf_complete:
    case Semantics::inf_stable:
      return true;
    default:
      return false;
  }
}

Semantics base_semantics(Semantics s) {
  switch (s) {
    case Semantics::inf_conflict_free: return Semantics::conflict_free;
    case Semantics::inf_naive: return Semantics::naive;
    case Semantics::inf_admissible: return Semantics::admissible;
    case Semantics::inf_complete: return Semantics::complete;
    case Semantics::inf_stable: return Semantics::stable;
    default: return s;
  }
}

Extension normalize(Extension members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

FiniteAF::FiniteAF(std::size_t n_args, std::vector<Attack> attacks)
    : n_args_(n_args), attackers_(n_args), targets_(n_args) {
  for (const Attack& at : attacks) {
    if (at.attacker >= n_args || at.target >= n_args)
      throw InputError("attack (" + std::to_string(at.attacker) + "," +
                       std::to_string(at.target) + ") references an argument >= " +
                       std::to_string(n_args));
  }
  std::sort(attacks.begin(), attacks.end(), [](const Attack& x, const Attack& y) {
    return std::pair(x.target, x.attacker) < std::pair(y.target, y.attacker);
  });
  attacks.erase(std::unique(attacks.begin(), attacks.end()), attacks.end());
  attacks_ = std::move(attacks);
  for (const Attack& at : attacks_) {
    attackers_[at.target].push_back(at.attacker);
    targets_[at.attacker].push_back(at.target);
  }
  for (auto& t : targets_) std::sort(t.begin(), t.end());
  if (n_args_ <= 64) {
    attackers_mask_.assign(n_args_, 0);
    targets_mask_.assign(n_args_, 0);
    for (const Attack& at : attacks_) {
      attackers_mask_[at.target] |= std::uint64_t{1} << at.attacker;
      targets_mask_[at.attacker] |= std::uint64_t{1} << at.target;
    }
  }
}

const std::vector<ArgumentId>& FiniteAF::attackers_of(ArgumentId target) const {
  return target < n_args_ ? attackers_[target] : kNoArguments;
}

const std::vector<ArgumentId>& FiniteAF::targets_of(ArgumentId attacker) const {
  return attacker < n_args_ ? targets_[attacker] : kNoArguments;
}

bool FiniteAF::attacks(ArgumentId attacker, ArgumentId target) const {
  if (target >= n_args_) return false;
  const auto& v = attackers_[target];
  return std::binary_search(v.begin(), v.end(), attacker);
}

std::uint64_t FiniteAF::attackers_mask(ArgumentId target) const {
  if (n_args_ > 64) throw ResourceError("bitmask view needs at most 64 arguments");
  return attackers_mask_[target];
}

std::uint64_t FiniteAF::targets_mask(ArgumentId attacker) const {
  if (n_args_ > 64) throw ResourceError("bitmask view needs at most 64 arguments");
  return targets_mask_[attacker];
}

void check_extension(const FiniteAF& af, const Extension& s) {
  for (ArgumentId a : s)
    if (a >= af.size())
      throw InputError("argument " + std::to_string(a) + " out of range for a framework of " +
                       std::to_string(af.size()) + " arguments");
}

Extension attackers(const FiniteAF& af, const Extension& s) {
  check_extension(af, s);
  Extension out;
  for (ArgumentId y : s)
    out.insert(out.end(), af.attackers_of(y).begin(), af.attackers_of(y).end());
  return normalize(std::move(out));
}

Extension attacked_by(const FiniteAF& af, const Extension& s) {
  check_extension(af, s);
  Extension out;
  for (ArgumentId y : s) out.insert(out.end(), af.targets_of(y).begin(), af.targets_of(y).end());
  return normalize(std::move(out));
}

Extension characteristic(const FiniteAF& af, const Extension& s) {
  const Extension plus = attacked_by(af, s);
  Extension out;
  for (ArgumentId x = 0; x < af.size(); ++x) {
    const auto& att = af.attackers_of(x);
    if (std::includes(plus.begin(), plus.end(), att.begin(), att.end())) out.push_back(x);
  }
  return out;
}

bool is_conflict_free(const FiniteAF& af, const Extension& s) {
  check_extension(af, s);
  for (ArgumentId x : s)
    for (ArgumentId y : s)
      if (af.attacks(x, y)) return false;
  return true;
}

bool is_extension(const FiniteAF& af, const Extension& raw, Semantics sigma) {
  const Extension s = normalize(raw);
  check_extension(af, s);
  if (is_infinite(sigma)) return false;
  if (!is_conflict_free(af, s)) return false;
  switch (sigma) {
    case Semantics::conflict_free:
      return true;
    case Semantics::naive:
      for (ArgumentId x = 0; x < af.size(); ++x) {
        if (std::binary_search(s.begin(), s.end(), x)) continue;
        Extension bigger = s;
        bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), x), x);
        if (is_conflict_free(af, bigger)) return false;
      }
      return true;
    case Semantics::admissible: {
      const Extension f = characteristic(af, s);
      return std::includes(f.begin(), f.end(), s.begin(), s.end());
    }
    case Semantics::complete:
      return characteristic(af, s) == s;
    case Semantics::stable: {
      const Extension plus = attacked_by(af, s);
      for (ArgumentId x = 0; x < af.size(); ++x)
        if (!std::binary_search(s.begin(), s.end(), x) &&
            !std::binary_search(plus.begin(), plus.end(), x))
          return false;
      return true;
    }
    default:
      return false;
  }
}

}  // namespace finarg
