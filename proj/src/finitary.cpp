#include "finarg/finitary.hpp"

#include <algorithm>

namespace finarg {

FinitaryAF::FinitaryAF(AttackerFn attackers, std::string description,
                       std::optional<std::size_t> universe, NameFn names)
    : impl_(std::make_shared<const Impl>(
          Impl{std::move(attackers), std::move(names), std::move(description), universe})) {}

FinitaryAF FinitaryAF::from_finite(const FiniteAF& af, std::string description) {
  auto shared = std::make_shared<const FiniteAF>(af);
  return FinitaryAF([shared](ArgumentId m) { return shared->attackers_of(m); },
                    std::move(description), af.size());
}

std::vector<ArgumentId> FinitaryAF::attackers_of(ArgumentId m) const {
  if (!exists(m)) return {};
  std::vector<ArgumentId> out = impl_->attackers(m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (impl_->universe && !out.empty() && out.back() >= *impl_->universe)
    throw InputError("oracle '" + impl_->description + "' names argument " +
                     std::to_string(out.back()) + " outside its universe");
  return out;
}

bool FinitaryAF::attacks(ArgumentId attacker, ArgumentId target) const {
  const auto att = attackers_of(target);
  return std::binary_search(att.begin(), att.end(), attacker);
}

std::string FinitaryAF::name(ArgumentId m) const {
  if (impl_->names) return impl_->names(m);
  return "a" + std::to_string(m);
}

FiniteAF truncate(const FinitaryAF& faf, std::size_t n) {
  if (faf.universe()) n = std::min(n, *faf.universe());
  std::vector<Attack> attacks;
  for (ArgumentId j = 0; j < n; ++j)
    for (ArgumentId i : faf.attackers_of(j))
      if (i < n) attacks.push_back({i, j});
  return FiniteAF(n, std::move(attacks));
}

FinitaryAF disjoint_union(const FinitaryAF& x, const FinitaryAF& y) {
  if (x.is_finite() || y.is_finite())
    throw InputError("disjoint_union interleaves indices and needs two infinite frameworks");
  auto attackers = [x, y](ArgumentId m) {
    const FinitaryAF& side = (m % 2 == 0) ? x : y;
    const ArgumentId offset = m % 2;
    std::vector<ArgumentId> out;
    for (ArgumentId a : side.attackers_of(m / 2)) out.push_back(2 * a + offset);
    return out;
  };
  auto names = [x, y](ArgumentId m) {
    return (m % 2 == 0 ? "L." + x.name(m / 2) : "R." + y.name(m / 2));
  };
  return FinitaryAF(attackers, "union(" + x.description() + "," + y.description() + ")",
                    std::nullopt, names);
}

const std::vector<ArgumentId>& AttackCache::attackers(ArgumentId m) {
  if (m >= memo_.size()) memo_.resize(std::max<std::size_t>(m + 1, memo_.size() * 2));
  auto& slot = memo_[m];
  if (!slot) {
    ++calls_;
    slot = af_.attackers_of(m);
  }
  return *slot;
}

bool AttackCache::attacks(ArgumentId attacker, ArgumentId target) {
  const auto& att = attackers(target);
  return std::binary_search(att.begin(), att.end(), attacker);
}

}  // namespace finarg
