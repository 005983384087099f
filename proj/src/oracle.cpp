#include "finarg/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>

namespace finarg {

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::cred: return "cred";
    case Problem::skep: return "skep";
    case Problem::exists: return "exists";
    case Problem::ne: return "ne";
    case Problem::uni: return "uni";
  }
  return "?";
}

std::optional<Problem> parse_problem(std::string_view tag) {
  for (Problem p : {Problem::cred, Problem::skep, Problem::exists, Problem::ne, Problem::uni})
    if (to_string(p) == tag) return p;
  return std::nullopt;
}

void DecisionProblem::validate() const {
  const bool needs_arg = kind == Problem::cred || kind == Problem::skep;
  if (needs_arg && !argument)
    throw InputError(std::string(to_string(kind)) + " needs an argument");
  if (!needs_arg && argument)
    throw InputError(std::string(to_string(kind)) + " takes no argument");
}

std::uint64_t to_mask(const Extension& s) {
  std::uint64_t m = 0;
  for (ArgumentId a : s) m |= std::uint64_t{1} << a;
  return m;
}

Extension from_mask(std::uint64_t mask) {
  Extension out;
  while (mask) {
    out.push_back(static_cast<ArgumentId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

namespace {

void check_cap(const FiniteAF& af, const OracleOptions& opts) {
  const std::size_t cap = std::min(opts.max_args, kHardArgumentLimit);
  if (af.size() > cap)
    throw ResourceError("powerset scan over " + std::to_string(af.size()) +
                        " arguments exceeds the cap of " + std::to_string(cap));
}

// Tables indexed by argument, copied out of the framework so the kernel is
// branch-light.
struct MaskTables {
  std::size_t n;
  std::uint64_t all;
  std::vector<std::uint64_t> attackers;
  std::vector<std::uint64_t> targets;
  std::uint64_t self_attackers = 0;

  explicit MaskTables(const FiniteAF& af)
      : n(af.size()),
        all(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1),
        attackers(n),
        targets(n) {
    for (ArgumentId a = 0; a < n; ++a) {
      attackers[a] = af.attackers_mask(a);
      targets[a] = af.targets_mask(a);
      if (af.self_attacking(a)) self_attackers |= std::uint64_t{1} << a;
    }
  }

  std::uint64_t plus(std::uint64_t s) const {
    std::uint64_t p = 0;
    for (std::uint64_t m = s; m; m &= m - 1) p |= targets[std::countr_zero(m)];
    return p;
  }

  std::uint64_t defended(std::uint64_t plus_set) const {
    std::uint64_t f = 0;
    for (std::size_t x = 0; x < n; ++x)
      if ((attackers[x] & ~plus_set) == 0) f |= std::uint64_t{1} << x;
    return f;
  }

  bool accepts(std::uint64_t s, Semantics sigma) const {
    const std::uint64_t p = plus(s);
    if (p & s) return false;
    switch (sigma) {
      case Semantics::conflict_free:
        return true;
      case Semantics::naive:
        for (std::uint64_t rest = all & ~s; rest; rest &= rest - 1) {
          const int x = std::countr_zero(rest);
          const std::uint64_t bit = std::uint64_t{1} << x;
          if ((self_attackers & bit) == 0 && (targets[x] & s) == 0 && (attackers[x] & s) == 0)
            return false;
        }
        return true;
      case Semantics::admissible:
        for (std::uint64_t m = s; m; m &= m - 1)
          if (attackers[std::countr_zero(m)] & ~p) return false;
        return true;
      case Semantics::complete:
        return defended(p) == s;
      case Semantics::stable:
        return (s | p) == all;
      default:
        return false;
    }
  }
};

}  // namespace

std::vector<Extension> enumerate(const FiniteAF& af, Semantics sigma, OracleOptions opts) {
  check_cap(af, opts);
  if (is_infinite(sigma)) return {};
  const MaskTables tables(af);
  const std::uint64_t total = std::uint64_t{1} << af.size();

  // Fixed chunking keeps the merged order independent of the thread count.
  constexpr std::uint64_t kChunk = 1 << 12;
  const std::uint64_t n_chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> found(n_chunks);

#pragma omp parallel for schedule(dynamic, 1) if (n_chunks > 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t hi = std::min(total, lo + kChunk);
    for (std::uint64_t s = lo; s < hi; ++s)
      if (tables.accepts(s, sigma)) found[c].push_back(s);
  }

  std::vector<Extension> out;
  for (const auto& chunk : found)
    for (std::uint64_t s : chunk) out.push_back(from_mask(s));
  return out;
}

std::vector<Extension> enumerate_serial(const FiniteAF& af, Semantics sigma,
                                        OracleOptions opts) {
  check_cap(af, opts);
  if (is_infinite(sigma)) return {};
  std::vector<Extension> out;
  const std::uint64_t total = std::uint64_t{1} << af.size();
  for (std::uint64_t s = 0; s < total; ++s) {
    Extension e = from_mask(s);
    if (is_extension(af, e, sigma)) out.push_back(std::move(e));
  }
  return out;
}

Extension grounded(const FiniteAF& af) {
  Extension current;
  for (;;) {
    Extension next = characteristic(af, current);
    if (next == current) return current;
    current = std::move(next);
  }
}

bool decide_finite(const FiniteAF& af, const DecisionProblem& p, Semantics sigma,
                   OracleOptions opts) {
  p.validate();
  if (p.argument && *p.argument >= af.size())
    throw InputError("argument " + std::to_string(*p.argument) + " out of range");
  const std::vector<Extension> exts = enumerate(af, sigma, opts);
  auto contains = [](const Extension& e, ArgumentId a) {
    return std::binary_search(e.begin(), e.end(), a);
  };
  switch (p.kind) {
    case Problem::cred:
      return std::any_of(exts.begin(), exts.end(),
                         [&](const Extension& e) { return contains(e, *p.argument); });
    case Problem::skep:
      return std::all_of(exts.begin(), exts.end(),
                         [&](const Extension& e) { return contains(e, *p.argument); });
    case Problem::exists:
      return !exts.empty();
    case Problem::ne:
      return std::any_of(exts.begin(), exts.end(), [](const Extension& e) { return !e.empty(); });
    case Problem::uni:
      return exts.size() == 1;
  }
  return false;
}

}  // namespace finarg
