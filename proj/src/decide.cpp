#include "finarg/decide.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace finarg {

std::string_view to_string(ConvergenceClass c) {
  switch (c) {
    case ConvergenceClass::computable: return "computable";
    case ConvergenceClass::sigma1: return "sigma1";
    case ConvergenceClass::pi1: return "pi1";
    case ConvergenceClass::sigma2: return "sigma2";
    case ConvergenceClass::pi2: return "pi2";
    case ConvergenceClass::d_sigma2: return "d-sigma2";
    case ConvergenceClass::u_sigma2: return "u-sigma2";
    case ConvergenceClass::pi3: return "pi3";
    case ConvergenceClass::none: return "none";
  }
  return "?";
}

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::accept: return "accept";
    case Answer::reject: return "reject";
    case Answer::unknown: return "unknown";
  }
  return "?";
}

std::size_t default_node_budget() {
  if (const char* v = std::getenv("AFSOLVE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return 1'000'000;
}

AnytimeProcess::AnytimeProcess(DecisionProblem problem, Semantics sigma, FinitaryAF af, ConvergenceClass cls,
                               Step step)
    : problem_(problem), sigma_(sigma), af_(std::move(af)), cls_(cls), step_(std::move(step)) {}

Verdict AnytimeProcess::advance() {
  Verdict v;
  v.stage = next_++;
  v.cls = cls_;
  try {
    auto [answer, evidence] = step_(v.stage);
    v.answer = answer;
    v.evidence = std::move(evidence);
  } catch (const ResourceError& e) {
    v.answer = Answer::unknown;
    v.evidence = e.what();
  }
  last_ = v;
  return v;
}

std::vector<Verdict> AnytimeProcess::run(std::size_t last_stage) {
  std::vector<Verdict> out;
  while (next_ <= last_stage) out.push_back(advance());
  return out;
}

std::size_t candidate_bound(const FinitaryAF& faf, std::size_t stage) {
  if (auto u = faf.universe()) return *u;
  return stage / 4 + 1;
}

std::optional<std::size_t> exact_stage(const FinitaryAF& faf, Semantics sigma) {
  if (!faf.universe()) return std::nullopt;
  if (is_infinite(sigma)) return 0;
  const FiniteAF fin = truncate(faf, *faf.universe());
  switch (sigma) {
    case Semantics::admissible: return forced_depth(fin, TreeKind::ad);
    case Semantics::complete: return forced_depth(fin, TreeKind::co);
    default: return fin.size();
  }
}

bool obeys_class_law(const std::vector<Verdict>& stream, ConvergenceClass cls) {
  if (cls != ConvergenceClass::sigma1 && cls != ConvergenceClass::pi1) return true;
  const Answer sticky = cls == ConvergenceClass::sigma1 ? Answer::accept : Answer::reject;
  bool seen = false;
  for (const auto& v : stream) {
    if (v.answer == Answer::unknown) continue;
    if (seen && v.answer != sticky) return false;
    if (v.answer == sticky) seen = true;
  }
  return true;
}

bool cred_cf_fast(const FinitaryAF& faf, ArgumentId a) { return !faf.attacks(a, a); }

namespace {

using Result = std::pair<Answer, std::string>;
Result yes(std::string e) { return {Answer::accept, std::move(e)}; }
Result no(std::string e) { return {Answer::reject, std::move(e)}; }

std::string at(std::size_t s) { return std::to_string(s); }

// Per-process shared state: one attacker cache, budgets, exactness.
struct Env {
  FinitaryAF af;
  AnytimeOptions opt;
  AttackCache cache;
  std::optional<std::size_t> exact;

  Env(FinitaryAF f, AnytimeOptions o, std::optional<std::size_t> ex)
      : af(f), opt(o), cache(std::move(f)), exact(ex) {}

  bool is_exact(std::size_t s) const { return exact && s >= *exact; }
  std::size_t cand(std::size_t s) const { return candidate_bound(af, s); }
  std::string name(ArgumentId a) const { return af.name(a); }

  bool alive(TreeKind k, Extension D, Extension E, std::size_t s) {
    const TreeSpec spec = TreeSpec::make(af, k, std::move(D), std::move(E), s);
    TreeSearch search(spec, cache, s, {opt.node_budget, true});
    bool found = false;
    const auto status = search.run([&](const CodeString&, const std::vector<ArgumentId>&) {
      found = true;
      return false;
    });
    if (!found && status == SearchStatus::budget_exhausted)
      throw ResourceError("tree node budget exhausted at depth " + at(s));
    return found;
  }
};

std::shared_ptr<Env> make_env(const FinitaryAF& faf, Semantics sigma, AnytimeOptions opts) {
  return std::make_shared<Env>(faf, opts, exact_stage(faf, sigma));
}

AnytimeProcess constant(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma, Answer a,
                        std::string evidence, ConvergenceClass cls = ConvergenceClass::computable) {
  return AnytimeProcess(p, sigma, faf, cls, [a, evidence](std::size_t) { return Result{a, evidence}; });
}

TreeKind tree_kind(Semantics s) {
  switch (base_semantics(s)) {
    case Semantics::admissible: return TreeKind::ad;
    case Semantics::complete: return TreeKind::co;
    case Semantics::stable: return TreeKind::stb;
    default: break;
  }
  throw InputError("no tree encoding for semantics " + std::string(to_string(s)));
}

void check_argument(const FinitaryAF& faf, const DecisionProblem& p) {
  p.validate();
  if (p.argument && !faf.exists(*p.argument))
    throw InputError("argument " + std::to_string(*p.argument) + " is outside the universe");
}

// Least candidate with a live T_{+{a}}; accept when it held still over the
// last doubling window. Candidates that die stay dead.
AnytimeProcess ne_scheme(const FinitaryAF& faf, Semantics sigma, const DecisionProblem& p, AnytimeOptions opts,
                         bool negate) {
  auto env = make_env(faf, sigma, opts);
  const TreeKind kind = tree_kind(sigma);
  auto dead = std::make_shared<std::vector<char>>();
  auto hist = std::make_shared<std::vector<long long>>();
  auto step = [=](std::size_t s) -> Result {
    const std::size_t top = env->cand(s);
    if (dead->size() < top) dead->resize(top, 0);
    long long f = -1;
    try {
      for (ArgumentId a = 0; a < top; ++a) {
        if ((*dead)[a]) continue;
        if (env->alive(kind, {a}, {}, s)) {
          f = a;
          break;
        }
        (*dead)[a] = 1;
      }
    } catch (const ResourceError&) {
      hist->push_back(-2);
      throw;
    }
    hist->push_back(f);
    bool ne;
    std::string ev;
    if (f < 0) {
      ne = false;
      ev = "every candidate below " + at(top) + " is refuted at depth " + at(s);
    } else if (env->is_exact(s)) {
      ne = true;
      ev = "witness " + env->name(static_cast<ArgumentId>(f)) + " (exact at depth " + at(s) + ")";
    } else {
      ne = (*hist)[s / 2] == f;
      ev = "least live candidate " + env->name(static_cast<ArgumentId>(f)) +
           (ne ? " unchanged since stage " : " changed after stage ") + at(s / 2);
    }
    return {(ne != negate) ? Answer::accept : Answer::reject, ev};
  };
  return AnytimeProcess(p, sigma, faf, negate ? ConvergenceClass::pi2 : ConvergenceClass::sigma2, step);
}

// uni for co/stb: exists, and every x has cred(x) refuted or skep(x)
// confirmed. h = least unsettled candidate; accept when it moved recently.
AnytimeProcess uni_scheme(const FinitaryAF& faf, Semantics sigma, AnytimeOptions opts) {
  auto env = make_env(faf, sigma, opts);
  const TreeKind kind = tree_kind(sigma);
  auto settled = std::make_shared<std::vector<char>>();
  auto hist = std::make_shared<std::vector<long long>>();
  auto step = [=](std::size_t s) -> Result {
    const std::size_t top = env->cand(s);
    if (settled->size() < top) settled->resize(top, 0);
    long long h = -1;
    bool ex = true;
    try {
      if (kind == TreeKind::stb) ex = env->alive(kind, {}, {}, s);
      for (ArgumentId x = 0; x < top; ++x) {
        if ((*settled)[x]) continue;
        if (!env->alive(kind, {x}, {}, s) || !env->alive(kind, {}, {x}, s)) {
          (*settled)[x] = 1;
          continue;
        }
        h = x;
        break;
      }
    } catch (const ResourceError&) {
      hist->push_back(-2);
      throw;
    }
    hist->push_back(h);
    if (!ex) return no("no stable candidate alive at depth " + at(s));
    if (h < 0) return yes("every candidate below " + at(top) + " is settled at depth " + at(s));
    const std::string hn = env->name(static_cast<ArgumentId>(h));
    if (env->is_exact(s)) return no(hn + " is credulous but not skeptical (exact)");
    if ((*hist)[s / 2] != h) return yes("least unsettled candidate " + hn + " is new since stage " + at(s / 2));
    return no("candidate " + hn + " unsettled since stage " + at(s / 2));
  };
  return AnytimeProcess(DecisionProblem::uni(), sigma, faf, ConvergenceClass::pi2, step);
}

std::size_t scan_bound(const FinitaryAF& faf, std::size_t s) {
  std::size_t b = s + 1;
  if (auto u = faf.universe()) b = std::min(b, *u);
  return b;
}

AnytimeProcess ne_cf_anytime(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma, bool negate) {
  auto found = std::make_shared<std::optional<ArgumentId>>();
  auto next = std::make_shared<ArgumentId>(0);
  auto step = [=](std::size_t s) -> Result {
    for (; !*found && *next < scan_bound(faf, s); ++*next)
      if (!faf.attacks(*next, *next)) *found = *next;
    if (*found) {
      const std::string ev = faf.name(**found) + " does not attack itself";
      return negate ? no(ev) : yes(ev);
    }
    const std::string ev = "every argument up to " + at(s) + " attacks itself";
    return negate ? yes(ev) : no(ev);
  };
  return AnytimeProcess(p, sigma, faf, negate ? ConvergenceClass::pi1 : ConvergenceClass::sigma1, step);
}

AnytimeProcess finite_tree_or_cf(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma,
                                 AnytimeOptions opts) {
  const bool naive = sigma == Semantics::naive;
  switch (p.kind) {
    case Problem::cred: {
      const ArgumentId a = *p.argument;
      const bool ok = cred_cf_fast(faf, a);
      return constant(faf, p, sigma, ok ? Answer::accept : Answer::reject,
                      faf.name(a) + (ok ? " does not attack itself" : " attacks itself"));
    }
    case Problem::skep:
      if (naive) {
        auto proc = skep_na_anytime(faf, *p.argument);
        return AnytimeProcess(p, sigma, faf, proc.cls(), [proc](std::size_t) mutable {
          const Verdict v = proc.advance();
          return Result{v.answer, v.evidence};
        });
      }
      return constant(faf, p, sigma, Answer::reject, "the empty set is conflict-free");
    case Problem::exists:
      return constant(faf, p, sigma, Answer::accept,
                      naive ? "every conflict-free set extends to a naive one" : "the empty set is conflict-free");
    case Problem::ne: return ne_cf_anytime(faf, p, sigma, false);
    case Problem::uni:
      if (naive) {
        auto proc = uni_na_anytime(faf);
        return AnytimeProcess(p, sigma, faf, proc.cls(), [proc](std::size_t) mutable {
          const Verdict v = proc.advance();
          return Result{v.answer, v.evidence};
        });
      }
      return ne_cf_anytime(faf, p, sigma, true);
  }
  (void)opts;
  throw InputError("unsupported problem");
}

// ---------------------------------------------------------------------------
// inf-ad

struct InfAdCore {
  std::shared_ptr<Env> env;
  Extension D, E;
  std::vector<char> in_fin;
  std::vector<char> failed;
  std::vector<std::size_t> fin_size;
  std::vector<long long> f_hist;
  std::size_t budget = 0;

  bool excluded(ArgumentId x) const { return std::binary_search(E.begin(), E.end(), x); }

  bool cf_with(const Extension& X, ArgumentId x) {
    if (env->cache.self_attacking(x)) return false;
    for (ArgumentId y : X)
      if (env->cache.conflict(x, y)) return false;
    return true;
  }

  // Some admissible X with D u {b} <= X <= [0, t], X n E empty.
  bool finite_witness(ArgumentId b, std::size_t t) {
    Extension X = D;
    X.push_back(b);
    X = normalize(std::move(X));
    if (X.back() > t) return false;
    for (ArgumentId x : X)
      if (excluded(x)) return false;
    for (std::size_t i = 0; i < X.size(); ++i) {
      if (env->cache.self_attacking(X[i])) return false;
      for (std::size_t j = 0; j < i; ++j)
        if (env->cache.conflict(X[i], X[j])) return false;
    }
    std::set<Extension> seen;
    return close(X, t, seen);
  }

  bool close(const Extension& X, std::size_t t, std::set<Extension>& seen) {
    if (budget == 0) throw ResourceError("finite-witness budget exhausted");
    --budget;
    if (!seen.insert(X).second) return false;
    for (ArgumentId y : X) {
      const std::vector<ArgumentId> att_y = env->cache.attackers(y);
      for (ArgumentId z : att_y) {
        const std::vector<ArgumentId> att_z = env->cache.attackers(z);
        bool defended = false;
        for (ArgumentId x : att_z)
          if (std::binary_search(X.begin(), X.end(), x)) {
            defended = true;
            break;
          }
        if (defended) continue;
        for (ArgumentId x : att_z) {
          if (x > t || excluded(x) || !cf_with(X, x)) continue;
          Extension next = X;
          next.insert(std::upper_bound(next.begin(), next.end(), x), x);
          if (close(next, t, seen)) return true;
        }
        return false;
      }
    }
    return true;
  }

  Result step(std::size_t s) {
    budget = env->opt.subset_budget;
    const std::size_t top = env->cand(s);
    if (in_fin.size() < top) {
      in_fin.resize(top, 0);
      failed.resize(top, 0);
    }
    std::size_t count = 0;
    long long f = -1;
    try {
      for (ArgumentId b = 0; b < top; ++b) {
        if (!in_fin[b] && !excluded(b) && finite_witness(b, s)) in_fin[b] = 1;
        count += in_fin[b];
      }
      for (ArgumentId b = 0; b < top; ++b) {
        if (failed[b]) continue;
        if (excluded(b) || in_fin[b]) {
          failed[b] = 1;
          continue;
        }
        Extension Db = D;
        Db.push_back(b);
        if (env->alive(TreeKind::ad, normalize(std::move(Db)), E, s)) {
          f = b;
          break;
        }
        failed[b] = 1;
      }
    } catch (const ResourceError&) {
      fin_size.push_back(fin_size.empty() ? 0 : fin_size.back());
      f_hist.push_back(-2);
      throw;
    }
    fin_size.push_back(count);
    f_hist.push_back(f);
    const bool e_ok = f >= 0 && f_hist[s / 2] == f;
    const bool a_ok = count > fin_size[s / 2];
    if (e_ok)
      return yes("live argument " + env->name(static_cast<ArgumentId>(f)) +
                 " with no finite admissible witness, stable since stage " + at(s / 2));
    if (a_ok)
      return yes("finitely extendable candidates grew from " + at(fin_size[s / 2]) + " to " + at(count) +
                 " since stage " + at(s / 2));
    if (f >= 0)
      return no("live candidate " + env->name(static_cast<ArgumentId>(f)) + " is new since stage " + at(s / 2) +
                "; " + at(count) + " finitely extendable");
    return no("no live candidate without a finite witness; " + at(count) + " finitely extendable");
  }
};

Result finite_universe_inf(const DecisionProblem& p) {
  if (p.kind == Problem::skep) return yes("a finite universe has no infinite extension (vacuous)");
  return no("a finite universe has no infinite extension");
}

AnytimeProcess inf_core_process(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma,
                                ConvergenceClass cls, Extension D, Extension E, bool negate, AnytimeOptions opts,
                                bool stable);

// ---------------------------------------------------------------------------
// inf-stb

struct InfStbCore {
  std::shared_ptr<Env> env;
  Extension D, E;
  std::vector<std::vector<Extension>> fam;  // fam[t]: In-sets of the depth-t frontier
  std::vector<long long> f_hist;

  bool usable(const Extension& X, std::size_t s) {
    for (ArgumentId x : E)
      if (std::binary_search(X.begin(), X.end(), x)) return false;
    for (ArgumentId x : X)
      for (ArgumentId y : X)
        if (env->cache.attacks(x, y)) return false;
    for (ArgumentId j = 0; j <= s; ++j) {
      if (!env->af.exists(j)) break;
      if (std::binary_search(X.begin(), X.end(), j)) continue;
      const std::vector<ArgumentId> att = env->cache.attackers(j);
      bool hit = false;
      for (ArgumentId a : att)
        if (std::binary_search(X.begin(), X.end(), a)) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  }

  Result step(std::size_t s) {
    std::set<Extension> front;
    try {
      const TreeSpec spec = TreeSpec::make(env->af, TreeKind::stb, D, E, s);
      TreeSearch search(spec, env->cache, s, {env->opt.node_budget, true});
      const auto status = search.run([&](const CodeString&, const std::vector<ArgumentId>& in) {
        front.insert(normalize(in));
        return true;
      });
      if (status == SearchStatus::budget_exhausted) throw ResourceError("tree node budget exhausted at depth " + at(s));
    } catch (const ResourceError&) {
      fam.emplace_back();
      f_hist.push_back(-2);
      throw;
    }
    fam.emplace_back(front.begin(), front.end());
    long long f = -1;
    std::size_t family = 0;
    for (std::size_t t = 0; t <= s && f < 0; ++t) {
      std::vector<const Extension*> good;
      for (const auto& X : fam[t])
        if (usable(X, s)) good.push_back(&X);
      bool covered = true;
      for (const auto& in : front) {
        bool any = false;
        for (const Extension* X : good)
          if (std::includes(in.begin(), in.end(), X->begin(), X->end())) {
            any = true;
            break;
          }
        if (!any) {
          covered = false;
          break;
        }
      }
      if (covered) {
        f = static_cast<long long>(t);
        family = good.size();
      }
    }
    f_hist.push_back(f);
    const bool e_ok = f >= 0 && f_hist[s / 2] == f;
    if (e_ok)
      return no("depth-" + at(s) + " frontier covered by " + at(family) + " finite stable candidate(s) from depth " +
                at(f) + " since stage " + at(s / 2));
    if (f >= 0)
      return yes("covering family from depth " + at(f) + " is new since stage " + at(s / 2));
    return yes(at(front.size()) + " frontier set(s) at depth " + at(s) + " not covered by finite stable candidates");
  }
};

AnytimeProcess inf_core_process(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma,
                                ConvergenceClass cls, Extension D, Extension E, bool negate, AnytimeOptions opts,
                                bool stable) {
  if (faf.is_finite())
    return AnytimeProcess(p, sigma, faf, ConvergenceClass::computable,
                          [p](std::size_t) { return finite_universe_inf(p); });
  auto env = make_env(faf, sigma, opts);
  auto flip = [negate](Result r) {
    if (negate && r.first != Answer::unknown)
      r.first = r.first == Answer::accept ? Answer::reject : Answer::accept;
    return r;
  };
  if (stable) {
    auto core = std::make_shared<InfStbCore>();
    core->env = env;
    core->D = normalize(std::move(D));
    core->E = normalize(std::move(E));
    return AnytimeProcess(p, sigma, faf, cls, [core, flip](std::size_t s) { return flip(core->step(s)); });
  }
  auto core = std::make_shared<InfAdCore>();
  core->env = env;
  core->D = normalize(std::move(D));
  core->E = normalize(std::move(E));
  return AnytimeProcess(p, sigma, faf, cls, [core, flip](std::size_t s) { return flip(core->step(s)); });
}

Extension greedy_cf(const FinitaryAF& faf, std::size_t s) {
  Extension out;
  for (ArgumentId x = 0; x < s && faf.exists(x); ++x) {
    if (faf.attacks(x, x)) continue;
    bool ok = true;
    for (ArgumentId y : out)
      if (faf.attacks(x, y) || faf.attacks(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

AnytimeProcess skep_na_anytime(const FinitaryAF& faf, ArgumentId a) {
  auto refuted = std::make_shared<std::optional<std::string>>();
  auto next = std::make_shared<ArgumentId>(0);
  auto step = [=](std::size_t s) -> Result {
    if (!*refuted && faf.attacks(a, a)) *refuted = faf.name(a) + " attacks itself";
    for (; !*refuted && *next < scan_bound(faf, s); ++*next) {
      const ArgumentId y = *next;
      if (y == a || faf.attacks(y, y)) continue;
      if (faf.attacks(y, a) || faf.attacks(a, y))
        *refuted = faf.name(y) + " is not self-attacking and conflicts with " + faf.name(a);
    }
    if (*refuted) return no(**refuted);
    return yes("no counterexample up to " + at(s));
  };
  return AnytimeProcess(DecisionProblem::skep(a), Semantics::naive, faf, ConvergenceClass::pi1, step);
}

AnytimeProcess uni_na_anytime(const FinitaryAF& faf) {
  auto refuted = std::make_shared<std::optional<std::string>>();
  auto good = std::make_shared<std::vector<ArgumentId>>();
  auto next = std::make_shared<ArgumentId>(0);
  auto step = [=](std::size_t s) -> Result {
    for (; !*refuted && *next < scan_bound(faf, s); ++*next) {
      const ArgumentId y = *next;
      if (faf.attacks(y, y)) continue;
      for (ArgumentId x : *good)
        if (faf.attacks(x, y) || faf.attacks(y, x)) {
          *refuted = faf.name(x) + " and " + faf.name(y) + " are not self-attacking and conflict";
          break;
        }
      good->push_back(y);
    }
    if (*refuted) return no(**refuted);
    return yes("non-self-attacking arguments up to " + at(s) + " are conflict-free");
  };
  return AnytimeProcess(DecisionProblem::uni(), Semantics::naive, faf, ConvergenceClass::pi1, step);
}

AnytimeProcess tree_anytime(const FinitaryAF& faf, Semantics sigma, const DecisionProblem& p, AnytimeOptions opts) {
  check_argument(faf, p);
  const TreeKind kind = tree_kind(sigma);
  if (is_infinite(sigma)) throw InputError("tree_anytime takes a finite semantics");
  const bool ad = kind == TreeKind::ad;
  switch (p.kind) {
    case Problem::cred: {
      auto env = make_env(faf, sigma, opts);
      const ArgumentId a = *p.argument;
      return AnytimeProcess(p, sigma, faf, ConvergenceClass::pi1, [=](std::size_t s) -> Result {
        if (env->alive(kind, {a}, {}, s)) return yes("tree containing " + env->name(a) + " alive at depth " + at(s));
        return no("tree containing " + env->name(a) + " dead at depth " + at(s));
      });
    }
    case Problem::skep: {
      if (ad) return constant(faf, p, sigma, Answer::reject, "the empty set is admissible");
      auto env = make_env(faf, sigma, opts);
      const ArgumentId a = *p.argument;
      return AnytimeProcess(p, sigma, faf, ConvergenceClass::sigma1, [=](std::size_t s) -> Result {
        if (!env->alive(kind, {}, {a}, s)) return yes("tree avoiding " + env->name(a) + " dead at depth " + at(s));
        return no("tree avoiding " + env->name(a) + " alive at depth " + at(s));
      });
    }
    case Problem::exists:
    case Problem::ne: {
      if (kind == TreeKind::stb) {
        if (p.kind == Problem::ne && faf.universe() == std::size_t{0})
          return constant(faf, p, sigma, Answer::reject, "the universe is empty");
        auto env = make_env(faf, sigma, opts);
        return AnytimeProcess(p, sigma, faf, ConvergenceClass::pi1, [=](std::size_t s) -> Result {
          if (env->alive(kind, {}, {}, s)) return yes("stable tree alive at depth " + at(s));
          return no("stable tree dead at depth " + at(s));
        });
      }
      if (p.kind == Problem::exists)
        return constant(faf, p, sigma, Answer::accept,
                        ad ? "the empty set is admissible" : "the grounded extension is complete");
      return ne_scheme(faf, sigma, p, opts, false);
    }
    case Problem::uni:
      if (ad) return ne_scheme(faf, sigma, p, opts, true);
      return uni_scheme(faf, sigma, opts);
  }
  throw InputError("unsupported problem");
}

AnytimeProcess infad_anytime(const FinitaryAF& faf, const DecisionProblem& p, AnytimeOptions opts) {
  check_argument(faf, p);
  const Semantics sigma = Semantics::inf_admissible;
  switch (p.kind) {
    case Problem::exists:
    case Problem::ne: return inf_core_process(faf, p, sigma, ConvergenceClass::u_sigma2, {}, {}, false, opts, false);
    case Problem::cred:
      return inf_core_process(faf, p, sigma, ConvergenceClass::u_sigma2, {*p.argument}, {}, false, opts, false);
    case Problem::skep:
      return inf_core_process(faf, p, sigma, ConvergenceClass::d_sigma2, {}, {*p.argument}, true, opts, false);
    case Problem::uni: return uni_inf_anytime(faf, sigma, opts);
  }
  throw InputError("unsupported problem");
}

AnytimeProcess infstb_anytime(const FinitaryAF& faf, const DecisionProblem& p, AnytimeOptions opts) {
  check_argument(faf, p);
  const Semantics sigma = Semantics::inf_stable;
  switch (p.kind) {
    case Problem::exists:
    case Problem::ne: return inf_core_process(faf, p, sigma, ConvergenceClass::pi2, {}, {}, false, opts, true);
    case Problem::cred:
      return inf_core_process(faf, p, sigma, ConvergenceClass::pi2, {*p.argument}, {}, false, opts, true);
    case Problem::skep:
      return inf_core_process(faf, p, sigma, ConvergenceClass::sigma2, {}, {*p.argument}, true, opts, true);
    case Problem::uni: return uni_inf_anytime(faf, sigma, opts);
  }
  throw InputError("unsupported problem");
}

AnytimeProcess infco_anytime(const FinitaryAF& faf, const DecisionProblem& p, AnytimeOptions opts) {
  if (p.kind == Problem::skep || p.kind == Problem::uni)
    throw InputError("inf-co supports only exists, ne and cred");
  auto inner = infad_anytime(faf, p, opts);
  return AnytimeProcess(p, Semantics::inf_complete, faf, inner.cls(), [inner](std::size_t) mutable {
    const Verdict v = inner.advance();
    return Result{v.answer, v.evidence};
  });
}

AnytimeProcess uni_inf_anytime(const FinitaryAF& faf, Semantics sigma, AnytimeOptions opts) {
  if (sigma != Semantics::inf_admissible && sigma != Semantics::inf_stable)
    throw InputError("uni_inf_anytime takes inf-ad or inf-stb");
  const DecisionProblem p = DecisionProblem::uni();
  if (faf.is_finite())
    return AnytimeProcess(p, sigma, faf, ConvergenceClass::computable,
                          [p](std::size_t) { return finite_universe_inf(p); });
  const bool stable = sigma == Semantics::inf_stable;
  auto make = [=](const DecisionProblem& q) {
    return stable ? infstb_anytime(faf, q, opts) : infad_anytime(faf, q, opts);
  };
  struct State {
    std::optional<AnytimeProcess> exists;
    std::vector<std::pair<AnytimeProcess, AnytimeProcess>> per_arg;
  };
  auto st = std::make_shared<State>();
  st->exists.emplace(make(DecisionProblem::exists()));
  auto step = [=](std::size_t s) -> Result {
    const Verdict ex = st->exists->advance();
    const std::size_t top = s / 32 + 1;
    while (st->per_arg.size() < top) {
      const auto a = static_cast<ArgumentId>(st->per_arg.size());
      st->per_arg.emplace_back(make(DecisionProblem::cred(a)), make(DecisionProblem::skep(a)));
      if (s > 0) {
        st->per_arg.back().first.run(s - 1);
        st->per_arg.back().second.run(s - 1);
      }
    }
    bool unknown = ex.answer == Answer::unknown;
    std::optional<ArgumentId> blocker;
    for (std::size_t a = 0; a < st->per_arg.size(); ++a) {
      const Verdict c = st->per_arg[a].first.advance();
      const Verdict k = st->per_arg[a].second.advance();
      if (c.answer == Answer::unknown || k.answer == Answer::unknown) unknown = true;
      if (!blocker && c.answer == Answer::accept && k.answer == Answer::reject) blocker = static_cast<ArgumentId>(a);
    }
    if (ex.answer == Answer::reject) return no("no infinite extension: " + ex.evidence);
    if (blocker) return no(faf.name(*blocker) + " looks credulous but not skeptical");
    if (unknown) return {Answer::unknown, "a component process ran out of budget"};
    return yes("infinite extension and every candidate below " + at(top) + " is settled");
  };
  return AnytimeProcess(p, sigma, faf, ConvergenceClass::pi3, step);
}

Verdict infcf_trivia(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma, std::size_t stage) {
  Verdict v;
  v.stage = stage;
  if (p.kind == Problem::uni && sigma == Semantics::inf_conflict_free) {
    v.answer = Answer::reject;
    v.cls = ConvergenceClass::computable;
    v.evidence = "no framework has a unique infinite conflict-free extension";
    return v;
  }
  const Extension g = greedy_cf(faf, stage);
  v.answer = Answer::unknown;
  v.cls = ConvergenceClass::none;
  std::string list;
  for (ArgumentId x : g) list += (list.empty() ? "" : ",") + faf.name(x);
  v.evidence = "non-convergent probe: conflict-free set of size " + std::to_string(g.size()) + " below " +
               std::to_string(stage) + " {" + list + "}";
  return v;
}

std::vector<ArgumentId> y_set_probe(const FinitaryAF& faf, Semantics sigma, const Extension& D, const Extension& E,
                                    std::size_t stage, AnytimeOptions opts) {
  const TreeKind kind = tree_kind(sigma);
  if (kind == TreeKind::co) throw InputError("y_set_probe takes ad or stb");
  Env env(faf, opts, std::nullopt);
  std::vector<ArgumentId> out;
  const Extension En = normalize(E);
  for (ArgumentId b = 0; b < candidate_bound(faf, stage); ++b) {
    if (std::binary_search(En.begin(), En.end(), b)) continue;
    Extension Db = D;
    Db.push_back(b);
    if (env.alive(kind, normalize(std::move(Db)), En, stage)) out.push_back(b);
  }
  return out;
}

AnytimeProcess make_process(const FinitaryAF& faf, const DecisionProblem& p, Semantics sigma, AnytimeOptions opts) {
  check_argument(faf, p);
  switch (sigma) {
    case Semantics::conflict_free:
    case Semantics::naive: return finite_tree_or_cf(faf, p, sigma, opts);
    case Semantics::admissible:
    case Semantics::complete:
    case Semantics::stable: return tree_anytime(faf, sigma, p, opts);
    case Semantics::inf_admissible: return infad_anytime(faf, p, opts);
    case Semantics::inf_stable: return infstb_anytime(faf, p, opts);
    case Semantics::inf_complete: return infco_anytime(faf, p, opts);
    case Semantics::inf_conflict_free:
    case Semantics::inf_naive: {
      if (faf.is_finite())
        return AnytimeProcess(p, sigma, faf, ConvergenceClass::computable,
                              [p](std::size_t) { return finite_universe_inf(p); });
      const ConvergenceClass cls = (p.kind == Problem::uni && sigma == Semantics::inf_conflict_free)
                                       ? ConvergenceClass::computable
                                       : ConvergenceClass::none;
      return AnytimeProcess(p, sigma, faf, cls, [=](std::size_t s) {
        const Verdict v = infcf_trivia(faf, p, sigma, s);
        return Result{v.answer, v.evidence};
      });
    }
  }
  throw InputError("unsupported semantics");
}

}  // namespace finarg
