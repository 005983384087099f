#include "finarg/trees.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace finarg {

std::string_view to_string(TreeKind k) {
  switch (k) {
    case TreeKind::ad: return "ad";
    case TreeKind::stb: return "stb";
    case TreeKind::co: return "co";
    case TreeKind::inf_na: return "inf-na";
  }
  return "?";
}

std::optional<TreeKind> parse_tree_kind(std::string_view tag) {
  if (tag == "ad") return TreeKind::ad;
  if (tag == "stb") return TreeKind::stb;
  if (tag == "co") return TreeKind::co;
  if (tag == "inf-na" || tag == "na") return TreeKind::inf_na;
  return std::nullopt;
}

TreeSpec TreeSpec::make(FinitaryAF af, TreeKind kind, Extension D, Extension E,
                        std::optional<std::size_t> pair_horizon, std::optional<std::uint32_t> label_cap) {
  D = normalize(std::move(D));
  E = normalize(std::move(E));
  for (ArgumentId x : D)
    if (std::binary_search(E.begin(), E.end(), x))
      throw InputError("argument " + std::to_string(x) + " is both required and excluded");
  for (const Extension* s : {&D, &E})
    for (ArgumentId x : *s)
      if (!af.exists(x)) throw InputError("argument " + std::to_string(x) + " is outside the universe");
  if (kind == TreeKind::inf_na && (!D.empty() || !E.empty()))
    throw InputError("the inf-na tree takes no required or excluded arguments");
  TreeSpec spec{std::move(af), kind, std::move(D), std::move(E), kDefaultPairHorizon, label_cap};
  if (pair_horizon)
    spec.pair_horizon = *pair_horizon;
  else if (spec.af.universe())
    spec.pair_horizon = *spec.af.universe();
  return spec;
}

TreeSpec TreeSpec::make(const FiniteAF& af, TreeKind kind, Extension D, Extension E) {
  return make(FinitaryAF::from_finite(af), kind, std::move(D), std::move(E));
}

AttackPairEnum::AttackPairEnum(AttackCache& cache, std::size_t horizon) : cache_(&cache), limit_(horizon) {
  if (auto u = cache.af().universe()) limit_ = std::min(limit_, *u);
}

bool AttackPairEnum::extend() {
  if (next_target_ >= limit_) return false;
  const auto t = static_cast<ArgumentId>(next_target_++);
  const std::vector<ArgumentId> att = cache_->attackers(t);
  for (ArgumentId a : att) pairs_.push_back({a, t});
  return true;
}

std::optional<Attack> AttackPairEnum::pair_at(std::size_t j) {
  while (pairs_.size() <= j)
    if (!extend()) return std::nullopt;
  return pairs_[j];
}

std::size_t AttackPairEnum::size() {
  while (extend()) {
  }
  return pairs_.size();
}

bool bitmask_less(const Extension& a, const Extension& b) {
  auto i = a.rbegin(), j = b.rbegin();
  for (; i != a.rend() && j != b.rend(); ++i, ++j)
    if (*i != *j) return *i < *j;
  return i == a.rend() && j != b.rend();
}

// ---------------------------------------------------------------------------
// Reference semantics, straight from the definitions.

namespace {

void push(Extension& s, ArgumentId x) { s.push_back(x); }

struct RefEval {
  const TreeSpec& spec;
  AttackCache cache;
  AttackPairEnum pairs;
  explicit RefEval(const TreeSpec& s) : spec(s), cache(s.af), pairs(cache, s.pair_horizon) {}

  // Label validity of s[level]; also fills the sets.
  bool apply(const CodeString& s, std::size_t level, InOutSets& st) {
    const std::uint32_t v = s[level];
    const auto& af = spec.af;
    switch (spec.kind) {
      case TreeKind::ad: {
        const std::size_t j = level / 2;
        if (level % 2 == 0) {
          if (!af.exists(static_cast<ArgumentId>(j))) return v == 0;
          if (v > 1) return false;
          push(v == 1 ? st.in : st.out, static_cast<ArgumentId>(j));
          return true;
        }
        auto g = pairs.pair_at(j);
        if (!g) return v == 0;
        if (v == 0) {
          push(st.out, g->target);
          return true;
        }
        const ArgumentId k = v - 1;
        const std::vector<ArgumentId> att = cache.attackers(g->attacker);
        if (!std::binary_search(att.begin(), att.end(), k)) return false;
        push(st.in, k);
        push(st.in, g->target);
        for (ArgumentId i : att)
          if (i < k) push(st.out, i);
        return true;
      }
      case TreeKind::stb: {
        const auto j = static_cast<ArgumentId>(level);
        if (!af.exists(j)) return v == 0;
        if (v == 0) {
          push(st.in, j);
          return true;
        }
        const ArgumentId k = v - 1;
        const std::vector<ArgumentId> att = cache.attackers(j);
        if (!std::binary_search(att.begin(), att.end(), k)) return false;
        push(st.in, k);
        push(st.out, j);
        for (ArgumentId i : att)
          if (i < k) push(st.out, i);
        return true;
      }
      case TreeKind::co: {
        const auto j = static_cast<ArgumentId>(level / 2);
        if (!af.exists(j)) return v == 0;
        const std::vector<ArgumentId> att = cache.attackers(j);
        const bool even = level % 2 == 0;
        if (v == 0) {
          push(even ? st.in : st.out_splus, j);
          return true;
        }
        const ArgumentId k = v - 1;
        if (!std::binary_search(att.begin(), att.end(), k)) return false;
        if (even) {
          push(st.out, j);
          push(st.out_splus, k);
          for (ArgumentId i : att)
            if (i < k) push(st.in_splus, i);
        } else {
          push(st.in, k);
          push(st.in_splus, j);
          for (ArgumentId i : att)
            if (i < k) push(st.out, i);
        }
        return true;
      }
      case TreeKind::inf_na: {
        const auto j = static_cast<ArgumentId>(level / 2);
        if (level % 2 == 0) {
          if (v <= j || !af.exists(v)) return false;
          push(st.in, v);
          for (ArgumentId i = j + 1; i < v; ++i) push(st.out, i);
          return true;
        }
        if (!af.exists(j)) return false;
        if (v == 0) {
          push(st.in, j);
          return true;
        }
        const ArgumentId k = v - 1;
        if (!af.exists(k) || !cache.conflict(j, k)) return false;
        push(st.in, k);
        push(st.out, j);
        for (ArgumentId i = 0; i < k; ++i)
          if (cache.conflict(j, i)) push(st.out, i);
        return true;
      }
    }
    return false;
  }

  std::optional<InOutSets> sets(const CodeString& s) {
    InOutSets st;
    st.in = spec.D;
    st.out = spec.E;
    for (std::size_t l = 0; l < s.size(); ++l)
      if (!apply(s, l, st)) return std::nullopt;
    st.in = normalize(std::move(st.in));
    st.out = normalize(std::move(st.out));
    st.in_splus = normalize(std::move(st.in_splus));
    st.out_splus = normalize(std::move(st.out_splus));
    return st;
  }

  bool conditions(const InOutSets& st, std::size_t len) {
    const bool unlimited = spec.kind == TreeKind::inf_na;
    auto in_range = [&](ArgumentId x) { return unlimited || x < len; };
    auto has = [](const Extension& e, ArgumentId x) { return std::binary_search(e.begin(), e.end(), x); };
    for (ArgumentId x : st.in) {
      if (!in_range(x)) continue;
      for (ArgumentId y : st.in)
        if (in_range(y) && cache.attacks(x, y)) return false;
      if (has(st.out, x)) return false;
    }
    if (spec.kind != TreeKind::co) return true;
    for (ArgumentId x : st.in_splus)
      if (has(st.out_splus, x)) return false;
    for (ArgumentId k : st.out_splus) {
      if (!in_range(k)) continue;
      for (ArgumentId j : st.in) {
        if (!in_range(j)) continue;
        if (cache.attacks(j, k) || cache.attacks(k, j)) return false;
      }
    }
    return true;
  }
};

}  // namespace

InOutSets ins_out_sets(const TreeSpec& spec, const CodeString& s) {
  RefEval ev(spec);
  auto st = ev.sets(s);
  if (!st) throw InputError("code string " + to_string(s) + " has an invalid label");
  return *st;
}

bool is_node(const TreeSpec& spec, const CodeString& s) {
  RefEval ev(spec);
  auto st = ev.sets(s);
  return st && ev.conditions(*st, s.size());
}

std::vector<CodeString> children(const TreeSpec& spec, const CodeString& s) {
  // Generous candidate labels; is_node does the filtering.
  AttackCache cache(spec.af);
  AttackPairEnum pairs(cache, spec.pair_horizon);
  const std::size_t level = s.size();
  std::uint32_t top = 1;
  auto max_att = [&](ArgumentId x) -> std::uint32_t {
    const auto& att = cache.attackers(x);
    return att.empty() ? 0 : att.back() + 1;
  };
  switch (spec.kind) {
    case TreeKind::ad:
      if (level % 2 == 1)
        if (auto g = pairs.pair_at(level / 2)) top = max_att(g->attacker);
      break;
    case TreeKind::stb: top = max_att(static_cast<ArgumentId>(level)); break;
    case TreeKind::co: top = max_att(static_cast<ArgumentId>(level / 2)); break;
    case TreeKind::inf_na:
      if (!spec.label_cap) throw InputError("the inf-na tree needs a label cap");
      top = *spec.label_cap;
      break;
  }
  std::vector<CodeString> out;
  CodeString child = s;
  child.push_back(0);
  for (std::uint32_t v = 0; v <= top; ++v) {
    if (spec.kind == TreeKind::inf_na && v >= *spec.label_cap) break;
    child.back() = v;
    if (is_node(spec, child)) out.push_back(child);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search engine.

namespace {

enum SetId : std::uint8_t { kIn = 0, kOut = 1, kInS = 2, kOutS = 3 };

struct Contribution {
  std::uint8_t set;
  ArgumentId arg;
};

struct LabelOption {
  std::uint32_t label;
  std::vector<Contribution> adds;
};

std::vector<LabelOption> level_options(const TreeSpec& spec, AttackCache& cache, AttackPairEnum& pairs,
                                       std::size_t level) {
  const auto& af = spec.af;
  std::vector<LabelOption> out;
  auto pad = [&] {
    out.push_back({0, {}});
    return out;
  };
  auto with_earlier = [](LabelOption o, std::uint8_t set, const std::vector<ArgumentId>& att, std::size_t idx) {
    for (std::size_t i = 0; i < idx; ++i) o.adds.push_back({set, att[i]});
    return o;
  };
  switch (spec.kind) {
    case TreeKind::ad: {
      const auto j = static_cast<ArgumentId>(level / 2);
      if (level % 2 == 0) {
        if (!af.exists(j)) return pad();
        out.push_back({0, {{kOut, j}}});
        out.push_back({1, {{kIn, j}}});
        return out;
      }
      auto g = pairs.pair_at(j);
      if (!g) return pad();
      out.push_back({0, {{kOut, g->target}}});
      const std::vector<ArgumentId> att = cache.attackers(g->attacker);
      for (std::size_t idx = 0; idx < att.size(); ++idx)
        out.push_back(with_earlier({att[idx] + 1, {{kIn, att[idx]}, {kIn, g->target}}}, kOut, att, idx));
      return out;
    }
    case TreeKind::stb: {
      const auto j = static_cast<ArgumentId>(level);
      if (!af.exists(j)) return pad();
      out.push_back({0, {{kIn, j}}});
      const std::vector<ArgumentId> att = cache.attackers(j);
      for (std::size_t idx = 0; idx < att.size(); ++idx)
        out.push_back(with_earlier({att[idx] + 1, {{kIn, att[idx]}, {kOut, j}}}, kOut, att, idx));
      return out;
    }
    case TreeKind::co: {
      const auto j = static_cast<ArgumentId>(level / 2);
      if (!af.exists(j)) return pad();
      const std::vector<ArgumentId> att = cache.attackers(j);
      if (level % 2 == 0) {
        out.push_back({0, {{kIn, j}}});
        for (std::size_t idx = 0; idx < att.size(); ++idx)
          out.push_back(with_earlier({att[idx] + 1, {{kOut, j}, {kOutS, att[idx]}}}, kInS, att, idx));
      } else {
        out.push_back({0, {{kOutS, j}}});
        for (std::size_t idx = 0; idx < att.size(); ++idx)
          out.push_back(with_earlier({att[idx] + 1, {{kIn, att[idx]}, {kInS, j}}}, kOut, att, idx));
      }
      return out;
    }
    case TreeKind::inf_na: {
      const std::uint32_t cap = *spec.label_cap;
      const auto j = static_cast<ArgumentId>(level / 2);
      if (level % 2 == 0) {
        for (ArgumentId v = j + 1; v < cap && af.exists(v); ++v) {
          LabelOption o{v, {{kIn, v}}};
          for (ArgumentId i = j + 1; i < v; ++i) o.adds.push_back({kOut, i});
          out.push_back(std::move(o));
        }
        return out;
      }
      if (!af.exists(j)) return out;
      out.push_back({0, {{kIn, j}}});
      std::vector<ArgumentId> earlier;
      for (ArgumentId k = 0; k < cap && af.exists(k); ++k) {
        if (!cache.conflict(j, k)) continue;
        LabelOption o{k + 1, {{kIn, k}, {kOut, j}}};
        for (ArgumentId i : earlier) o.adds.push_back({kOut, i});
        out.push_back(std::move(o));
        earlier.push_back(k);
      }
      return out;
    }
  }
  return out;
}

}  // namespace

struct TreeSearch::Impl {
  TreeSpec spec;
  AttackCache& cache;
  std::size_t depth;
  SearchOptions opts;
  ArgumentId rng;
  bool co;

  std::vector<std::vector<LabelOption>> levels;
  std::vector<std::vector<std::uint32_t>> watch_direct, watch_att;

  std::vector<std::int32_t> cnt[4];
  std::vector<std::int32_t> hit_in, hit_outs;
  std::vector<ArgumentId> in_list;

  struct TrailOp {
    bool implied;
    std::uint8_t set;
    std::uint32_t a;
  };
  std::vector<TrailOp> trail;
  std::vector<std::int32_t> implied;

  std::vector<std::uint32_t> queued;
  std::vector<std::uint32_t> queue;
  bool collecting = false;
  std::vector<ArgumentId> fresh;
  std::size_t next_open = 0;

  CodeString code;
  SearchStats stats;
  bool budget_hit = false;
  const Visitor* visit = nullptr;
  const CodeString* hint = nullptr;

  Impl(const TreeSpec& s, AttackCache& c, std::size_t d, SearchOptions o)
      : spec(s), cache(c), depth(d), opts(o), co(s.kind == TreeKind::co) {
    if (spec.kind == TreeKind::inf_na && !spec.label_cap)
      throw InputError("the inf-na tree needs a label cap");
    rng = spec.kind == TreeKind::inf_na ? std::numeric_limits<ArgumentId>::max() : static_cast<ArgumentId>(d);
    AttackPairEnum pairs(cache, spec.pair_horizon);
    levels.reserve(depth);
    for (std::size_t l = 0; l < depth; ++l) levels.push_back(level_options(spec, cache, pairs, l));
    if (!opts.propagate) return;
    auto add_watch = [](std::vector<std::vector<std::uint32_t>>& w, ArgumentId x, std::uint32_t l) {
      if (x >= w.size()) w.resize(x + 1);
      if (w[x].empty() || w[x].back() != l) w[x].push_back(l);
    };
    for (std::uint32_t l = 0; l < depth; ++l)
      for (const auto& o : levels[l])
        for (const auto& c : o.adds) {
          add_watch(watch_direct, c.arg, l);
          const std::vector<ArgumentId> att = cache.attackers(c.arg);
          for (ArgumentId a : att) add_watch(watch_att, a, l);
        }
  }

  bool in_range(ArgumentId x) const { return x < rng; }

  void grow(ArgumentId x) {
    if (x < hit_in.size()) return;
    const std::size_t n = std::max<std::size_t>(x + 1, hit_in.size() * 2);
    for (auto& v : cnt) v.resize(n, 0);
    hit_in.resize(n, 0);
    hit_outs.resize(n, 0);
  }

  bool check_new(std::uint8_t set, ArgumentId x) {
    const std::vector<ArgumentId>& att = cache.attackers(x);
    auto attacker_in = [&](std::uint8_t s) {
      for (ArgumentId a : att)
        if (in_range(a) && a < cnt[s].size() && cnt[s][a] > 0) return true;
      return false;
    };
    switch (set) {
      case kIn:
        if (!in_range(x)) return true;
        if (attacker_in(kIn) || hit_in[x] > 0 || cnt[kOut][x] > 0) return false;
        if (co && (hit_outs[x] > 0 || attacker_in(kOutS))) return false;
        return true;
      case kOut: return !(in_range(x) && cnt[kIn][x] > 0);
      case kInS: return cnt[kOutS][x] == 0;
      case kOutS:
        if (cnt[kInS][x] > 0) return false;
        if (!in_range(x)) return true;
        return !(attacker_in(kIn) || hit_in[x] > 0);
    }
    return true;
  }

  bool add(std::uint8_t set, ArgumentId x) {
    grow(x);
    trail.push_back({false, set, x});
    if (cnt[set][x]++ > 0) return true;
    const std::vector<ArgumentId> att = cache.attackers(x);
    for (ArgumentId a : att) grow(a);
    if (set == kIn) {
      in_list.push_back(x);
      if (in_range(x))
        for (ArgumentId a : att) ++hit_in[a];
    } else if (set == kOutS && co && in_range(x)) {
      for (ArgumentId a : att) ++hit_outs[a];
    }
    if (collecting) fresh.push_back(x);
    return check_new(set, x);
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      const TrailOp op = trail.back();
      trail.pop_back();
      if (op.implied) {
        implied[op.a] = -1;
        continue;
      }
      if (--cnt[op.set][op.a] > 0) continue;
      const std::vector<ArgumentId>& att = cache.attackers(op.a);
      if (op.set == kIn) {
        in_list.pop_back();
        if (in_range(op.a))
          for (ArgumentId a : att) --hit_in[a];
      } else if (op.set == kOutS && co && in_range(op.a)) {
        for (ArgumentId a : att) --hit_outs[a];
      }
    }
  }

  bool apply(const LabelOption& o) {
    for (const auto& c : o.adds)
      if (!add(c.set, c.arg)) return false;
    return true;
  }

  void enqueue(std::uint32_t l) {
    if (l < next_open || implied[l] >= 0 || queued[l]) return;
    queued[l] = 1;
    queue.push_back(l);
  }

  void enqueue_list(const std::vector<std::vector<std::uint32_t>>& w, ArgumentId x) {
    if (x < w.size())
      for (std::uint32_t l : w[x]) enqueue(l);
  }

  void trigger(ArgumentId m) {
    enqueue_list(watch_direct, m);
    enqueue_list(watch_att, m);
    const std::vector<ArgumentId> att = cache.attackers(m);
    for (ArgumentId c : att) enqueue_list(watch_direct, c);
  }

  bool propagate() {
    bool ok = true;
    while (ok) {
      while (!fresh.empty()) {
        const ArgumentId m = fresh.back();
        fresh.pop_back();
        trigger(m);
      }
      if (queue.empty()) break;
      const std::uint32_t l = queue.back();
      queue.pop_back();
      queued[l] = 0;
      if (implied[l] >= 0) continue;
      collecting = false;
      int viable = 0, last = -1;
      for (std::size_t i = 0; i < levels[l].size() && viable < 2; ++i) {
        const std::size_t mark = trail.size();
        if (apply(levels[l][i])) {
          ++viable;
          last = static_cast<int>(i);
        }
        undo(mark);
      }
      if (viable == 0) {
        ok = false;
      } else if (viable == 1) {
        trail.push_back({true, 0, l});
        implied[l] = last;
        collecting = true;
        ok = apply(levels[l][last]);
      }
    }
    collecting = false;
    if (!ok) {
      for (std::uint32_t l : queue) queued[l] = 0;
      queue.clear();
      fresh.clear();
    }
    return ok;
  }

  // false: stop the whole search
  bool dfs(std::size_t pos) {
    if (pos == depth) {
      ++stats.frontier;
      return (*visit)(code, in_list);
    }
    if (implied[pos] >= 0) {
      code.push_back(levels[pos][implied[pos]].label);
      const bool r = dfs(pos + 1);
      code.pop_back();
      return r;
    }
    const auto& opts_here = levels[pos];
    std::vector<std::size_t> order(opts_here.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (hint && pos < hint->size()) {
      auto it = std::find_if(order.begin(), order.end(),
                             [&](std::size_t i) { return opts_here[i].label == (*hint)[pos]; });
      if (it != order.end()) std::rotate(order.begin(), it, it + 1);
    }
    for (std::size_t i : order) {
      if (++stats.nodes > opts.node_budget) {
        budget_hit = true;
        return false;
      }
      const std::size_t mark = trail.size();
      const std::size_t saved_open = next_open;
      next_open = pos + 1;
      collecting = opts.propagate;
      bool ok = apply(opts_here[i]);
      collecting = false;
      if (ok && opts.propagate) ok = propagate();
      else fresh.clear();
      bool r = true;
      if (ok) {
        code.push_back(opts_here[i].label);
        r = dfs(pos + 1);
        code.pop_back();
      }
      undo(mark);
      next_open = saved_open;
      if (!r) return false;
    }
    return true;
  }

  SearchStatus run(const Visitor& v, const CodeString* h) {
    visit = &v;
    hint = h;
    for (auto& c : cnt) c.assign(c.size(), 0);
    std::fill(hit_in.begin(), hit_in.end(), 0);
    std::fill(hit_outs.begin(), hit_outs.end(), 0);
    in_list.clear();
    trail.clear();
    implied.assign(depth, -1);
    queued.assign(depth, 0);
    queue.clear();
    fresh.clear();
    code.clear();
    stats = {};
    budget_hit = false;
    next_open = 0;

    bool ok = true;
    for (ArgumentId x : spec.D) ok = add(kIn, x) && ok;
    for (ArgumentId x : spec.E) ok = add(kOut, x) && ok;
    if (ok && opts.propagate) {
      for (std::uint32_t l = 0; l < depth; ++l) enqueue(l);
      ok = propagate();
    }
    bool finished = true;
    if (ok) finished = dfs(0);
    undo(0);
    if (budget_hit) return SearchStatus::budget_exhausted;
    return finished ? SearchStatus::complete : SearchStatus::stopped;
  }
};

TreeSearch::TreeSearch(const TreeSpec& spec, AttackCache& cache, std::size_t depth, SearchOptions opts)
    : impl_(std::make_unique<Impl>(spec, cache, depth, opts)) {}

TreeSearch::~TreeSearch() = default;

SearchStatus TreeSearch::run(const Visitor& visit, const CodeString* hint) { return impl_->run(visit, hint); }

const SearchStats& TreeSearch::stats() const { return impl_->stats; }

bool alive_at_depth(const TreeSpec& spec, std::size_t d, SearchOptions opts) {
  AttackCache cache(spec.af);
  TreeSearch search(spec, cache, d, opts);
  bool found = false;
  const auto status = search.run([&](const CodeString&, const std::vector<ArgumentId>&) {
    found = true;
    return false;
  });
  if (found) return true;
  if (status == SearchStatus::budget_exhausted)
    throw ResourceError("tree search budget exhausted at depth " + std::to_string(d));
  return false;
}

std::size_t forced_depth(const FiniteAF& af, TreeKind kind) {
  switch (kind) {
    case TreeKind::ad:
    case TreeKind::co: return 2 * (af.size() + af.attacks().size());
    case TreeKind::stb: return af.size();
    case TreeKind::inf_na: break;
  }
  throw InputError("the inf-na tree has no forced depth");
}

std::vector<Extension> extensions_via_tree(const FiniteAF& af, TreeKind kind, const Extension& D,
                                           const Extension& E, SearchOptions opts) {
  const TreeSpec spec = TreeSpec::make(af, kind, D, E);
  AttackCache cache(spec.af);
  TreeSearch search(spec, cache, forced_depth(af, kind), opts);
  std::set<Extension> found;
  const auto status = search.run([&](const CodeString&, const std::vector<ArgumentId>& in) {
    found.insert(normalize(in));
    return true;
  });
  if (status == SearchStatus::budget_exhausted) throw ResourceError("tree search budget exhausted");
  std::vector<Extension> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), bitmask_less);
  return out;
}

}  // namespace finarg
