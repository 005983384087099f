#include "finarg/gadgets.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>

namespace finarg {

std::string to_string(const CodeString& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

bool comparable(const CodeString& x, const CodeString& y) {
  const std::size_t n = std::min(x.size(), y.size());
  return std::equal(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n), y.begin());
}

namespace {

// Cells (col, row) enumerated along diagonals col+row, col ascending, skipping
// cells that do not exist. Callers guarantee infinitely many cells exist.
struct Diagonal {
  std::function<bool(std::size_t, std::size_t)> exists;

  std::pair<std::size_t, std::size_t> decode(std::size_t m) const {
    std::size_t count = 0;
    for (std::size_t d = 0;; ++d)
      for (std::size_t c = 0; c <= d; ++c)
        if (exists(c, d - c)) {
          if (count == m) return {c, d - c};
          ++count;
        }
  }

  std::size_t encode(std::size_t col, std::size_t row) const {
    const std::size_t target = col + row;
    std::size_t count = 0;
    for (std::size_t d = 0; d < target; ++d)
      for (std::size_t c = 0; c <= d; ++c)
        if (exists(c, d - c)) ++count;
    for (std::size_t c = 0; c < col; ++c)
      if (exists(c, target - c)) ++count;
    return count;
  }
};

ArgumentId id(std::size_t x) { return static_cast<ArgumentId>(x); }

// Block k holds a_2k, a_2k+1 and, when k is a stage, b_k.
std::pair<char, std::size_t> fig1_role(const StageSet& stages, std::size_t m) {
  std::size_t start = 0;
  for (std::size_t k = 0;; ++k) {
    const std::size_t size = stages.contains(k) ? 3 : 2;
    if (m < start + size) {
      const std::size_t off = m - start;
      if (off == 2) return {'b', k};
      return {'a', 2 * k + off};
    }
    start += size;
  }
}

// Thread-safe memo for caller-supplied per-index stage sets.
class StageSetFamily {
 public:
  explicit StageSetFamily(std::function<StageSet(std::size_t)> fn) : fn_(std::move(fn)) {}
  StageSet at(std::size_t i) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(i);
    if (it == cache_.end()) it = cache_.emplace(i, fn_(i)).first;
    return it->second;
  }

 private:
  std::function<StageSet(std::size_t)> fn_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, StageSet> cache_;
};

}  // namespace

// ---------------------------------------------------------------- fig1

Fig1Gadget::Fig1Gadget(StageSet stages)
    : stages_(stages),
      af_(
          [stages](ArgumentId m) {
            const auto [kind, k] = fig1_role(stages, m);
            if (kind == 'b') return std::vector<ArgumentId>{m};
            // a_k is attacked by a_{k+1}, and by b_{k/2} when that exists.
            std::vector<ArgumentId> out;
            const std::size_t block = k / 2;
            const bool has_b = stages.contains(block);
            const std::size_t start = m - k % 2;
            if (k % 2 == 0)
              out.push_back(id(start + 1));
            else
              out.push_back(id(start + (has_b ? 3 : 2)));
            if (has_b) out.push_back(id(start + 2));
            return out;
          },
          "fig1(" + stages.description() + ")", std::nullopt,
          [stages](ArgumentId m) {
            const auto [kind, k] = fig1_role(stages, m);
            return std::string(1, kind) + std::to_string(k);
          }) {}

std::size_t Fig1Gadget::block_start(std::size_t k) const {
  std::size_t start = 0;
  for (std::size_t i = 0; i < k; ++i) start += stages_.contains(i) ? 3 : 2;
  return start;
}

ArgumentId Fig1Gadget::a(std::size_t k) const { return id(block_start(k / 2) + k % 2); }

std::optional<ArgumentId> Fig1Gadget::b(std::size_t k) const {
  if (!stages_.contains(k)) return std::nullopt;
  return id(block_start(k) + 2);
}

std::pair<char, std::size_t> Fig1Gadget::role(ArgumentId m) const {
  return fig1_role(stages_, m);
}

std::string Fig1Gadget::construction_name(ArgumentId m) const {
  const auto [kind, k] = role(m);
  return std::string(1, kind) + std::to_string(k);
}

// ---------------------------------------------------------------- stars

struct StarsGadget::Layout {
  StageSet count;
  Diagonal diag;
  bool star_exists(std::size_t t) const { return t == 0 || count.contains(t - 1); }
};

StarsGadget::StarsGadget(StageSet count)
    : layout_([&] {
        auto l = std::make_shared<Layout>();
        l->count = count;
        Layout* raw = l.get();
        l->diag.exists = [raw](std::size_t t, std::size_t) { return raw->star_exists(t); };
        return std::shared_ptr<const Layout>(l);
      }()),
      af_(
          [l = layout_](ArgumentId m) {
            const auto [t, p] = l->diag.decode(m);
            if (p == 0) return std::vector<ArgumentId>{};
            return std::vector<ArgumentId>{id(l->diag.encode(t, 0))};
          },
          "stars(" + count.description() + ")", std::nullopt,
          [l = layout_](ArgumentId m) {
            const auto [t, p] = l->diag.decode(m);
            if (p == 0) return "c" + std::to_string(t);
            return "l" + std::to_string(t) + "_" + std::to_string(p);
          }) {}

StarsGadget StarsGadget::with_stars(std::size_t k) {
  if (k == 0) throw InputError("a stars gadget has at least one star");
  return StarsGadget(StageSet::below(k - 1));
}

bool StarsGadget::star_exists(std::size_t t) const { return layout_->star_exists(t); }

ArgumentId StarsGadget::center(std::size_t t) const {
  if (!star_exists(t)) throw InputError("star " + std::to_string(t) + " does not exist");
  return id(layout_->diag.encode(t, 0));
}

ArgumentId StarsGadget::leaf(std::size_t t, std::size_t p) const {
  if (!star_exists(t) || p == 0) throw InputError("no such leaf");
  return id(layout_->diag.encode(t, p));
}

std::pair<std::size_t, std::size_t> StarsGadget::cell(ArgumentId m) const {
  return layout_->diag.decode(m);
}

std::string StarsGadget::construction_name(ArgumentId m) const {
  const auto [t, p] = cell(m);
  if (p == 0) return "center(" + std::to_string(t) + ")";
  return "leaf(" + std::to_string(t) + "," + std::to_string(p) + ")";
}

// ---------------------------------------------------------------- fig2

struct Fig2Gadget::Layout {
  explicit Layout(CardFn fn) : card(std::move(fn)) {}
  StageSetFamily card;
  Diagonal diag;

  StageSet column(std::size_t i) const {
    StageSet s = card.at(i);
    if (!s.contains(0))
      throw InputError("fig2: card(" + std::to_string(i) + ") must contain stage 0");
    return s;
  }
  bool exists(std::size_t i, std::size_t m) const { return i == 0 || column(i).contains(m); }
  std::size_t rank(std::size_t i, std::size_t m) const {
    const StageSet s = column(i);
    std::size_t r = 0;
    for (std::size_t x = 0; x < m; ++x) r += s.contains(x);
    return r;
  }
};

Fig2Gadget::Fig2Gadget(CardFn card)
    : layout_([&] {
        auto l = std::make_shared<Layout>(std::move(card));
        Layout* raw = l.get();
        l->diag.exists = [raw](std::size_t i, std::size_t m) { return raw->exists(i, m); };
        return std::shared_ptr<const Layout>(l);
      }()),
      af_(
          [l = layout_](ArgumentId x) {
            const auto [i, m] = l->diag.decode(x);
            std::vector<ArgumentId> out;
            if (i == 0) {
              const std::size_t p = m;
              if (p > 0) out.push_back(id(l->diag.encode(0, p - 1)));
              if (p % 2 == 1) out.push_back(x);
              if (p >= 2 && p % 2 == 0) out.push_back(id(l->diag.encode(p / 2, 0)));
              return out;
            }
            const std::size_t j = l->rank(i, m);
            if (j == 0) {
              out.push_back(id(l->diag.encode(0, 2 * i)));
              out.push_back(id(l->diag.encode(0, 2 * i - 1)));
            } else {
              const StageSet s = l->column(i);
              std::size_t prev = m - 1;
              while (!s.contains(prev)) --prev;
              out.push_back(id(l->diag.encode(i, prev)));
            }
            if (j % 2 == 1) out.push_back(x);
            return out;
          },
          "fig2", std::nullopt,
          [l = layout_](ArgumentId x) {
            const auto [i, m] = l->diag.decode(x);
            if (i == 0) return "a" + std::to_string(m);
            return "d" + std::to_string(i) + "_" + std::to_string(l->rank(i, m));
          }) {}

ArgumentId Fig2Gadget::a(std::size_t p) const { return id(layout_->diag.encode(0, p)); }

std::optional<ArgumentId> Fig2Gadget::d(std::size_t i, std::size_t j,
                                        std::size_t search_limit) const {
  if (i == 0) throw InputError("fig2 columns of d-arguments start at 1");
  const StageSet s = layout_->column(i);
  std::size_t seen = 0;
  for (std::size_t m = 0; m <= search_limit; ++m) {
    if (!s.contains(m)) continue;
    if (seen == j) return id(layout_->diag.encode(i, m));
    ++seen;
  }
  return std::nullopt;
}

Fig2Gadget::Role Fig2Gadget::role(ArgumentId x) const {
  const auto [i, m] = layout_->diag.decode(x);
  if (i == 0) return {true, 0, m};
  return {false, i, layout_->rank(i, m)};
}

std::string Fig2Gadget::construction_name(ArgumentId x) const {
  const Role r = role(x);
  if (r.is_a) return "a_" + std::to_string(r.j);
  return "d^" + std::to_string(r.i) + "_" + std::to_string(r.j);
}

// ---------------------------------------------------------------- chain_w

struct ChainGadget::Layout {
  EnumerationSchedule w;
  Diagonal diag;
  bool exists(std::size_t n, std::size_t m) const {
    if (m == 0) return true;
    return !w.enumerated_by(n, (m + 1) / 2);
  }
};

ChainGadget::ChainGadget(EnumerationSchedule w)
    : layout_([&] {
        auto l = std::make_shared<Layout>();
        l->w = std::move(w);
        Layout* raw = l.get();
        l->diag.exists = [raw](std::size_t n, std::size_t m) { return raw->exists(n, m); };
        return std::shared_ptr<const Layout>(l);
      }()),
      af_(
          [l = layout_](ArgumentId x) {
            const auto [n, m] = l->diag.decode(x);
            if (!l->exists(n, m + 1)) return std::vector<ArgumentId>{};
            return std::vector<ArgumentId>{id(l->diag.encode(n, m + 1))};
          },
          "chain(" + layout_->w.description() + ")", std::nullopt,
          [l = layout_](ArgumentId x) {
            const auto [n, m] = l->diag.decode(x);
            return "a" + std::to_string(n) + "_" + std::to_string(m);
          }) {}

std::optional<ArgumentId> ChainGadget::arg(std::size_t n, std::size_t m) const {
  if (!layout_->exists(n, m)) return std::nullopt;
  return id(layout_->diag.encode(n, m));
}

std::pair<std::size_t, std::size_t> ChainGadget::cell(ArgumentId x) const {
  return layout_->diag.decode(x);
}

std::string ChainGadget::construction_name(ArgumentId x) const {
  const auto [n, m] = cell(x);
  return "a_{" + std::to_string(n) + "," + std::to_string(m) + "}";
}

// ---------------------------------------------------------------- unistb

UniStbGadget::UniStbGadget(ExpFn exp)
    : af_(
          [fam = std::make_shared<StageSetFamily>(std::move(exp))](ArgumentId x) {
            const std::size_t m = x / 2;
            std::vector<ArgumentId> out;
            out.push_back(x % 2 == 0 ? b(m) : a(m));
            for (std::size_t i = 0; i < m; ++i)
              if (!fam->at(i).contains(m - i)) out.push_back(a(i));
            return out;
          },
          "unistb", std::nullopt,
          [](ArgumentId x) {
            return (x % 2 == 0 ? "a" : "b") + std::to_string(x / 2);
          }) {}

std::string UniStbGadget::construction_name(ArgumentId x) const {
  return (x % 2 == 0 ? "a_" : "b_") + std::to_string(x / 2);
}

// ---------------------------------------------------------------- tree_cf

struct TreeCfGadget::Walk {
  Membership member;
  std::uint32_t branching;
  mutable std::mutex mu;
  mutable std::vector<CodeString> order;
  mutable std::deque<CodeString> queue;
  mutable bool started = false;

  // Members of the tree never have member children of non-members; probing
  // one level below each rejected child catches violations lazily.
  void probe_closed(const CodeString& outside) const {
    CodeString child = outside;
    child.push_back(0);
    for (std::uint32_t c = 0; c < branching; ++c) {
      child.back() = c;
      if (member(child))
        throw InputError("tree_cf: " + to_string(child) + " is a member but " +
                         to_string(outside) + " is not");
    }
  }

  CodeString at(std::size_t i) const {
    std::lock_guard<std::mutex> lock(mu);
    if (!started) {
      started = true;
      if (!member({})) throw InputError("tree_cf: the empty string must be a member");
      queue.push_back({});
    }
    while (order.size() <= i) {
      if (queue.empty())
        throw InputError("tree_cf: the tree is finite (" + std::to_string(order.size()) +
                         " nodes); an infinite tree is required");
      CodeString u = std::move(queue.front());
      queue.pop_front();
      for (std::uint32_t c = 0; c < branching; ++c) {
        CodeString v = u;
        v.push_back(c);
        if (member(v))
          queue.push_back(std::move(v));
        else
          probe_closed(v);
      }
      order.push_back(std::move(u));
    }
    return order[i];
  }
};

TreeCfGadget::TreeCfGadget(Membership tree, std::uint32_t branching)
    : walk_([&] {
        if (branching == 0) throw InputError("tree_cf: branching bound must be positive");
        auto w = std::make_shared<Walk>();
        w->member = std::move(tree);
        w->branching = branching;
        return std::shared_ptr<const Walk>(w);
      }()),
      af_(
          [w = walk_](ArgumentId j) {
            const CodeString fj = w->at(j);
            std::vector<ArgumentId> out;
            for (ArgumentId i = 0; i < j; ++i)
              if (!comparable(w->at(i), fj)) out.push_back(i);
            return out;
          },
          "tree_cf") {}

CodeString TreeCfGadget::node(ArgumentId i) const { return walk_->at(i); }

std::string TreeCfGadget::construction_name(ArgumentId m) const {
  return "f(" + std::to_string(m) + ")=" + to_string(node(m));
}

}  // namespace finarg
