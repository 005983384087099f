#include "finarg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "finarg/gadgets.hpp"
#include "finarg/oracle.hpp"
#include "finarg/stage_set.hpp"
#include "finarg/trees.hpp"

namespace finarg {

using nlohmann::json;

namespace {

using Params = std::map<std::string, std::string>;

std::string param(const Params& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InputError("malformed " + what + " '" + text + "'");
  }
}

// Per-column literal with numbered overrides: key=<lit>, key<i>=<lit>.
std::function<StageSet(std::size_t)> column_sets(const Params& p, const std::string& key,
                                                 const std::string& fallback) {
  auto base = std::make_shared<StageSet>(StageSet::parse(param(p, key, fallback)));
  auto overrides = std::make_shared<std::map<std::size_t, StageSet>>();
  for (const auto& [k, v] : p) {
    if (k.size() <= key.size() || k.compare(0, key.size(), key) != 0) continue;
    const std::string idx = k.substr(key.size());
    if (!std::all_of(idx.begin(), idx.end(), ::isdigit)) continue;
    overrides->emplace(parse_count(idx, "column index"), StageSet::parse(v));
  }
  return [base, overrides](std::size_t i) {
    auto it = overrides->find(i);
    return it == overrides->end() ? *base : it->second;
  };
}

TreeCfGadget::Membership builtin_tree(const std::string& name) {
  if (name == "spine")
    return [](const CodeString& s) { return std::all_of(s.begin(), s.end(), [](auto v) { return v == 0; }); };
  if (name == "two_spines")
    return [](const CodeString& s) {
      return s.empty() || (s[0] < 2 && std::all_of(s.begin(), s.end(), [&](auto v) { return v == s[0]; }));
    };
  if (name == "binary")
    return [](const CodeString& s) { return std::all_of(s.begin(), s.end(), [](auto v) { return v < 2; }); };
  if (name == "comb")
    return [](const CodeString& s) {
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0 && !(s[i] == 1 && i + 1 == s.size())) return false;
      return true;
    };
  throw InputError("unknown tree '" + name + "' (spine, two_spines, binary, comb)");
}

Params sub_params(const Params& p, const std::string& prefix) {
  Params out;
  for (const auto& [k, v] : p)
    if (k.compare(0, prefix.size(), prefix) == 0) out.emplace(k.substr(prefix.size()), v);
  return out;
}

std::string join_names(const FinitaryAF& af, const Extension& e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + af.name(e[i]);
  return s + "}";
}

}  // namespace

GadgetInstance make_gadget(const std::string& id, const Params& p, std::optional<std::uint64_t> seed) {
  if (id == "fig1") {
    auto g = std::make_shared<Fig1Gadget>(StageSet::parse(param(p, "stages", "none")));
    return {id, g->af(), [g](ArgumentId m) { return g->construction_name(m); }};
  }
  if (id == "stars") {
    auto g = p.count("stars") ? std::make_shared<StarsGadget>(StarsGadget::with_stars(parse_count(p.at("stars"), "star count")))
                              : std::make_shared<StarsGadget>(StageSet::parse(param(p, "count", "all")));
    return {id, g->af(), [g](ArgumentId m) { return g->construction_name(m); }};
  }
  if (id == "fig2") {
    auto g = std::make_shared<Fig2Gadget>(column_sets(p, "card", "0"));
    return {id, g->af(), [g](ArgumentId m) { return g->construction_name(m); }};
  }
  if (id == "chain_w" || id == "chain") {
    auto g = std::make_shared<ChainGadget>(EnumerationSchedule::parse(param(p, "w", "none")));
    return {"chain_w", g->af(), [g](ArgumentId m) { return g->construction_name(m); }};
  }
  if (id == "unistb") {
    auto g = std::make_shared<UniStbGadget>(column_sets(p, "exp", "none"));
    return {id, g->af(), [g](ArgumentId m) { return g->construction_name(m); }};
  }
  if (id == "tree_cf") {
    const auto branching = static_cast<std::uint32_t>(parse_count(param(p, "branching", "2"), "branching"));
    auto g = std::make_shared<TreeCfGadget>(builtin_tree(param(p, "tree", "spine")), branching);
    return {id, g->af(), [g](ArgumentId m) { return g->construction_name(m); }};
  }
  if (id == "union" || id == "disjoint_union") {
    const GadgetInstance l = make_gadget(param(p, "left", "stars"), sub_params(p, "left."), seed);
    const GadgetInstance r = make_gadget(param(p, "right", "stars"), sub_params(p, "right."), seed);
    return {"union", disjoint_union(l.af, r.af), [l, r](ArgumentId m) {
              return m % 2 == 0 ? "L." + l.construction_name(m / 2) : "R." + r.construction_name(m / 2);
            }};
  }
  if (id == "random") {
    const std::size_t n = parse_count(param(p, "n", "8"), "argument count");
    const std::size_t density = parse_count(param(p, "density", "30"), "density");
    std::mt19937_64 rng(seed.value_or(1));
    std::vector<Attack> att;
    for (ArgumentId i = 0; i < n; ++i)
      for (ArgumentId j = 0; j < n; ++j)
        if (rng() % 100 < density) att.push_back({i, j});
    const FinitaryAF af = FinitaryAF::from_finite(FiniteAF(n, std::move(att)), "random");
    return {id, af, [af](ArgumentId m) { return af.name(m); }};
  }
  throw InputError("unknown gadget '" + id + "' (fig1, stars, fig2, chain_w, unistb, tree_cf, union, random)");
}

std::string gadget_apx(const GadgetInstance& g, std::size_t n) {
  const FiniteAF t = truncate(g.af, n);
  ApxDocument doc{t, {}};
  std::vector<std::string> comments{"gadget " + g.id + " (" + g.af.description() + ")",
                                    "first " + std::to_string(t.size()) + " arguments"};
  for (ArgumentId i = 0; i < t.size(); ++i) {
    doc.names.push_back(g.af.name(i));
    comments.push_back(g.construction_name(i) + " = " + doc.names.back());
  }
  return emit_apx(doc, comments);
}

json verdict_json(const Verdict& v) {
  return {{"stage", v.stage}, {"answer", to_string(v.answer)}, {"class", to_string(v.cls)}, {"evidence", v.evidence}};
}

json solve_report(const ApxDocument& doc, Semantics sigma, const DecisionProblem& p, AnytimeOptions opts) {
  p.validate();
  json j;
  j["semantics"] = std::string(to_string(sigma));
  j["problem"] = std::string(to_string(p.kind));
  j["argument"] = p.argument ? json(doc.names.at(*p.argument)) : json(nullptr);
  const auto named = [&](const Extension& e) {
    json a = json::array();
    for (ArgumentId x : e) a.push_back(doc.names[x]);
    return a;
  };
  const OracleOptions oracle;
  if (!is_infinite(sigma) && doc.af.size() <= oracle.max_args) {
    j["answer"] = decide_finite(doc.af, p, sigma, oracle);
    json exts = json::array();
    for (const auto& e : enumerate(doc.af, sigma, oracle)) exts.push_back(named(e));
    j["extensions"] = exts;
    return j;
  }
  auto names = std::make_shared<std::vector<std::string>>(doc.names);
  auto fin = std::make_shared<FiniteAF>(doc.af);
  const FinitaryAF faf([fin](ArgumentId m) { return fin->attackers_of(m); }, "apx", fin->size(),
                       [names](ArgumentId m) { return (*names)[m]; });
  AnytimeProcess proc = make_process(faf, p, sigma, opts);
  proc.run(exact_stage(faf, sigma).value_or(0));
  const Verdict v = *proc.last();
  if (v.answer == Answer::unknown)
    j["answer"] = "unknown";
  else
    j["answer"] = v.answer == Answer::accept;
  // inf-* semantics have no extensions on a finite framework
  j["extensions"] = is_infinite(sigma) ? json::array() : json(nullptr);
  return j;
}

namespace {

struct Common {
  std::string semantics = "ad";
  std::string problem = "exists";
  std::string arg;
  std::string format = "text";
  std::size_t budget = default_node_budget();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> params;
};

Params parse_params(const std::vector<std::string>& raw) {
  Params out;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("parameter '" + kv + "' is not key=value");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

Semantics semantics_of(const std::string& tag) {
  auto s = parse_semantics(tag);
  if (!s) throw InputError("unknown semantics '" + tag + "'");
  return *s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Name lookup in a gadget: display name, construction name, or #index.
ArgumentId resolve(const GadgetInstance& g, const std::string& name) {
  if (!name.empty() && name[0] == '#') return static_cast<ArgumentId>(parse_count(name.substr(1), "index"));
  for (ArgumentId m = 0; m < 200'000 && g.af.exists(m); ++m)
    if (g.af.name(m) == name || g.construction_name(m) == name) return m;
  throw InputError("no argument named '" + name + "' among the first 200000");
}

DecisionProblem problem_of(const std::string& tag, std::optional<ArgumentId> arg) {
  auto k = parse_problem(tag);
  if (!k) throw InputError("unknown problem '" + tag + "'");
  DecisionProblem p{*k, std::nullopt};
  if (*k == Problem::cred || *k == Problem::skep) {
    if (!arg) throw InputError(tag + " needs --arg");
    p.argument = arg;
  }
  return p;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

int cmd_solve(const std::string& file, const Common& c, std::ostream& out) {
  const ApxDocument doc = parse_apx(read_file(file));
  const Semantics sigma = semantics_of(c.semantics);
  std::optional<ArgumentId> arg;
  if (!c.arg.empty()) arg = doc.index_of(c.arg);
  const DecisionProblem p = problem_of(c.problem, arg);
  AnytimeOptions opts;
  opts.node_budget = c.budget;
  const json j = solve_report(doc, sigma, p, opts);
  const bool unknown = j["answer"].is_string();
  if (c.format == "json") {
    out << j.dump() << "\n";
  } else if (c.format == "csv") {
    out << "semantics,problem,argument,answer,extensions\n";
    std::string exts;
    if (j["extensions"].is_array())
      for (const auto& e : j["extensions"]) {
        std::string s = "{";
        for (std::size_t i = 0; i < e.size(); ++i) s += (i ? " " : "") + e[i].get<std::string>();
        exts += (exts.empty() ? "" : ";") + s + "}";
      }
    out << j["semantics"].get<std::string>() << "," << j["problem"].get<std::string>() << ","
        << (arg ? csv_field(c.arg) : "") << "," << (unknown ? "unknown" : (j["answer"].get<bool>() ? "true" : "false"))
        << "," << csv_field(exts) << "\n";
  } else {
    out << "answer: " << (unknown ? "unknown" : (j["answer"].get<bool>() ? "true" : "false")) << "\n";
    if (j["extensions"].is_array()) {
      out << "extensions (" << j["extensions"].size() << "):\n";
      for (const auto& e : j["extensions"]) {
        std::string s = "  {";
        for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + e[i].get<std::string>();
        out << s << "}\n";
      }
    }
  }
  return unknown ? kExitUnknown : kExitAnswered;
}

int cmd_trace(const std::string& id, const std::string& file, const Common& c, std::size_t stages,
              const std::string& expect, std::ostream& out) {
  std::optional<GadgetInstance> g;
  if (!file.empty()) {
    const ApxDocument doc = parse_apx(read_file(file));
    auto names = std::make_shared<std::vector<std::string>>(doc.names);
    auto fin = std::make_shared<FiniteAF>(doc.af);
    FinitaryAF faf([fin](ArgumentId m) { return fin->attackers_of(m); }, file, fin->size(),
                   [names](ArgumentId m) { return (*names)[m]; });
    g = GadgetInstance{"file", faf, [names](ArgumentId m) { return (*names)[m]; }};
  } else {
    if (id.empty()) throw InputError("trace needs a gadget id or --file");
    g = make_gadget(id, parse_params(c.params), c.seed);
  }
  if (stages < 1) throw InputError("--stages must be at least 1");
  if (!expect.empty() && expect != "accept" && expect != "reject") throw InputError("--expect is accept or reject");
  std::optional<ArgumentId> arg;
  if (!c.arg.empty()) arg = resolve(*g, c.arg);
  AnytimeOptions opts;
  opts.node_budget = c.budget;
  AnytimeProcess proc = make_process(g->af, problem_of(c.problem, arg), semantics_of(c.semantics), opts);
  if (c.format == "csv") out << "stage,answer,class,evidence\n";
  Verdict last;
  for (std::size_t s = 0; s <= stages; ++s) {
    last = proc.advance();
    if (c.format == "json")
      out << verdict_json(last).dump() << "\n";
    else if (c.format == "csv")
      out << last.stage << "," << to_string(last.answer) << "," << to_string(last.cls) << "," << csv_field(last.evidence)
          << "\n";
    else
      out << "stage " << last.stage << ": " << to_string(last.answer) << " [" << to_string(last.cls) << "] "
          << last.evidence << "\n";
  }
  const std::string matched =
      expect.empty() ? "n/a" : (std::string(to_string(last.answer)) == expect ? "yes" : "no");
  if (c.format == "json") {
    json f{{"final", to_string(last.answer)}, {"stage", last.stage}, {"class", to_string(last.cls)},
           {"expected", expect.empty() ? json(nullptr) : json(expect)},
           {"matched", expect.empty() ? json(nullptr) : json(matched == "yes")}};
    out << f.dump() << "\n";
  } else if (c.format == "csv") {
    out << "final," << to_string(last.answer) << "," << last.stage << "," << matched << "\n";
  } else {
    out << "final: " << to_string(last.answer) << " at stage " << last.stage << " (expected "
        << (expect.empty() ? "-" : expect) << ", matched " << matched << ")\n";
  }
  return last.answer == Answer::unknown ? kExitUnknown : kExitAnswered;
}

Extension name_list(const std::string& text, const std::function<ArgumentId(const std::string&)>& look) {
  Extension out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(look(item));
  return normalize(out);
}

int cmd_tree(const std::string& file, const std::string& id, const Common& c, const std::string& kind_tag,
             std::size_t depth, std::size_t max_depth, const std::string& d_list, const std::string& e_list,
             std::optional<std::uint32_t> cap, std::ostream& out) {
  if (depth > max_depth)
    throw InputError("depth " + std::to_string(depth) + " exceeds the maximum " + std::to_string(max_depth));
  auto kind = parse_tree_kind(kind_tag);
  if (!kind) throw InputError("unknown tree kind '" + kind_tag + "' (ad, stb, co, inf-na)");
  std::optional<GadgetInstance> g;
  std::function<ArgumentId(const std::string&)> look;
  std::optional<std::size_t> horizon;
  if (!file.empty()) {
    auto doc = std::make_shared<ApxDocument>(parse_apx(read_file(file)));
    auto fin = std::make_shared<FiniteAF>(doc->af);
    FinitaryAF faf([fin](ArgumentId m) { return fin->attackers_of(m); }, file, fin->size(),
                   [doc](ArgumentId m) { return doc->names[m]; });
    g = GadgetInstance{"file", faf, [doc](ArgumentId m) { return doc->names[m]; }};
    look = [doc](const std::string& n) { return doc->index_of(n); };
  } else {
    if (id.empty()) throw InputError("tree needs an APX file or --gadget");
    g = make_gadget(id, parse_params(c.params), c.seed);
    look = [&](const std::string& n) { return resolve(*g, n); };
    horizon = depth;
  }
  const TreeSpec spec = TreeSpec::make(g->af, *kind, name_list(d_list, look), name_list(e_list, look), horizon, cap);

  struct Node {
    CodeString code;
    std::size_t parent;
  };
  std::vector<Node> nodes;
  std::function<void(const CodeString&, std::size_t)> walk = [&](const CodeString& s, std::size_t parent) {
    if (nodes.size() >= c.budget)
      throw ResourceError("node budget exhausted after " + std::to_string(nodes.size()) + " nodes");
    const std::size_t me = nodes.size();
    nodes.push_back({s, parent});
    if (s.size() < depth)
      for (const auto& ch : children(spec, s)) walk(ch, me);
  };
  walk({}, 0);
  std::size_t frontier = 0;
  for (const auto& n : nodes) frontier += n.code.size() == depth;

  auto annotate = [&](const CodeString& s, const std::string& sep) {
    const InOutSets st = ins_out_sets(spec, s);
    std::string a = "In=" + join_names(g->af, st.in) + sep + "Out=" + join_names(g->af, st.out);
    if (*kind == TreeKind::co)
      a += sep + "InS+=" + join_names(g->af, st.in_splus) + sep + "OutS+=" + join_names(g->af, st.out_splus);
    return a;
  };
  if (c.format == "dot") {
    out << "digraph tree {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out << "  n" << i << " [label=\"" << to_string(nodes[i].code) << "\\n" << annotate(nodes[i].code, "\\n")
          << "\"];\n";
    for (std::size_t i = 1; i < nodes.size(); ++i) out << "  n" << nodes[i].parent << " -> n" << i << ";\n";
    out << "}\n";
  } else {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out << std::string(2 * nodes[i].code.size(), ' ') << to_string(nodes[i].code) << "  "
          << annotate(nodes[i].code, " ") << "\n";
    out << "# nodes " << nodes.size() << ", frontier at depth " << depth << ": " << frontier << "\n";
  }
  return kExitAnswered;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"afsolve - argumentation framework solver", "afsolve"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub, bool with_problem) {
    if (with_problem) {
      sub->add_option("--semantics", c.semantics, "cf, na, ad, co, stb, inf-cf, inf-na, inf-ad, inf-co, inf-stb");
      sub->add_option("--problem", c.problem, "cred, skep, exists, ne, uni");
      sub->add_option("--arg", c.arg, "argument name for cred/skep");
    }
    sub->add_option("--budget", c.budget, "node budget (default from AFSOLVE_BUDGET)");
    sub->add_option("--seed", c.seed, "seed for the random gadget");
    sub->add_option("-p,--param", c.params, "gadget parameter key=value");
  };

  std::string file, id, expect, kind = "stb", d_list, e_list;
  std::size_t stages = 32, n_args = 16, depth = 3, max_depth = 64;
  std::optional<std::uint32_t> cap;

  auto* solve = app.add_subcommand("solve", "decide a problem on an APX file");
  solve->add_option("file", file, "APX file")->required();
  add_common(solve, true);
  solve->add_option("--format", c.format, "text, json, csv")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* gadget = app.add_subcommand("gadget", "emit a gadget truncation as APX");
  gadget->add_option("id", id, "fig1, stars, fig2, chain_w, unistb, tree_cf, union, random")->required();
  gadget->add_option("-n,--args", n_args, "number of arguments to emit");
  add_common(gadget, false);

  auto* trace = app.add_subcommand("trace", "print the anytime verdict stream");
  trace->add_option("id", id, "gadget id");
  trace->add_option("--file", file, "APX file instead of a gadget");
  trace->add_option("--stages", stages, "last stage");
  trace->add_option("--expect", expect, "accept or reject");
  add_common(trace, true);
  trace->add_option("--format", c.format, "text, json, csv")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* tree = app.add_subcommand("tree", "dump a tree encoding");
  tree->add_option("file", file, "APX file");
  tree->add_option("--gadget", id, "gadget id instead of a file");
  tree->add_option("--kind,--semantics", kind, "ad, stb, co, inf-na");
  tree->add_option("--depth", depth, "depth to expand");
  tree->add_option("--max-depth", max_depth, "refuse deeper dumps");
  tree->add_option("--D", d_list, "comma-separated required arguments");
  tree->add_option("--E", e_list, "comma-separated excluded arguments");
  tree->add_option("--cap", cap, "label cap (inf-na)");
  add_common(tree, false);
  tree->add_option("--format", c.format, "text, dot")->check(CLI::IsMember({"text", "dot"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitAnswered : kExitInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(file, c, out);
    if (gadget->parsed()) {
      out << gadget_apx(make_gadget(id, parse_params(c.params), c.seed), n_args);
      return kExitAnswered;
    }
    if (trace->parsed()) return cmd_trace(id, file, c, stages, expect, out);
    if (tree->parsed()) return cmd_tree(file, id, c, kind, depth, max_depth, d_list, e_list, cap, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ResourceError& e) {
    err << "unknown: " << e.what() << "\n";
    return kExitUnknown;
  }
  return kExitInputError;
}

}  // namespace finarg
