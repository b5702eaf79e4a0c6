// ncinv: batch front end for invariant generators, rewriting and certificates.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "ncinv/error.hpp"
#include "ncinv/io.hpp"

using namespace ncinv;

namespace {

struct Options {
  std::string family;
  std::string group_json;
  std::string rep_json;
  std::string rep_kind = "auto";
  std::vector<std::string> exprs;
  std::string expr_file;
  std::string mode = "auto";
  std::string constraint;
  std::string q_json;
  std::string point_json;
  std::string vars;
  std::size_t size = 2;
  std::uint64_t seed = 1;
  bool strict = false;
  bool json = false;
  std::string out;
};

// One verification line: what was checked and the verdict.
struct Check {
  std::string what;
  std::string verdict;
};

struct Report {
  Json data = Json::object();
  std::vector<std::string> text;
  std::vector<Check> checks;

  void line(const std::string& s) { text.push_back(s); }
  void check(const std::string& what, Verdict v) { checks.push_back({what, verdict_name(v)}); }
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::vector<std::string> element_names(const FiniteGroup& g, const Subgroup& h) {
  std::vector<std::string> out;
  for (int a : h) out.push_back(g.name(a));
  return out;
}

GroupPtr load_group(const Options& o) {
  if (!o.group_json.empty()) return std::make_shared<FiniteGroup>(group_from_json(read_json(o.group_json)));
  if (!o.family.empty()) {
    FiniteGroup g = make_group(o.family);
    if (g.label().empty()) g.set_label(o.family);
    return std::make_shared<FiniteGroup>(std::move(g));
  }
  throw FormatError("give --family or --group-json");
}

Representation load_rep(const Options& o) {
  if (!o.rep_json.empty()) return representation_from_json(read_json(o.rep_json));
  const std::size_t degree = o.vars.empty() ? 1 : std::stoul(o.vars);
  return named_representation(load_group(o), o.rep_kind, degree);
}

std::vector<std::string> load_exprs(const Options& o) {
  std::vector<std::string> out = o.exprs;
  if (!o.expr_file.empty()) {
    std::istringstream in(read_text(o.expr_file));
    for (std::string line; std::getline(in, line);)
      if (line.find_first_not_of(" \t\r") != std::string::npos && line[0] != '#') out.push_back(line);
  }
  if (out.empty()) throw FormatError("give --expr or --expr-file");
  return out;
}

// --vars N or --vars a,b,c; otherwise the smallest standard alphabet that parses.
Alphabet pick_alphabet(const Options& o, const std::vector<std::string>& texts) {
  if (!o.vars.empty()) {
    if (o.vars.find_first_not_of("0123456789") == std::string::npos) return Alphabet::standard(std::stoul(o.vars));
    std::vector<std::string> names;
    std::stringstream ss(o.vars);
    for (std::string n; std::getline(ss, n, ',');) names.push_back(n);
    return Alphabet(names);
  }
  for (std::size_t d = 1; d <= 3; ++d) {
    Alphabet a = Alphabet::standard(d);
    try {
      for (const auto& t : texts) parse_expr(t, a);
      return a;
    } catch (const UnknownSymbol&) {
    }
  }
  return Alphabet::standard(3);
}

// Derived symbols used by the expressions, innermost first.
std::vector<SymbolPtr> definitions(const std::vector<Expr>& roots) {
  std::vector<SymbolPtr> out;
  std::set<const Symbol*> seen;
  std::set<const Node*> visited;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (!visited.insert(e.get()).second) return;
    if (e->kind == Kind::Var && e->sym->binding) {
      if (seen.count(e->sym.get())) return;
      walk(e->sym->binding);
      seen.insert(e->sym.get());
      out.push_back(e->sym);
      return;
    }
    for (const auto& k : e->kids) walk(k);
  };
  for (const auto& r : roots) walk(r);
  return out;
}

void show_definitions(const std::vector<Expr>& roots, Report& rep, Json& target) {
  const auto defs = definitions(roots);
  if (defs.empty()) return;
  rep.line("where");
  Json j = Json::array();
  for (const auto& s : defs) {
    rep.line("  " + s->name + " = " + to_string(s->binding));
    j.push_back({{"name", s->name}, {"expr", to_string(s->binding)}});
  }
  target["definitions"] = j;
}

bool verdict_ok(const std::string& v, bool strict) {
  return v == "EqualProven" || (!strict && v == "EqualProbable");
}

Verdict worst(Verdict a, Verdict b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

// -- subcommands ----------------------------------------------------------------

void cmd_group_info(const Options& o, Report& rep) {
  GroupPtr gp = load_group(o);
  const FiniteGroup& g = *gp;
  rep.data["order"] = g.order();
  rep.line("order " + std::to_string(g.order()) + (g.label().empty() ? "" : " (" + g.label() + ")"));

  const CharacterTable t = character_table(g);
  Json classes = Json::array();
  rep.line("conjugacy classes");
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    const auto names = element_names(g, t.classes[c]);
    classes.push_back(names);
    rep.line("  C" + std::to_string(c + 1) + " = {" + join(names, ", ") + "}");
  }
  rep.data["classes"] = classes;
  Json table = Json::array();
  rep.line("character table");
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<std::string> vals;
    for (const auto& v : t.rows[i]) vals.push_back(v.str());
    table.push_back(vals);
    rep.line("  chi" + std::to_string(i + 1) + ": " + join(vals, " | "));
  }
  rep.data["character_table"] = table;

  Json abel = Json::array();
  rep.line("normal abelian subgroups");
  for (const auto& n : normal_abelian_subgroups(g)) {
    const auto names = element_names(g, n);
    abel.push_back(names);
    rep.line("  {" + join(names, ", ") + "}");
  }
  rep.data["normal_abelian_subgroups"] = abel;

  const DerivedSeries ds = derived_series(g);
  std::vector<int> orders;
  for (const auto& s : ds.chain) orders.push_back(static_cast<int>(s.size()));
  rep.data["derived_series"] = orders;
  rep.data["solvable"] = ds.solvable;
  std::vector<std::string> os;
  for (int k : orders) os.push_back(std::to_string(k));
  rep.line("derived series orders " + join(os, " > ") + (ds.solvable ? " (solvable)" : " (not solvable)"));

  const UnramifiedCertificate cert = is_totally_unramified(g);
  rep.data["totally_unramified"] = cert.ok;
  Json chain = Json::array();
  for (const auto& st : cert.chain) chain.push_back({{"order", st.order}, {"N", st.n_names}});
  rep.data["unramified_chain"] = chain;
  rep.line(cert.ok ? "verdict: totally unramified" : "verdict: not totally unramified");
  for (const auto& st : cert.chain)
    rep.line("  order " + std::to_string(st.order) + " over N = {" + join(st.n_names, ", ") + "}");
  if (!cert.ok) {
    Json fails = Json::array();
    for (const auto& [n, why] : cert.failures) {
      fails.push_back({{"N", element_names(g, n)}, {"reason", why}});
      rep.line("  fails over {" + join(element_names(g, n), ", ") + "}: " + why);
    }
    rep.data["failures"] = fails;
  }
}

void cmd_invariants(const Options& o, Report& rep, const Budget& budget) {
  const Representation rho = load_rep(o);
  Alphabet a = Alphabet::standard(rho.degree);
  std::string mode = o.mode;
  if (mode == "auto") mode = rho.group->is_abelian() ? "schreier" : "complete";
  InvariantBasis ib;
  if (mode == "schreier") ib = abelian_generators(rho, a, AbelianMode::Schreier);
  else if (mode == "monomial") ib = abelian_generators(rho, a, AbelianMode::Monomial);
  else if (mode == "complete") ib = complete_generators(rho, a);
  else throw FormatError("unknown --mode '" + mode + "'");

  rep.line(std::to_string(ib.generators.size()) + " generators (" + mode + ", expected " +
           std::to_string(ib.expected) + ")");
  for (const auto& gen : ib.generators) rep.line("  " + gen.name + " = " + to_string(gen.expr));
  std::size_t points = 0;
  for (std::size_t i = 0; i < ib.symbols.size(); ++i) {
    const Expr self = expand(var(ib.symbols[i]));
    Verdict v = Verdict::EqualProven;
    for (int g = 0; g < rho.group->order(); ++g) {
      const EqualityResult r = nc_equal(act_element(rho, g, self, a), self, budget);
      points = std::max(points, r.points_checked);
      v = worst(v, r.verdict);
    }
    rep.check(ib.generators[i].name + " is invariant", v);
  }
  rep.data = invariant_basis_to_json(ib, {mode, points, budget.seed});
  rep.data["expected"] = ib.expected;
  std::vector<Expr> roots;
  for (const auto& gen : ib.generators) roots.push_back(gen.expr);
  show_definitions(roots, rep, rep.data);
}

void cmd_rewrite(const Options& o, Report& rep, const Budget& budget) {
  const Representation rho = load_rep(o);
  Alphabet a = Alphabet::standard(rho.degree);
  const auto texts = load_exprs(o);
  Json results = Json::array();
  for (const auto& text : texts) {
    const Expr e = parse_expr(text, a);
    const RewriteResult r = solvable_rewrite(e, rho, a, budget);
    rep.line("rewrite of " + to_string(e));
    for (const auto& gen : r.generators) rep.line("  " + gen.name + " = " + to_string(gen.expr));
    Json defs = Json::object();
    std::vector<Expr> roots;
    for (const auto& gen : r.generators) roots.push_back(gen.expr);
    show_definitions(roots, rep, defs);
    rep.line("  realization of size " + std::to_string(r.realization.size()) + " over " +
             std::to_string(r.realization.pencil.syms.size()) + " invariant symbols");
    for (const auto& t : r.trace) rep.line("  " + t);
    const EqualityResult eq = nc_equal(e, expand(realization_to_expr(r.realization)), budget);
    rep.check("rewrite of " + text, eq.verdict);
    Json gens = Json::array();
    for (const auto& gen : r.generators) gens.push_back({{"name", gen.name}, {"expr", to_string(gen.expr)}});
    results.push_back({{"expr", to_string(e)},
                       {"generators", gens},
                       {"definitions", defs.value("definitions", Json::array())},
                       {"realization", realization_to_json(r.realization)},
                       {"trace", r.trace},
                       {"points_checked", r.points_checked}});
  }
  rep.data["rewrites"] = results;
}

void cmd_certify(const Options& o, Report& rep, const Budget& budget) {
  const Representation rho = load_rep(o);
  Alphabet a = Alphabet::standard(rho.degree);
  ConstraintMatrix q;
  if (!o.q_json.empty()) q = make_constraint(o.q_json, expr_matrix_from_json(read_json(o.q_json), a), a);
  else q = named_constraint(o.constraint.empty() ? "entire" : o.constraint, a);
  const CertificateTransform t = build_R(rho, a, true, budget.seed);
  const ConstraintMatrix qg = build_QG(q, t, a);

  rep.line("R_G (rows " + [&] {
    std::vector<std::string> n;
    for (int g : t.order) n.push_back(rho.group->name(g));
    return join(n, ", ");
  }() + ")");
  for (const auto& row : t.r) {
    std::vector<std::string> s;
    for (const auto& e : row) s.push_back(to_string(expand(e)));
    rep.line("  [" + join(s, " | ") + "]");
  }
  rep.line("Q_G for " + q.label);
  for (const auto& row : qg.q) {
    std::vector<std::string> s;
    for (const auto& e : row) s.push_back(to_string(e));
    rep.line("  [" + join(s, " | ") + "]");
  }

  std::vector<std::string> verdicts;
  std::size_t points = 0;
  for (std::size_t i = 0; i < qg.q.size(); ++i)
    for (std::size_t j = 0; j < qg.q.size(); ++j) {
      Verdict v = Verdict::EqualProven;
      for (int g = 0; g < rho.group->order(); ++g) {
        const EqualityResult r = nc_equal(act_element(rho, g, qg.q[i][j], a), qg.q[i][j], budget);
        points = std::max(points, r.points_checked);
        v = worst(v, r.verdict);
      }
      rep.check("QG[" + std::to_string(i) + "][" + std::to_string(j) + "] is invariant", v);
      verdicts.push_back(verdict_name(v));
    }
  rep.data = certificate_to_json(t, qg, points, budget.seed, verdicts);
}

void cmd_equal(const Options& o, Report& rep, const Budget& budget) {
  const auto texts = load_exprs(o);
  if (texts.size() != 2) throw FormatError("equal takes exactly two expressions");
  const Alphabet a = pick_alphabet(o, texts);
  const Expr e1 = parse_expr(texts[0], a), e2 = parse_expr(texts[1], a);
  const EqualityResult r = nc_equal(e1, e2, budget);
  rep.line(to_string(e1) + "  vs  " + to_string(e2));
  rep.line("realization sizes " + std::to_string(r.size1) + " and " + std::to_string(r.size2));
  rep.data["sizes"] = {r.size1, r.size2};
  if (!r.center.empty()) {
    std::vector<std::string> c;
    for (const auto& v : r.center) c.push_back(v.str());
    rep.line("scalar center (" + join(c, ", ") + ")");
    rep.data["center"] = c;
  }
  if (r.verdict == Verdict::EqualProbable) {
    rep.line("agrees at " + std::to_string(r.points_checked) + " random points");
    rep.data["points_checked"] = r.points_checked;
  }
  if (r.witness) {
    rep.line("differs at the point in the JSON report");
    rep.data["witness"] = point_to_json(*r.witness);
  }
  rep.data["verdict"] = verdict_name(r.verdict);
  rep.check("equal", r.verdict);
}

void cmd_eval(const Options& o, Report& rep, const Budget& budget) {
  const auto texts = load_exprs(o);
  const Alphabet a = pick_alphabet(o, texts);
  Point pt;
  if (!o.point_json.empty()) {
    pt = point_from_json(read_json(o.point_json));
  } else {
    std::mt19937_64 rng(budget.seed);
    pt = random_point(rng, a.base(), o.size);
  }
  rep.data["point"] = point_to_json(pt);
  Json values = Json::array();
  for (const auto& text : texts) {
    const Expr e = parse_expr(text, a);
    const CMatrix v = eval_expr(e, pt);
    values.push_back({{"expr", to_string(e)}, {"value", matrix_to_json(v)}});
    rep.line(to_string(e) + " =");
    for (std::size_t i = 0; i < v.rows(); ++i) {
      std::vector<std::string> row;
      for (std::size_t j = 0; j < v.cols(); ++j) row.push_back(v(i, j).str());
      rep.line("  [" + join(row, ", ") + "]");
    }
  }
  rep.data["values"] = values;
}

void write_atomically(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << body;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant noncommutative rational functions under finite solvable groups"};
  app.require_subcommand(1);
  Options o;
  auto group_flags = [&](CLI::App* c) {
    c->add_option("--family", o.family, "built-in group, e.g. S4, D5, Z3xZ3, SL23");
    c->add_option("--group-json", o.group_json, "group file {order, mul, names} or {family}");
  };
  auto rep_flags = [&](CLI::App* c) {
    group_flags(c);
    c->add_option("--rep-json", o.rep_json, "representation file {group, degree, images}");
    c->add_option("--rep", o.rep_kind, "perm, regular, diagonal (cyclic groups) or trivial")
        ->check(CLI::IsMember({"auto", "perm", "regular", "diagonal", "trivial"}));
  };
  auto expr_flags = [&](CLI::App* c) {
    c->add_option("--expr", o.exprs, "expression (repeatable)");
    c->add_option("--expr-file", o.expr_file, "one expression per line");
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "seed for every random choice");
    c->add_flag("--strict", o.strict, "accept only EqualProven verdicts");
    c->add_flag("--json", o.json, "print the JSON report instead of text");
    c->add_option("--out", o.out, "write the JSON report to this file");
    c->add_option("--vars", o.vars, "number of letters or comma separated names");
  };

  auto* group = app.add_subcommand("group", "group commands");
  group->require_subcommand(1);
  auto* info = group->add_subcommand("info", "classes, characters, subgroups, unramified chain");
  group_flags(info);
  common(info);
  auto* inv = app.add_subcommand("invariants", "free generators of the invariant skew field");
  rep_flags(inv);
  inv->add_option("--mode", o.mode, "schreier, monomial (abelian groups) or complete")
      ->check(CLI::IsMember({"auto", "schreier", "monomial", "complete"}));
  common(inv);
  auto* rw = app.add_subcommand("rewrite", "realize an invariant expression over invariant generators");
  rep_flags(rw);
  expr_flags(rw);
  common(rw);
  auto* cert = app.add_subcommand("certify", "invariant certificate matrices R_G and Q_G");
  rep_flags(cert);
  cert->add_option("--constraint", o.constraint, "entire, disk, disk-lmi, bidisk, orthant or ball");
  cert->add_option("--q-json", o.q_json, "constraint matrix of expression strings");
  common(cert);
  auto* eq = app.add_subcommand("equal", "decide equality of two expressions");
  expr_flags(eq);
  common(eq);
  auto* ev = app.add_subcommand("eval", "evaluate expressions at a matrix point");
  expr_flags(ev);
  ev->add_option("--point-json", o.point_json, "point {symbol: matrix}");
  ev->add_option("--size", o.size, "size of the random point");
  common(ev);

  CLI11_PARSE(app, argc, argv);

  // the echo leaves out the destination so reports compare byte for byte
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--out") ++i;
    else if (a.rfind("--out=", 0) != 0) args.push_back(a);
  }
  Report rep;
  try {
    Budget base;
    base.seed = o.seed;
    const Budget budget = Budget::from_env(base);
    if (info->parsed()) cmd_group_info(o, rep);
    else if (inv->parsed()) cmd_invariants(o, rep, budget);
    else if (rw->parsed()) cmd_rewrite(o, rep, budget);
    else if (cert->parsed()) cmd_certify(o, rep, budget);
    else if (eq->parsed()) cmd_equal(o, rep, budget);
    else cmd_eval(o, rep, budget);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  bool ok = true;
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    ok = ok && verdict_ok(c.verdict, o.strict);
    checks.push_back({{"check", c.what}, {"verdict", c.verdict}});
  }
  Json report;
  report["command"] = join(args, " ");
  report["seed"] = o.seed;
  report["strict"] = o.strict;
  report["result"] = rep.data;
  report["checks"] = checks;
  report["ok"] = ok;
  const std::string body = report.dump(2) + "\n";

  if (!o.out.empty()) write_atomically(o.out, body);
  if (o.json) {
    std::cout << body;
  } else {
    for (const auto& l : rep.text) std::cout << l << "\n";
    if (!rep.checks.empty()) {
      std::cout << "checks\n";
      for (const auto& c : rep.checks)
        std::cout << "  " << (verdict_ok(c.verdict, o.strict) ? "ok   " : "FAIL ") << c.verdict << "  " << c.what << "\n";
    }
    std::cout << "seed " << o.seed << "\n";
  }
  return ok ? 0 : 1;
}
