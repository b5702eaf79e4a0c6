// Python module: the main operations, exchanging JSON text with the wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <random>

#include "ncinv/error.hpp"
#include "ncinv/io.hpp"

namespace py = pybind11;
using namespace ncinv;

namespace {

Representation rep_from(const std::string& text) {
  const Json j = Json::parse(text);
  if (j.contains("images")) return representation_from_json(j);
  auto g = std::make_shared<FiniteGroup>(group_from_json(j.at("group")));
  if (g->label().empty() && j.at("group").is_string()) g->set_label(j.at("group").get<std::string>());
  return named_representation(g, j.value("kind", std::string("auto")), j.value("degree", std::size_t{1}));
}

Alphabet alphabet_from(const std::vector<std::string>& names, std::size_t degree) {
  return names.empty() ? Alphabet::standard(degree) : Alphabet(names);
}

Budget budget_with(std::uint64_t seed) {
  Budget b;
  b.seed = seed;
  return Budget::from_env(b);
}

std::string equal(const std::string& e1, const std::string& e2, const std::vector<std::string>& vars, std::uint64_t seed) {
  const Alphabet a = alphabet_from(vars, 2);
  const EqualityResult r = nc_equal(parse_expr(e1, a), parse_expr(e2, a), budget_with(seed));
  Json out;
  out["verdict"] = verdict_name(r.verdict);
  out["sizes"] = {r.size1, r.size2};
  std::vector<std::string> c;
  for (const auto& v : r.center) c.push_back(v.str());
  out["center"] = c;
  out["points_checked"] = r.points_checked;
  if (r.witness) out["witness"] = point_to_json(*r.witness);
  return out.dump();
}

std::string evaluate(const std::string& expr, const std::string& point, const std::vector<std::string>& vars) {
  const Point p = point_from_json(Json::parse(point));
  std::vector<std::string> names = vars;
  if (names.empty())
    for (const auto& [k, v] : p) names.push_back(k);
  const Alphabet a(names);
  return matrix_to_json(eval_expr(parse_expr(expr, a), p)).dump();
}

std::string group_info(const std::string& group) {
  const FiniteGroup g = group_from_json(Json::parse(group));
  Json out;
  out["order"] = g.order();
  const CharacterTable t = character_table(g);
  Json classes = Json::array(), table = Json::array(), abel = Json::array();
  for (const auto& c : t.classes) {
    std::vector<std::string> n;
    for (int x : c) n.push_back(g.name(x));
    classes.push_back(n);
  }
  for (const auto& row : t.rows) {
    std::vector<std::string> v;
    for (const auto& x : row) v.push_back(x.str());
    table.push_back(v);
  }
  for (const auto& n : normal_abelian_subgroups(g)) {
    std::vector<std::string> names;
    for (int x : n) names.push_back(g.name(x));
    abel.push_back(names);
  }
  out["classes"] = classes;
  out["character_table"] = table;
  out["normal_abelian_subgroups"] = abel;
  std::vector<std::size_t> orders;
  const DerivedSeries ds = derived_series(g);
  for (const auto& s : ds.chain) orders.push_back(s.size());
  out["derived_series"] = orders;
  out["solvable"] = ds.solvable;
  out["totally_unramified"] = is_totally_unramified(g).ok;
  return out.dump();
}

std::string invariants(const std::string& rep, const std::string& mode) {
  const Representation rho = rep_from(rep);
  Alphabet a = Alphabet::standard(rho.degree);
  InvariantBasis ib;
  std::string m = mode == "auto" ? (rho.group->is_abelian() ? "schreier" : "complete") : mode;
  if (m == "schreier") ib = abelian_generators(rho, a, AbelianMode::Schreier);
  else if (m == "monomial") ib = abelian_generators(rho, a, AbelianMode::Monomial);
  else if (m == "complete") ib = complete_generators(rho, a);
  else throw FormatError("unknown mode '" + mode + "'");
  Json out = invariant_basis_to_json(ib, {m, 0, 0});
  Json defs = Json::array();
  for (const auto& s : ib.symbols) defs.push_back({{"name", s->name}, {"base", to_string(expand(var(s)))}});
  out["expanded"] = defs;
  out["expected"] = ib.expected;
  return out.dump();
}

std::string rewrite(const std::string& expr, const std::string& rep, std::uint64_t seed) {
  const Representation rho = rep_from(rep);
  Alphabet a = Alphabet::standard(rho.degree);
  const Expr e = parse_expr(expr, a);
  const Budget budget = budget_with(seed);
  const RewriteResult r = solvable_rewrite(e, rho, a, budget);
  Json gens = Json::array();
  for (std::size_t i = 0; i < r.generators.size(); ++i)
    gens.push_back({{"name", r.generators[i].name}, {"base", to_string(expand(var(r.symbols[i])))}});
  Json out;
  out["generators"] = gens;
  out["realization"] = realization_to_json(r.realization);
  out["trace"] = r.trace;
  out["points_checked"] = r.points_checked;
  out["verdict"] = verdict_name(nc_equal(e, expand(realization_to_expr(r.realization)), budget).verdict);
  return out.dump();
}

std::string certify(const std::string& rep, const std::string& constraint, bool printed_twist) {
  const Representation rho = rep_from(rep);
  Alphabet a = Alphabet::standard(rho.degree);
  const ConstraintMatrix q = constraint.empty() || constraint[0] != '['
                                 ? named_constraint(constraint.empty() ? "entire" : constraint, a)
                                 : make_constraint("custom", expr_matrix_from_json(Json::parse(constraint), a), a);
  const CertificateTransform t = build_R(rho, a, printed_twist);
  return certificate_to_json(t, build_QG(q, t, a), 0, 1, {}).dump();
}

}  // namespace

PYBIND11_MODULE(_ncinv, m) {
  m.doc() = "Invariant noncommutative rational functions under finite solvable groups";
  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (e.kind() + "|" + e.what()).c_str());
    } catch (const nlohmann::json::exception& e) {
      py::set_error(error, (std::string("FormatError|") + e.what()).c_str());
    }
  });
  m.def("equal", &equal, py::arg("e1"), py::arg("e2"), py::arg("vars"), py::arg("seed"));
  m.def("evaluate", &evaluate, py::arg("expr"), py::arg("point"), py::arg("vars"));
  m.def("group_info", &group_info, py::arg("group"));
  m.def("invariants", &invariants, py::arg("rep"), py::arg("mode"));
  m.def("rewrite", &rewrite, py::arg("expr"), py::arg("rep"), py::arg("seed"));
  m.def("certify", &certify, py::arg("rep"), py::arg("constraint"), py::arg("printed_twist"));
}
