#include "ncinv/io.hpp"

#include <memory>

#include "ncinv/error.hpp"

namespace ncinv {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Cyclotomic scalar_from_json(const Json& j) {
  if (j.is_string()) return Cyclotomic::parse(j.get<std::string>());
  if (j.is_number_integer()) return Cyclotomic(j.get<long>());
  throw FormatError("matrix entries must be cyclotomic literal strings or integers");
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw FormatError("matrix row must be an array");
    std::vector<Cyclotomic> row;
    for (const auto& e : r) row.push_back(scalar_from_json(e));
    if (!rows.empty() && row.size() != rows[0].size()) throw FormatError("matrix rows differ in length");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return CMatrix();
  return CMatrix::from_rows(rows);
}

Json group_to_json(const FiniteGroup& g) {
  Json out;
  if (!g.label().empty()) out["label"] = g.label();
  out["order"] = g.order();
  out["mul"] = g.table();
  out["names"] = g.names();
  return out;
}

FiniteGroup group_from_json(const Json& j) {
  if (j.is_string()) return make_group(j.get<std::string>());
  if (j.contains("family")) return make_group(field(j, "family").get<std::string>());
  const int order = field(j, "order").get<int>();
  auto mul = field(j, "mul").get<std::vector<std::vector<int>>>();
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  if (static_cast<int>(mul.size()) != order) throw FormatError("'order' differs from the table size");
  return FiniteGroup(std::move(mul), std::move(names), j.value("label", std::string()));
}

Json representation_to_json(const Representation& r) {
  Json out;
  out["group"] = group_to_json(*r.group);
  out["degree"] = r.degree;
  Json images = Json::object();
  for (int g = 0; g < r.group->order(); ++g) images[r.group->name(g)] = matrix_to_json(r(g));
  out["images"] = std::move(images);
  return out;
}

Representation representation_from_json(const Json& j) {
  auto g = std::make_shared<FiniteGroup>(group_from_json(field(j, "group")));
  Representation r{g, field(j, "degree").get<std::size_t>(), {}};
  const Json& images = field(j, "images");
  if (!images.is_object()) throw FormatError("'images' must map element names to matrices");
  r.images.resize(g->order());
  std::vector<bool> seen(g->order(), false);
  for (const auto& [name, m] : images.items()) {
    const int a = g->index_of(name);
    r.images[a] = matrix_from_json(m);
    if (r.images[a].rows() != r.degree || r.images[a].cols() != r.degree)
      throw FormatError("image of '" + name + "' has the wrong size");
    seen[a] = true;
  }
  for (int a = 0; a < g->order(); ++a)
    if (!seen[a]) throw FormatError("no image for '" + g->name(a) + "'");
  try {
    r.check();
  } catch (const NotAGroup& e) {
    throw FormatError(std::string("images are not a representation: ") + e.what());
  }
  return r;
}

Representation named_representation(GroupPtr g, const std::string& kind, std::size_t degree) {
  if (kind == "perm" || (kind == "auto" && !g->perms().empty())) return natural_permutation(g);
  if (kind == "regular" || kind == "auto") return left_regular(g);
  if (kind == "trivial") return trivial_representation(g, degree);
  if (kind != "diagonal") throw FormatError("unknown representation kind '" + kind + "'");
  int gen = -1;
  for (int a = 0; a < g->order() && gen < 0; ++a)
    if (g->element_order(a) == g->order()) gen = a;
  if (gen < 0) throw FormatError("the diagonal representation needs a cyclic group");
  Representation r{g, 2, std::vector<CMatrix>(g->order())};
  for (int k = 0; k < g->order(); ++k) {
    CMatrix m(2, 2);
    m(0, 0) = Cyclotomic::root_of_unity(g->order(), k);
    m(1, 1) = m(0, 0).conj();
    r.images[g->pow(gen, k)] = m;
  }
  return r;
}

Json realization_to_json(const Realization& r) {
  Json out;
  out["n"] = r.size();
  out["c"] = matrix_to_json(r.c);
  out["b"] = matrix_to_json(r.b);
  out["A0"] = matrix_to_json(r.pencil.a0);
  Json coeffs = Json::object();
  for (std::size_t i = 0; i < r.pencil.syms.size(); ++i)
    coeffs[r.pencil.syms[i]->name] = matrix_to_json(r.pencil.coeffs[i]);
  out["coeffs"] = std::move(coeffs);
  return out;
}

Realization realization_from_json(const Json& j, const Alphabet& alphabet) {
  Realization r;
  const std::size_t n = field(j, "n").get<std::size_t>();
  r.c = matrix_from_json(field(j, "c"));
  r.b = matrix_from_json(field(j, "b"));
  r.pencil.n = n;
  r.pencil.a0 = matrix_from_json(field(j, "A0"));
  for (const auto& [name, m] : field(j, "coeffs").items()) {
    const SymbolPtr s = alphabet.lookup(name);
    if (!s) throw UnknownSymbol("unknown symbol '" + name + "'");
    r.pencil.syms.push_back(s);
    r.pencil.coeffs.push_back(matrix_from_json(m));
  }
  auto square = [n](const CMatrix& m) { return m.rows() == n && m.cols() == n; };
  if (r.c.rows() != n || r.c.cols() != 1 || r.b.rows() != n || r.b.cols() != 1 || !square(r.pencil.a0))
    throw DimensionMismatch("realization blocks do not match n");
  for (const auto& m : r.pencil.coeffs)
    if (!square(m)) throw DimensionMismatch("pencil coefficient does not match n");
  return r;
}

Json invariant_basis_to_json(const InvariantBasis& ib, const Verification& v) {
  Json out;
  out["group"] = ib.group->label().empty() ? Json(group_to_json(*ib.group)) : Json(ib.group->label());
  out["rep"] = representation_to_json(ib.rep)["images"];
  Json gens = Json::array();
  for (const auto& g : ib.generators) {
    Json e;
    e["name"] = g.name;
    e["expr"] = to_string(g.expr);
    e["character"] = g.character;
    e["provenance"] = g.provenance;
    gens.push_back(std::move(e));
  }
  out["generators"] = std::move(gens);
  out["count"] = ib.generators.size();
  out["verified"] = {{"mode", v.mode}, {"points", v.points}, {"seed", v.seed}};
  return out;
}

Json expr_matrix_to_json(const ExprMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    out.push_back(std::move(r));
  }
  return out;
}

ExprMatrix expr_matrix_from_json(const Json& j, const Alphabet& alphabet) {
  if (!j.is_array()) throw FormatError("expression matrix must be an array of rows");
  ExprMatrix out;
  for (const auto& r : j) {
    if (!r.is_array()) throw FormatError("expression matrix row must be an array");
    std::vector<Expr> row;
    for (const auto& e : r) {
      if (!e.is_string()) throw FormatError("expression matrix entries must be strings");
      row.push_back(parse_expr(e.get<std::string>(), alphabet));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Json certificate_to_json(const CertificateTransform& t, const ConstraintMatrix& qg, std::size_t points,
                         std::uint64_t seed, const std::vector<std::string>& verdicts) {
  Json out;
  out["group"] = t.group->label().empty() ? Json(group_to_json(*t.group)) : Json(t.group->label());
  Json order = Json::array();
  for (int g : t.order) order.push_back(t.group->name(g));
  out["rows"] = std::move(order);
  ExprMatrix r = t.r;
  for (auto& row : r)
    for (auto& e : row) e = expand(e);
  out["R"] = expr_matrix_to_json(r);
  out["QG"] = expr_matrix_to_json(qg.q);
  out["verification"] = {{"points", points}, {"seed", seed}, {"verdicts", verdicts}};
  return out;
}

Json point_to_json(const Point& p) {
  Json out = Json::object();
  for (const auto& [name, m] : p) out[name] = matrix_to_json(m);
  return out;
}

Point point_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("point must map symbol names to matrices");
  Point p;
  std::size_t size = 0;
  for (const auto& [name, m] : j.items()) {
    CMatrix v = matrix_from_json(m);
    if (!v.is_square() || (size && v.rows() != size)) throw DimensionMismatch("point matrices must be square of one size");
    size = v.rows();
    p[name] = std::move(v);
  }
  return p;
}

}  // namespace ncinv
