#include "ncinv/representation.hpp"

#include <map>
#include <memory>

#include "ncinv/error.hpp"

namespace ncinv {

void Representation::check() const {
  const FiniteGroup& g = *group;
  if (images.size() != static_cast<std::size_t>(g.order())) throw DimensionMismatch("one image per element required");
  for (const auto& m : images)
    if (m.rows() != degree || m.cols() != degree) throw DimensionMismatch("image of the wrong size");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (images[a] * images[b] != images[g.op(a, b)]) throw NotAGroup("images do not form a homomorphism");
}

ClassFunction Representation::character() const {
  ClassFunction f;
  for (const auto& m : images) f.push_back(m.trace());
  return f;
}

bool Representation::is_faithful() const {
  for (int a = 0; a < group->order(); ++a)
    if (a != group->id() && images[a].is_identity()) return false;
  return true;
}

Representation trivial_representation(GroupPtr g, std::size_t degree) {
  Representation r{g, degree, std::vector<CMatrix>(g->order(), CMatrix::identity(degree))};
  return r;
}

Representation left_regular(GroupPtr g) {
  const int n = g->order();
  Representation r{g, static_cast<std::size_t>(n), {}};
  for (int a = 0; a < n; ++a) {
    CMatrix m(n, n);
    for (int h = 0; h < n; ++h) m(g->op(a, h), h) = 1;
    r.images.push_back(std::move(m));
  }
  return r;
}

Representation natural_permutation(GroupPtr g) {
  if (g->perms().empty()) throw NotFaithful("group carries no permutation action");
  const std::size_t d = g->perms()[0].size();
  Representation r{g, d, {}};
  for (const auto& p : g->perms()) {
    CMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(p[i], i) = 1;
    r.images.push_back(std::move(m));
  }
  return r;
}

Representation linear_character(GroupPtr g, const ClassFunction& chi) {
  Representation r{g, 1, {}};
  for (const auto& v : chi) r.images.push_back(CMatrix::scalar(1, v));
  return r;
}

Representation tensor(const Representation& a, const Representation& b) {
  Representation r{a.group, a.degree * b.degree, {}};
  for (std::size_t i = 0; i < a.images.size(); ++i) r.images.push_back(kron(a.images[i], b.images[i]));
  return r;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  Representation r{a.group, a.degree + b.degree, {}};
  for (std::size_t i = 0; i < a.images.size(); ++i) r.images.push_back(ncinv::direct_sum(a.images[i], b.images[i]));
  return r;
}

Representation restrict(const Representation& r, const Subgroup& h) {
  auto sub = subgroup_as_group(*r.group, h);
  Representation out{std::make_shared<FiniteGroup>(sub.group), r.degree, {}};
  for (int x : h) out.images.push_back(r.images[x]);
  return out;
}

Representation change_basis(const Representation& r, const CMatrix& p) {
  const CMatrix pinv = inverse(p);
  Representation out{r.group, r.degree, {}};
  for (const auto& m : r.images) out.images.push_back(pinv * m * p);
  return out;
}

Representation matrix_group(const std::vector<CMatrix>& gens, std::size_t max_order) {
  if (gens.empty()) throw DimensionMismatch("at least one generator required");
  const std::size_t d = gens[0].rows();
  for (const auto& m : gens)
    if (m.rows() != d || m.cols() != d) throw DimensionMismatch("generators must be square of equal size");
  std::vector<CMatrix> elems{CMatrix::identity(d)};
  std::vector<std::string> names{"e"};
  std::map<std::string, int> index{{elems[0].str(), 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      CMatrix x = elems[i] * gens[s];
      const std::string key = x.str();
      if (index.count(key)) continue;
      if (elems.size() >= max_order) throw NotFiniteOrder("generated group exceeds " + std::to_string(max_order) + " elements");
      index[key] = static_cast<int>(elems.size());
      const std::string g = "g" + std::to_string(s + 1);
      names.push_back(i == 0 ? g : names[i] + "*" + g);
      elems.push_back(std::move(x));
    }
  const std::size_t n = elems.size();
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i][j] = index.at((elems[i] * elems[j]).str());
  auto g = std::make_shared<FiniteGroup>(std::move(mul), std::move(names));
  return Representation{g, d, std::move(elems)};
}

TrivialComponent trivial_component(const Representation& r, const Subgroup& n) {
  const FiniteGroup& g = *r.group;
  TrivialComponent tc;
  tc.quotient = quotient(g, n);
  CMatrix stacked(0, r.degree);
  for (int x : n)
    if (x != g.id()) stacked = stacked.rows() ? vstack(stacked, r.images[x] - CMatrix::identity(r.degree))
                                              : r.images[x] - CMatrix::identity(r.degree);
  tc.basis = stacked.rows() ? kernel(stacked) : CMatrix::identity(r.degree);
  const std::size_t k = tc.basis.cols();
  auto qg = std::make_shared<FiniteGroup>(tc.quotient.group);
  tc.rep = Representation{qg, k, {}};
  for (int rep : tc.quotient.reps)
    tc.rep.images.push_back(k ? solve(tc.basis, r.images[rep] * tc.basis) : CMatrix(0, 0));
  return tc;
}

std::vector<int> multiplicities(const Representation& r, const CharacterTable& table) {
  const ClassFunction chi = r.character();
  std::vector<int> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Cyclotomic m = inner_product(*r.group, chi, table.character(i));
    if (!m.is_rational() || m.rational().get_den() != 1) throw Error("internal", "non-integral multiplicity");
    out.push_back(static_cast<int>(m.rational().get_num().get_si()));
  }
  return out;
}

std::vector<Isotypic> decompose(const Representation& r, const CharacterTable& table) {
  const auto mult = multiplicities(r, table);
  const FiniteGroup& g = *r.group;
  std::vector<Isotypic> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (mult[i] == 0) continue;
    const ClassFunction chi = table.character(i);
    CMatrix p(r.degree, r.degree);
    for (int a = 0; a < g.order(); ++a) p += chi[a].conj() * r.images[a];
    p *= Cyclotomic(table.degrees[i]) / Cyclotomic(g.order());
    out.push_back({i, mult[i], p, column_space(p)});
  }
  return out;
}

}  // namespace ncinv
