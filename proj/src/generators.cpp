#include <algorithm>
#include <map>
#include <memory>

#include "ncinv/error.hpp"
#include "ncinv/invariants.hpp"

namespace ncinv {

namespace {

std::string fresh_name(const Alphabet& a, const std::string& base) {
  if (!a.lookup(base)) return base;
  for (int k = 2;; ++k) {
    const std::string n = base + "'" + std::to_string(k);
    if (!a.lookup(n)) return n;
  }
}

Expr form_expr(const std::vector<Cyclotomic>& c, const std::vector<SymbolPtr>& syms) {
  std::vector<Expr> t;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) t.push_back(scale(c[i], var(syms[i])));
  return add(std::move(t));
}

std::vector<Cyclotomic> column_vec(const CMatrix& m, std::size_t j) {
  std::vector<Cyclotomic> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

CMatrix transpose_image(const Representation& r, int g) { return r.images[g].transpose(); }

// Dual index of the character n -> eigenvalue on the subgroup n.
int match_character(const DualGroup& d, const std::vector<Cyclotomic>& values) {
  for (int k = 0; k < d.order(); ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < values.size() && ok; ++i) ok = d.value(k, static_cast<int>(i)) == values[i];
    if (ok) return k;
  }
  throw Error("internal", "eigenvalues do not form a character");
}

struct Form {
  std::vector<Cyclotomic> coeff;
  int chr;
};

// Joint eigenvectors of sigma(n), n in the subgroup, inside span(basis).
std::vector<Form> eigenforms(const Representation& r, const Subgroup& n, const DualGroup& d, const CMatrix& basis) {
  std::vector<Form> out;
  if (basis.cols() == 0) return out;
  std::vector<CMatrix> restricted;
  for (int x : n) restricted.push_back(solve(basis, transpose_image(r, x) * basis));
  const Eigenbasis eb = simultaneous_eigenbasis(restricted, std::max(1, d.exponent()));
  const CMatrix vecs = basis * eb.basis;
  for (std::size_t c = 0; c < vecs.cols(); ++c) out.push_back({column_vec(vecs, c), match_character(d, eb.eigenvalues[c])});
  return out;
}

// A generator as a word in the level forms: -1 stands for b_tau = 1.
struct Mono {
  std::vector<int> factors;  // indices into the form list (b's first, then j's)
  std::string provenance;
};

struct Level {
  std::vector<Form> forms;  // b's (one per nontrivial dual element, in dual order), then j's
  std::vector<int> b_of;    // dual index -> form index, -1 for the trivial character
  std::size_t nb = 0;
};

std::vector<Mono> level_monomials(const Level& lv, const DualGroup& d) {
  std::vector<Mono> out;
  auto b = [&](int chi) { return lv.b_of[chi]; };
  auto push = [&](std::vector<int> f, std::string prov) {
    f.erase(std::remove(f.begin(), f.end(), -1), f.end());
    out.push_back({std::move(f), std::move(prov)});
  };
  const int nd = d.order();
  auto bname = [&](int chi) { return "b[" + d.name(chi) + "]"; };
  auto jname = [&](std::size_t i) { return "j" + std::to_string(i - lv.nb + 1); };
  // j alone (trivial j's)
  for (std::size_t i = lv.nb; i < lv.forms.size(); ++i)
    if (lv.forms[i].chr == d.trivial()) push({static_cast<int>(i)}, jname(i));
  // b_eta b_eta^-1
  for (int eta = 1; eta < nd; ++eta) push({b(eta), b(d.inv(eta))}, bname(eta) + " " + bname(d.inv(eta)));
  // b_chi j_i with chi eta_i = tau
  for (std::size_t i = lv.nb; i < lv.forms.size(); ++i) {
    const int eta = lv.forms[i].chr;
    if (eta != d.trivial()) push({b(d.inv(eta)), static_cast<int>(i)}, bname(d.inv(eta)) + " " + jname(i));
  }
  // j_i b_eta_i^-1
  for (std::size_t i = lv.nb; i < lv.forms.size(); ++i) {
    const int eta = lv.forms[i].chr;
    if (eta != d.trivial()) push({static_cast<int>(i), b(d.inv(eta))}, jname(i) + " " + bname(d.inv(eta)));
  }
  // b_chi j_i b_(chi eta_i)^-1 with chi and chi eta_i nontrivial
  for (int chi = 1; chi < nd; ++chi)
    for (std::size_t i = lv.nb; i < lv.forms.size(); ++i) {
      const int last = d.inv(d.mul(chi, lv.forms[i].chr));
      if (last == d.trivial()) continue;
      push({b(chi), static_cast<int>(i), b(last)}, bname(chi) + " " + jname(i) + " " + bname(last));
    }
  // b_chi b_eta b_(chi eta)^-1, all nontrivial
  for (int chi = 1; chi < nd; ++chi)
    for (int eta = 1; eta < nd; ++eta) {
      const int last = d.inv(d.mul(chi, eta));
      if (last == d.trivial()) continue;
      push({b(chi), b(eta), b(last)}, bname(chi) + " " + bname(eta) + " " + bname(last));
    }
  return out;
}

struct LevelOutput {
  std::vector<TaggedGenerator> gens;
  std::vector<SymbolPtr> syms;
  Representation derived;
};

// Builds the generators of one level and the induced action of G/N on them.
LevelOutput build_level(const Representation& r, const std::vector<SymbolPtr>& syms, const Subgroup& n,
                        const DualGroup& d, const Level& lv, Alphabet& alphabet, const std::string& prefix,
                        int depth) {
  const FiniteGroup& g = *r.group;
  const std::size_t dim = r.degree;
  const auto monos = level_monomials(lv, d);
  std::vector<Expr> fexpr;
  for (const auto& f : lv.forms) fexpr.push_back(form_expr(f.coeff, syms));
  LevelOutput out;
  std::map<std::vector<int>, int> index;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    std::vector<Expr> fs;
    for (int f : monos[k].factors) fs.push_back(fexpr[f]);
    TaggedGenerator tg{fresh_name(alphabet, prefix + std::to_string(k + 1)), mul(std::move(fs)), 0, monos[k].provenance,
                       depth};
    out.syms.push_back(alphabet.derive(tg.name, tg.expr));
    out.gens.push_back(std::move(tg));
    index[monos[k].factors] = static_cast<int>(k);
  }
  // form basis F and the quotient action
  CMatrix fmat(dim, lv.forms.size());
  for (std::size_t c = 0; c < lv.forms.size(); ++c)
    for (std::size_t i = 0; i < dim; ++i) fmat(i, c) = lv.forms[c].coeff[i];
  const CMatrix finv = inverse(fmat);
  const QuotientGroup q = quotient(g, n);
  auto qg = std::make_shared<FiniteGroup>(q.group);
  out.derived = Representation{qg, monos.size(), {}};
  for (int rep : q.reps) {
    const CMatrix img = finv * transpose_image(r, rep) * fmat;  // column c: image of form c in form coordinates
    CMatrix m(monos.size(), monos.size());
    for (std::size_t k = 0; k < monos.size(); ++k) {
      // expand the product of images
      std::map<std::vector<int>, Cyclotomic> acc{{{}, Cyclotomic(1)}};
      for (int f : monos[k].factors) {
        std::map<std::vector<int>, Cyclotomic> next;
        for (const auto& [w, c] : acc)
          for (std::size_t t = 0; t < lv.forms.size(); ++t) {
            if (img(t, f).is_zero()) continue;
            auto w2 = w;
            w2.push_back(static_cast<int>(t));
            next[w2] += c * img(t, f);
          }
        acc = std::move(next);
      }
      for (const auto& [w, c] : acc) {
        if (c.is_zero()) continue;
        auto it = index.find(w);
        if (it == index.end()) throw NotLinearAction("quotient action leaves the span of the generators");
        m(k, it->second) += c;
      }
    }
    out.derived.images.push_back(std::move(m));
  }
  out.derived.check();
  return out;
}

Level partition_abelian(const std::vector<Form>& forms, const DualGroup& d) {
  Level lv;
  lv.b_of.assign(d.order(), -1);
  std::vector<bool> used(forms.size(), false);
  for (int chi = 1; chi < d.order(); ++chi)
    for (std::size_t i = 0; i < forms.size(); ++i)
      if (!used[i] && forms[i].chr == chi) {
        used[i] = true;
        lv.b_of[chi] = static_cast<int>(lv.forms.size());
        lv.forms.push_back(forms[i]);
        break;
      }
  for (int chi = 1; chi < d.order(); ++chi)
    if (lv.b_of[chi] < 0) throw NotComplete("no linear form carries the character " + d.name(chi));
  lv.nb = lv.forms.size();
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (!used[i]) lv.forms.push_back(forms[i]);
  return lv;
}

// Irreducible sigma-subspace for row i of the table, and a sigma-stable complement of a subspace.
CMatrix irreducible_subspace(const Representation& r, const CharacterTable& t, std::size_t row, const Subgroup& n,
                             const DualGroup& d, int psi) {
  const FiniteGroup& g = *r.group;
  const ClassFunction chi = t.character(row);
  CMatrix p(r.degree, r.degree);
  for (int a = 0; a < g.order(); ++a) p += chi[a].conj() * r.images[a];
  p *= Cyclotomic(t.degrees[row]) / Cyclotomic(g.order());
  const CMatrix w = column_space(p.transpose());
  CMatrix stack(0, w.cols());
  for (std::size_t k = 0; k < n.size(); ++k) {
    const CMatrix m = transpose_image(r, n[k]) * w - d.value(psi, static_cast<int>(k)) * w;
    stack = stack.rows() ? vstack(stack, m) : m;
  }
  const CMatrix ker = kernel(stack);
  if (ker.cols() == 0) throw Error("internal", "character missing from its isotypic component");
  const CMatrix v = w * ker.col(0);
  CMatrix orbit = v;
  for (int a = 0; a < g.order(); ++a)
    if (a != g.id()) orbit = hstack(orbit, transpose_image(r, a) * v);
  CMatrix u = column_space(orbit);
  if (u.cols() != static_cast<std::size_t>(t.degrees[row])) throw Error("internal", "orbit span is not irreducible");
  return u;
}

CMatrix stable_complement(const Representation& r, const CMatrix& u) {
  const std::size_t dim = r.degree, k = u.cols();
  if (k == 0) return CMatrix::identity(dim);
  const RrefResult rr = rref(hstack(u, CMatrix::identity(dim)));
  CMatrix b = u;
  for (std::size_t pc : rr.pivots)
    if (pc >= k) b = hstack(b, CMatrix::unit_column(dim, pc - k));
  CMatrix dd(dim, dim);
  for (std::size_t i = 0; i < k; ++i) dd(i, i) = 1;
  const CMatrix e = b * dd * inverse(b);
  CMatrix avg(dim, dim);
  const FiniteGroup& g = *r.group;
  for (int a = 0; a < g.order(); ++a) avg += transpose_image(r, a) * e * transpose_image(r, g.inv(a));
  return kernel(avg);
}

}  // namespace

Diagonalization diagonalize(const Representation& rho, const std::vector<SymbolPtr>& syms) {
  const FiniteGroup& g = *rho.group;
  if (!g.is_abelian()) throw NotAbelian("diagonalization needs an abelian group");
  Diagonalization out;
  out.dual = pontryagin_dual(g);
  for (const auto& f : eigenforms(rho, whole(g), out.dual, CMatrix::identity(rho.degree))) {
    out.coeffs.push_back(f.coeff);
    out.chars.push_back(f.chr);
    out.forms.push_back(form_expr(f.coeff, syms));
  }
  return out;
}

InvariantBasis abelian_generators(const Representation& rho, Alphabet& alphabet, AbelianMode mode) {
  const FiniteGroup& g = *rho.group;
  if (rho.degree != alphabet.dim()) throw DimensionMismatch("representation degree differs from the alphabet");
  const std::vector<SymbolPtr> syms = alphabet.base();
  Diagonalization dg = diagonalize(rho, syms);
  InvariantBasis ib;
  ib.group = rho.group;
  ib.rep = rho;
  if (mode == AbelianMode::Schreier) {
    ib.mode = "schreier";
    std::vector<AbelianElem> chars;
    std::vector<long> moduli(dg.dual.factors.begin(), dg.dual.factors.end());
    for (int c : dg.chars) {
      AbelianElem a;
      for (int t : dg.dual.chars[c]) a.v.push_back(t);
      chars.push_back(a);
    }
    const SchreierResult sr = schreier_free_generators(chars, moduli);
    std::vector<std::string> letter_names;
    for (std::size_t i = 0; i < dg.forms.size(); ++i) letter_names.push_back("w" + std::to_string(i + 1));
    for (std::size_t k = 0; k < sr.generators.size(); ++k) {
      TaggedGenerator tg{fresh_name(alphabet, "u" + std::to_string(k + 1)), word_expr(sr.generators[k], dg.forms), 0,
                         word_str(sr.generators[k], letter_names), 0};
      ib.symbols.push_back(alphabet.derive(tg.name, tg.expr));
      ib.generators.push_back(std::move(tg));
    }
    ib.expected = sr.transversal.size() * (rho.degree - 1) + 1;
    return ib;
  }
  ib.mode = "monomial";
  std::vector<Form> forms;
  for (std::size_t i = 0; i < dg.forms.size(); ++i) forms.push_back({dg.coeffs[i], dg.chars[i]});
  const Level lv = partition_abelian(forms, dg.dual);
  LevelOutput lo = build_level(rho, syms, whole(g), dg.dual, lv, alphabet, "u", 0);
  ib.generators = std::move(lo.gens);
  ib.symbols = std::move(lo.syms);
  ib.expected = static_cast<std::size_t>(g.order()) * (rho.degree - 1) + 1;
  return ib;
}

InvariantBasis complete_generators(const Representation& rho, Alphabet& alphabet) {
  if (rho.degree != alphabet.dim()) throw DimensionMismatch("representation degree differs from the alphabet");
  InvariantBasis ib;
  ib.group = rho.group;
  ib.rep = rho;
  ib.mode = "complete";
  ib.expected = static_cast<std::size_t>(rho.group->order()) * (rho.degree - 1) + 1;
  const CompletenessResult plan = is_complete(rho);
  if (!plan.complete) throw NotComplete(plan.reason);
  Representation cur = rho;
  std::vector<SymbolPtr> syms = alphabet.base();
  if (plan.levels.empty()) {
    for (const auto& s : syms) {
      ib.generators.push_back({s->name, var(s), 0, "base letter", 0});
      ib.symbols.push_back(s);
    }
    return ib;
  }
  for (std::size_t depth = 0; depth < plan.levels.size(); ++depth) {
    const CompleteLevel& lvl = plan.levels[depth];
    const FiniteGroup& g = *cur.group;
    const CharacterTable t = character_table(g);
    const DualGroup d = pontryagin_dual(subgroup_as_group(g, lvl.n).group);
    CMatrix u(cur.degree, 0);
    for (std::size_t row : lvl.pi_b) {
      const auto m = restriction_multiplicities(g, t.character(row), lvl.n, d);
      const int psi = static_cast<int>(std::find_if(m.begin(), m.end(), [](int v) { return v > 0; }) - m.begin());
      const CMatrix ui = irreducible_subspace(cur, t, row, lvl.n, d, psi);
      u = u.cols() ? hstack(u, ui) : ui;
    }
    const CMatrix j = stable_complement(cur, u);
    Level lv;
    lv.b_of.assign(d.order(), -1);
    const auto bforms = eigenforms(cur, lvl.n, d, u);
    for (const auto& f : bforms) {
      if (f.chr == d.trivial() || lv.b_of[f.chr] >= 0) throw Error("internal", "pi_B does not restrict as required");
      lv.b_of[f.chr] = -2;
    }
    for (int chi = 1; chi < d.order(); ++chi)
      for (const auto& f : bforms)
        if (f.chr == chi) {
          lv.b_of[chi] = static_cast<int>(lv.forms.size());
          lv.forms.push_back(f);
        }
    lv.nb = lv.forms.size();
    for (const auto& f : eigenforms(cur, lvl.n, d, j)) lv.forms.push_back(f);
    const bool last = depth + 1 == plan.levels.size();
    const std::string prefix = last ? "u" : "z" + std::to_string(depth + 1) + "_";
    LevelOutput lo = build_level(cur, syms, lvl.n, d, lv, alphabet, prefix, static_cast<int>(depth));
    if (!last && lo.derived.character() != plan.levels[depth + 1].character)
      throw Error("internal", "derived action differs from the predicted character");
    if (last) {
      ib.generators = std::move(lo.gens);
      ib.symbols = std::move(lo.syms);
    }
    cur = std::move(lo.derived);
    syms = lo.syms;
  }
  return ib;
}

Expr act_element(const Representation& rho, int g, const Expr& e, const Alphabet& alphabet) {
  return act(rho(g), e, alphabet);
}

}  // namespace ncinv
