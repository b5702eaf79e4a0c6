#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "ncinv/error.hpp"
#include "ncinv/invariants.hpp"

namespace ncinv {

namespace {

std::size_t point_size(const Point& p) { return p.empty() ? 1 : p.begin()->second.rows(); }

bool invertible_at(const Pencil& p, const Point& pt) {
  try {
    const CMatrix l = p.eval(pt, point_size(pt));
    return rank(l) == l.rows();
  } catch (const SingularAtPoint&) {
    return false;
  }
}

std::string word_name(const std::vector<int>& w, const std::vector<SymbolPtr>& syms) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? " " : "") + syms[w[k]]->name;
  return s;
}

std::string fresh(const Alphabet& a, const std::string& base) {
  if (!a.lookup(base)) return base;
  for (int k = 2;; ++k)
    if (!a.lookup(base + "'" + std::to_string(k))) return base + "'" + std::to_string(k);
}

}  // namespace

std::vector<Expr> act_all(const CMatrix& g, const std::vector<Expr>& es, const Alphabet& alphabet) {
  const std::size_t d = alphabet.dim();
  std::vector<Expr> forms;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Expr> t;
    for (std::size_t j = 0; j < d; ++j)
      if (!g(i, j).is_zero()) t.push_back(scale(g(i, j), alphabet.base_var(j)));
    forms.push_back(add(std::move(t)));
  }
  std::map<const Symbol*, Expr> cache;
  std::function<Expr(const SymbolPtr&)> f = [&](const SymbolPtr& s) -> Expr {
    if (s->base_index >= 0) return forms.at(s->base_index);
    if (!s->binding) throw UnknownSymbol("symbol " + s->name + " has no binding");
    auto it = cache.find(s.get());
    if (it != cache.end()) return it->second;
    Expr r = substitute(s->binding, f);
    cache[s.get()] = r;
    return r;
  };
  std::vector<Expr> out;
  for (const auto& e : es) out.push_back(substitute(e, f));
  return out;
}


std::optional<Point> find_base_witness(const Pencil& p, const Alphabet& alphabet, const Budget& budget) {
  std::mt19937_64 rng(budget.seed);
  for (std::size_t m = 1; m <= std::max<std::size_t>(1, budget.max_size); ++m)
    for (std::size_t a = 0; a < budget.attempts; ++a) {
      const Point pt = random_point(rng, alphabet.base(), m);
      if (invertible_at(p, pt)) return pt;
    }
  return std::nullopt;
}

LiftResult lift_realization(const Realization& r, const std::vector<int>& tags, const DualGroup& dual,
                            Alphabet& alphabet, const std::string& prefix, const Budget& budget) {
  const Pencil& p = r.pencil;
  if (tags.size() != p.syms.size()) throw DimensionMismatch("one tag per pencil symbol is required");
  LiftResult out;
  // monomials m_chi by breadth-first search over words in the symbols
  std::map<int, std::vector<int>> word{{dual.trivial(), {}}};
  std::vector<int> order{dual.trivial()};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int chi = order[head];
    for (std::size_t i = 0; i < tags.size(); ++i) {
      const int next = dual.mul(chi, tags[i]);
      if (word.count(next)) continue;
      auto w = word[chi];
      w.push_back(static_cast<int>(i));
      word[next] = w;
      order.push_back(next);
    }
  }
  out.d_elements = order;
  std::map<int, std::size_t> pos;
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  for (int chi : order) {
    std::vector<Expr> f;
    for (int i : word[chi]) f.push_back(var(p.syms[i]));
    out.monomials.push_back(mul(std::move(f)));
  }
  std::ostringstream trace;
  trace << "D has " << order.size() << " of " << dual.order() << " characters";
  if (static_cast<int>(order.size()) < dual.order()) trace << " (tags do not generate; working with N/ker)";
  trace << "; m:";
  for (int chi : order) trace << " " << dual.name(chi) << "=" << word_name(word[chi], p.syms);

  const std::size_t nd = order.size(), n = p.n;
  // entry words and their coefficient blocks
  std::map<std::vector<int>, std::size_t> gen_of;
  std::vector<std::vector<int>> gen_words;
  std::vector<std::string> provenance;
  std::vector<CMatrix> coeffs;
  CMatrix a0(nd * n, nd * n);
  auto block = [&](std::size_t row, std::size_t col, const CMatrix& a) {
    CMatrix e(nd, nd);
    e(row, col) = 1;
    return kron(e, a);
  };
  auto place = [&](std::vector<int> w, std::size_t row, std::size_t col, const CMatrix& a, const std::string& prov) {
    if (w.empty()) {
      a0 += block(row, col, a);
      return;
    }
    auto it = gen_of.find(w);
    if (it == gen_of.end()) {
      it = gen_of.emplace(w, gen_words.size()).first;
      gen_words.push_back(w);
      provenance.push_back(prov);
      coeffs.emplace_back(nd * n, nd * n);
    }
    coeffs[it->second] += block(row, col, a);
  };
  for (std::size_t k = 0; k < nd; ++k) {
    const int nu = order[k];
    std::vector<int> w = word[dual.inv(nu)];
    w.insert(w.end(), word[nu].begin(), word[nu].end());
    place(w, k, k, p.a0, "m[" + dual.name(dual.inv(nu)) + "] m[" + dual.name(nu) + "]");
  }
  for (std::size_t i = 0; i < tags.size(); ++i)
    for (std::size_t k = 0; k < nd; ++k) {
      const int nu = order[k];
      const int row = dual.mul(tags[i], nu);
      std::vector<int> w = word[dual.inv(row)];
      w.push_back(static_cast<int>(i));
      w.insert(w.end(), word[nu].begin(), word[nu].end());
      place(w, pos.at(row), k, p.coeffs[i],
            "m[" + dual.name(dual.inv(row)) + "] " + p.syms[i]->name + " m[" + dual.name(nu) + "]");
    }

  Pencil np;
  np.n = nd * n;
  np.a0 = std::move(a0);
  for (std::size_t j = 0; j < gen_words.size(); ++j) {
    std::vector<Expr> f;
    for (int i : gen_words[j]) f.push_back(var(p.syms[i]));
    TaggedGenerator tg{fresh(alphabet, prefix + std::to_string(j + 1)), mul(std::move(f)), 0, provenance[j], 0};
    const SymbolPtr s = alphabet.derive(tg.name, tg.expr);
    np.syms.push_back(s);
    np.coeffs.push_back(coeffs[j]);
    out.symbols.push_back(s);
    out.generators.push_back(std::move(tg));
  }
  Realization nr;
  nr.c = kron(CMatrix::unit_column(nd, 0), r.c);
  nr.b = kron(CMatrix::unit_column(nd, 0), r.b);
  nr.pencil = std::move(np);
  nr.witness = find_base_witness(nr.pencil, alphabet, budget);
  if (!nr.witness) throw DegeneracyNotWitnessed("no invertible point found for the lifted pencil");
  trace << "; size " << n << " -> " << nr.size() << ", " << gen_words.size() << " generators";
  out.realization = std::move(nr);
  out.trace = trace.str();
  return out;
}

namespace {

// Values of the expressions at random base points, stacked into columns
// (one column per expression), until the rank stops growing.
CMatrix evaluation_columns(const std::vector<Expr>& es, const Alphabet& alphabet, std::mt19937_64& rng,
                           std::size_t m) {
  CMatrix acc(0, es.size());
  std::size_t best = 0, stable = 0, tries = 0;
  while (stable < 2) {
    if (++tries > 200) throw DegeneracyNotWitnessed("orbit expressions are singular at every sampled point");
    std::vector<CMatrix> vals;
    try {
      vals = eval_exprs(es, random_point(rng, alphabet.base(), m));
    } catch (const SingularAtPoint&) {
      continue;
    }
    CMatrix block(m * m, es.size());
    for (std::size_t j = 0; j < es.size(); ++j)
      for (std::size_t a = 0; a < m * m; ++a) block(a, j) = vals[j].entries()[a];
    acc = acc.rows() ? vstack(acc, block) : block;
    const std::size_t rk = rank(acc);
    if (rk > best) {
      best = rk;
      stable = 0;
    } else {
      ++stable;
    }
  }
  return acc;
}

}  // namespace

OrbitTagging tag_orbit(const Representation& rho, const Subgroup& kk, const Subgroup& hh,
                       const std::vector<SymbolPtr>& qs, Alphabet& alphabet, const std::string& prefix,
                       std::mt19937_64& rng) {
  const FiniteGroup& g = *rho.group;
  const std::size_t m = 3;
  OrbitTagging ot;
  const SubgroupGroup sk = subgroup_as_group(g, kk);
  Subgroup hpos;
  for (int h : hh) hpos.push_back(static_cast<int>(std::lower_bound(kk.begin(), kk.end(), h) - kk.begin()));
  const QuotientGroup q = quotient(sk.group, hpos);
  ot.quotient = q.group;
  const FiniteGroup& ab = ot.quotient;
  ot.dual = pontryagin_dual(ab);
  const int nq = ab.order();
  const std::size_t ns = qs.size();
  std::vector<Expr> qe;
  for (const auto& s : qs) qe.push_back(var(s));
  for (int k = 0; k < nq; ++k) ot.reps.push_back(sk.embed[q.reps[k]]);
  const int id_coset = q.map[std::lower_bound(kk.begin(), kk.end(), g.id()) - kk.begin()];
  std::vector<Expr> orbit;  // index k * ns + i
  for (int k = 0; k < nq; ++k) {
    const auto moved = k == id_coset ? qe : act_all(rho(ot.reps[k]), qe, alphabet);
    orbit.insert(orbit.end(), moved.begin(), moved.end());
  }
  ot.orbit_size = orbit.size();
  const CMatrix ev = evaluation_columns(orbit, alphabet, rng, m);
  // basis: the symbols themselves first, then the moved copies
  std::vector<std::size_t> col_order;
  for (std::size_t i = 0; i < ns; ++i) col_order.push_back(id_coset * ns + i);
  for (int k = 0; k < nq; ++k)
    if (k != id_coset)
      for (std::size_t i = 0; i < ns; ++i) col_order.push_back(k * ns + i);
  CMatrix ordered(ev.rows(), orbit.size());
  for (std::size_t j = 0; j < col_order.size(); ++j)
    for (std::size_t a = 0; a < ev.rows(); ++a) ordered(a, j) = ev(a, col_order[j]);
  const RrefResult rr = rref(ordered);
  std::vector<std::size_t> basis_cols;
  for (std::size_t pc : rr.pivots) basis_cols.push_back(col_order[pc]);
  const std::size_t dim = basis_cols.size();
  CMatrix eb(ev.rows(), dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t a = 0; a < ev.rows(); ++a) eb(a, j) = ev(a, basis_cols[j]);
  auto coords = [&](std::size_t col) { return solve(eb, ev.col(col)); };

  // act(g_k, v_b) = act(g_b g_k, q_i): read off in the basis
  std::vector<CMatrix> action(nq, CMatrix(dim, dim));
  for (int k = 0; k < nq; ++k)
    for (std::size_t b = 0; b < dim; ++b) {
      const int kb = static_cast<int>(basis_cols[b] / ns);
      const std::size_t i = basis_cols[b] % ns;
      const CMatrix c = coords(ab.op(kb, k) * ns + i);
      for (std::size_t l = 0; l < dim; ++l) action[k](b, l) = c(l, 0);
    }
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b) {
      if (action[a] * action[b] != action[ab.op(a, b)])
        throw NotLinearAction("orbit span action is not a homomorphism");
      if (action[a] * action[b] != action[b] * action[a]) throw NotCommuting("orbit span action does not commute");
    }
  for (int a = 0; a < nq; ++a)
    if (!action[a].pow(ab.element_order(a)).is_identity()) throw NotFiniteOrder("orbit span action");

  std::vector<CMatrix> tr;
  for (int k = 0; k < nq; ++k) tr.push_back(action[k].transpose());
  const Eigenbasis eig = simultaneous_eigenbasis(tr, std::max(1, ab.exponent()));
  const CMatrix pinv = inverse(eig.basis);
  ot.in_basis.assign(ns, std::vector<Cyclotomic>(dim));
  for (std::size_t i = 0; i < ns; ++i) {
    const CMatrix t = coords(id_coset * ns + i);
    for (std::size_t l = 0; l < dim; ++l)
      for (std::size_t b = 0; b < dim; ++b) ot.in_basis[i][l] += pinv(l, b) * t(b, 0);
  }
  for (std::size_t l = 0; l < dim; ++l) {
    std::vector<Expr> terms;
    for (std::size_t b = 0; b < dim; ++b)
      if (!eig.basis(b, l).is_zero()) terms.push_back(scale(eig.basis(b, l), orbit[basis_cols[b]]));
    int chi = -1;
    for (int c = 0; c < ot.dual.order() && chi < 0; ++c) {
      bool ok = true;
      for (int k = 0; k < nq && ok; ++k) ok = ot.dual.value(c, k) == eig.eigenvalues[l][k];
      if (ok) chi = c;
    }
    if (chi < 0) throw Error("internal", "eigenvalues do not form a character");
    ot.symbols.push_back(alphabet.derive(fresh(alphabet, prefix + std::to_string(l + 1)), add(std::move(terms))));
    ot.tags.push_back(chi);
  }
  return ot;
}

RewriteResult solvable_rewrite(const Expr& e, const Representation& rho, Alphabet& alphabet, const Budget& budget) {
  const FiniteGroup& g = *rho.group;
  if (rho.degree != alphabet.dim()) throw DimensionMismatch("representation degree differs from the alphabet");
  RewriteResult out;
  const Expr flat = expand(e);
  for (int a = 0; a < g.order(); ++a) {
    if (a == g.id()) continue;
    const EqualityResult eq = nc_equal(act_element(rho, a, flat, alphabet), flat, budget);
    if (eq.verdict == Verdict::Distinct) {
      std::string where;
      if (eq.witness)
        for (const auto& [name, m] : *eq.witness) where += " " + name + "=" + m.str();
      throw NotInvariant("expression moves under " + g.name(a) + (where.empty() ? "" : "; witness" + where));
    }
  }
  const DerivedSeries ds = derived_series(g);
  if (!ds.solvable) throw NotSolvable("derived series stops at a nontrivial subgroup");

  RealizeOptions opts;
  opts.budget = budget;
  Realization cur = realize(flat, opts);
  std::mt19937_64 rng(budget.seed ^ 0x5eedULL);

  for (std::size_t lv = ds.chain.size() - 1; lv-- > 0;) {
    const std::string tag = std::to_string(ds.chain.size() - 1 - lv);
    const Subgroup& kk = ds.chain[lv];
    const Subgroup& hh = ds.chain[lv + 1];
    if (cur.pencil.syms.empty()) {
      out.trace.push_back("level " + tag + ": constant realization, nothing to lift");
      continue;
    }
    const std::vector<SymbolPtr> qs = cur.pencil.syms;
    const OrbitTagging ot = tag_orbit(rho, kk, hh, qs, alphabet, "v" + tag + "_", rng);
    const std::size_t ns = qs.size();
    std::vector<int> tags;
    std::vector<SymbolPtr> ws;
    std::vector<CMatrix> wcoeff;
    for (std::size_t l = 0; l < ot.symbols.size(); ++l) {
      CMatrix coeff(cur.size(), cur.size());
      for (std::size_t i = 0; i < ns; ++i)
        if (!ot.in_basis[i][l].is_zero()) coeff += ot.in_basis[i][l] * cur.pencil.coeffs[i];
      if (coeff.is_zero()) continue;
      ws.push_back(ot.symbols[l]);
      tags.push_back(ot.tags[l]);
      wcoeff.push_back(std::move(coeff));
    }
    Realization diag{cur.c, Pencil{cur.size(), cur.pencil.a0, ws, wcoeff}, cur.b, std::nullopt};
    std::ostringstream head;
    head << "level " << tag << ": |K/H| = " << ot.quotient.order() << ", orbit span " << ot.symbols.size() << " from "
         << ot.orbit_size
         << " expressions, " << ws.size() << " eigen-generators";
    out.trace.push_back(head.str());
    LiftResult lr = lift_realization(diag, tags, ot.dual, alphabet, "q" + tag + "_", budget);
    out.trace.push_back("level " + tag + ": " + lr.trace);
    cur = std::move(lr.realization);
    out.generators = std::move(lr.generators);
    out.symbols = std::move(lr.symbols);
  }

  // evaluation check against the input
  std::mt19937_64 vr(budget.seed + 17);
  std::size_t tries = 0;
  while (out.points_checked < 5) {
    if (++tries > 50) throw DegeneracyNotWitnessed("too few points where both sides are defined");
    const Point pt = random_point(vr, alphabet.base(), 2);
    CMatrix lhs, rhs;
    try {
      lhs = eval_expr(flat, pt);
      rhs = cur.eval(pt);
    } catch (const SingularAtPoint&) {
      continue;
    }
    if (lhs != rhs) throw Error("internal", "rewritten realization differs from the input");
    ++out.points_checked;
  }
  out.realization = std::move(cur);
  return out;
}

}  // namespace ncinv
