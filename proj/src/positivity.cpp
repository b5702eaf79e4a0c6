#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "ncinv/error.hpp"
#include "ncinv/positivity.hpp"

namespace ncinv {

namespace {

std::string fresh(const Alphabet& a, const std::string& base) {
  if (!a.lookup(base)) return base;
  for (int k = 2;; ++k)
    if (!a.lookup(base + "'" + std::to_string(k))) return base + "'" + std::to_string(k);
}

Expr zero() { return constant(Cyclotomic()); }

bool is_zero_expr(const Expr& e) { return is_const(e, Cyclotomic()); }

ExprMatrix act_matrix(const CMatrix& g, const ExprMatrix& m, const Alphabet& a) {
  std::vector<Expr> flat;
  for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
  const auto moved = act_all(g, flat, a);
  ExprMatrix out(m.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[i].push_back(moved[k++]);
  return out;
}

void check_real_unitary(const Representation& rho) {
  for (int g = 0; g < rho.group->order(); ++g) {
    const CMatrix& m = rho(g);
    if (!(m * m.adjoint()).is_identity()) throw NotUnitary("rho(" + rho.group->name(g) + ") is not unitary");
    if (m.conj() != m)
      throw NotUnitary("rho(" + rho.group->name(g) + ") is not real, so the action does not commute with the involution");
  }
}

struct WordLess {
  bool operator()(const std::vector<SymbolPtr>& a, const std::vector<SymbolPtr>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i]->base_index != b[i]->base_index) return a[i]->base_index < b[i]->base_index;
      if (a[i]->name != b[i]->name) return a[i]->name < b[i]->name;
    }
    return false;
  }
};
using Poly = std::map<std::vector<SymbolPtr>, Cyclotomic, WordLess>;

// Polynomial entries as a word-to-coefficient map; nullopt when an inverse
// (or anything else non-polynomial) occurs.
std::optional<Poly> as_poly(const Expr& e) {
  switch (e->kind) {
    case Kind::Const:
      if (e->value.is_zero()) return Poly{};
      return Poly{{{}, e->value}};
    case Kind::Var:
      return Poly{{{e->sym}, Cyclotomic(1)}};
    case Kind::Adjoint:
      if (e->kids[0]->kind == Kind::Var && e->kids[0]->sym->base_index >= 0) return as_poly(e->kids[0]);
      return std::nullopt;
    case Kind::Neg:
    case Kind::Scale: {
      auto p = as_poly(e->kids[0]);
      if (!p) return p;
      const Cyclotomic c = e->kind == Kind::Neg ? Cyclotomic(-1) : e->value;
      for (auto& [w, v] : *p) v = v * c;
      return p;
    }
    case Kind::Sum: {
      Poly out;
      for (const auto& k : e->kids) {
        auto p = as_poly(k);
        if (!p) return p;
        for (auto& [w, v] : *p) out[w] = out[w] + v;
      }
      std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
      return out;
    }
    case Kind::Product: {
      Poly out{{{}, Cyclotomic(1)}};
      for (const auto& k : e->kids) {
        auto p = as_poly(k);
        if (!p) return p;
        Poly next;
        for (const auto& [w1, v1] : out)
          for (const auto& [w2, v2] : *p) {
            auto w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            next[w] = next[w] + v1 * v2;
          }
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        out = std::move(next);
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

// Collects like terms of polynomial entries; other entries are returned as is.
Expr tidy(const Expr& e) {
  const auto p = as_poly(e);
  if (!p) return e;
  std::vector<Expr> terms;
  for (const auto& [w, v] : *p) {
    std::vector<Expr> f;
    for (const auto& s : w) f.push_back(var(s));
    terms.push_back(scale(v, mul(std::move(f))));
  }
  return terms.empty() ? zero() : add(std::move(terms));
}

// Identically zero, decided at a scalar center (or by evaluation when there is none).
bool vanishes(const Expr& e) {
  if (is_zero_expr(e)) return true;
  return nc_equal(e, zero()).verdict != Verdict::Distinct;
}

}  // namespace

CertificateTransform build_R(const Representation& rho, Alphabet& alphabet, bool printed_twist, std::uint64_t seed) {
  const FiniteGroup& g = *rho.group;
  if (rho.degree != alphabet.dim()) throw DimensionMismatch("representation degree differs from the alphabet");
  check_real_unitary(rho);
  const DerivedSeries ds = derived_series(g);
  if (!ds.solvable) throw NotSolvable("derived series stops at a nontrivial subgroup");
  CertificateTransform t;
  t.group = rho.group;
  t.rep = rho;
  t.order = {g.id()};
  t.r = {{constant(Cyclotomic(1))}};
  t.r_inv = t.r;
  std::mt19937_64 rng(seed ^ 0xa11ceULL);
  std::vector<SymbolPtr> gens = alphabet.base();

  for (std::size_t lv = ds.chain.size() - 1; lv-- > 0;) {
    const std::string tag = std::to_string(ds.chain.size() - 1 - lv);
    const OrbitTagging ot = tag_orbit(rho, ds.chain[lv], ds.chain[lv + 1], gens, alphabet, "r" + tag + "_v", rng);
    const DualGroup& dual = ot.dual;
    const int nq = ot.quotient.order();
    // m_mu by breadth-first search over words in the eigen-generators
    std::map<int, std::vector<int>> word{{dual.trivial(), {}}};
    std::vector<int> found{dual.trivial()};
    for (std::size_t head = 0; head < found.size(); ++head)
      for (std::size_t i = 0; i < ot.symbols.size(); ++i) {
        const int next = dual.mul(found[head], ot.tags[i]);
        if (word.count(next)) continue;
        auto w = word[found[head]];
        w.push_back(static_cast<int>(i));
        word[next] = w;
        found.push_back(next);
      }
    if (static_cast<int>(found.size()) != dual.order())
      throw CharactersDoNotGenerate("the linear forms do not reach every character of the quotient");

    TransformStage st;
    st.label = "order " + std::to_string(nq) + " quotient at level " + tag;
    st.reps = ot.reps;
    st.twist = printed_twist && nq > 1 ? 1 : 0;
    const Cyclotomic inv_sqrt = Cyclotomic(1) / Cyclotomic::sqrt_nat(static_cast<unsigned long>(nq));
    st.gamma = CMatrix(nq, nq);
    for (int k = 0; k < nq; ++k)
      for (int mu = 0; mu < nq; ++mu) st.gamma(k, mu) = dual.value(dual.mul(st.twist, mu), k) * inv_sqrt;
    for (int mu = 0; mu < nq; ++mu) {
      std::vector<Expr> f;
      std::string wn;
      for (int i : word[mu]) {
        f.push_back(var(ot.symbols[i]));
        wn += (wn.empty() ? "" : " ") + ot.symbols[i]->name;
      }
      st.m.push_back(mul(std::move(f)));
      st.m_words.push_back(wn.empty() ? "1" : wn);
    }

    // R_new[(k, j)][(mu, j')] = (rep_k . R_H)[j][j'] * Gamma[k][mu] m_mu
    const std::size_t nh = t.order.size();
    ExprMatrix r(nq * nh, std::vector<Expr>(nq * nh, zero()));
    ExprMatrix ri(nq * nh, std::vector<Expr>(nq * nh, zero()));
    std::vector<int> order(nq * nh);
    for (int k = 0; k < nq; ++k) {
      const ExprMatrix rh = act_matrix(rho(ot.reps[k]), t.r, alphabet);
      const ExprMatrix rhi = act_matrix(rho(ot.reps[k]), t.r_inv, alphabet);
      for (std::size_t j = 0; j < nh; ++j) order[k * nh + j] = g.op(t.order[j], ot.reps[k]);
      for (int mu = 0; mu < nq; ++mu) {
        const Expr rn = scale(st.gamma(k, mu), st.m[mu]);
        const Expr rni = scale(st.gamma(k, mu).conj(), inv(st.m[mu]));
        for (std::size_t j = 0; j < nh; ++j)
          for (std::size_t j2 = 0; j2 < nh; ++j2) {
            if (!is_zero_expr(rh[j][j2])) r[k * nh + j][mu * nh + j2] = mul(rh[j][j2], rn);
            if (!is_zero_expr(rhi[j2][j])) ri[mu * nh + j2][k * nh + j] = mul(rni, rhi[j2][j]);
          }
      }
    }
    t.r = std::move(r);
    t.r_inv = std::move(ri);
    t.order = std::move(order);
    t.stages.push_back(std::move(st));

    if (lv == 0) break;
    // invariant generators for the next stage
    std::map<std::vector<int>, SymbolPtr> next;
    std::vector<SymbolPtr> next_list;
    auto add_word = [&](std::vector<int> w) {
      if (w.empty() || next.count(w)) return;
      std::vector<Expr> f;
      for (int i : w) f.push_back(var(ot.symbols[i]));
      const SymbolPtr s =
          alphabet.derive(fresh(alphabet, "r" + tag + "_q" + std::to_string(next_list.size() + 1)), mul(std::move(f)));
      next[w] = s;
      next_list.push_back(s);
    };
    for (int nu : found) {
      auto w = word[dual.inv(nu)];
      w.insert(w.end(), word[nu].begin(), word[nu].end());
      add_word(w);
    }
    for (std::size_t i = 0; i < ot.symbols.size(); ++i)
      for (int nu : found) {
        const int row = dual.mul(ot.tags[i], nu);
        auto w = word[dual.inv(row)];
        w.push_back(static_cast<int>(i));
        w.insert(w.end(), word[nu].begin(), word[nu].end());
        add_word(w);
      }
    gens = std::move(next_list);
  }
  return t;
}

ConstraintMatrix make_constraint(const std::string& label, ExprMatrix q, const Alphabet& alphabet) {
  const std::size_t n = q.size();
  for (const auto& row : q)
    if (row.size() != n) throw FormatError("constraint matrix must be square");
  std::mt19937_64 rng(11);
  for (int k = 0; k < 3; ++k) {
    const Point pt = random_hermitian_point(rng, alphabet.base(), 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (eval_expr(q[i][j], pt) != eval_expr(q[j][i], pt).adjoint())
          throw FormatError("constraint matrix is not symmetric under the involution");
  }
  return {label, std::move(q)};
}

ConstraintMatrix named_constraint(const std::string& name, const Alphabet& alphabet) {
  auto p = [&](const std::string& s) { return parse_expr(s, alphabet); };
  const Expr one = constant(Cyclotomic(1));
  if (name == "entire") return make_constraint(name, {{one}}, alphabet);
  if (name == "ball") {
    std::vector<Expr> t{one};
    for (std::size_t i = 0; i < alphabet.dim(); ++i)
      t.push_back(neg(mul(alphabet.base_var(i), alphabet.base_var(i))));
    return make_constraint(name, {{add(std::move(t))}}, alphabet);
  }
  if (alphabet.dim() != 2) throw FormatError("constraint '" + name + "' is defined for two letters");
  const Expr x = alphabet.base_var(0), y = alphabet.base_var(1), z = zero();
  if (name == "disk") return make_constraint(name, {{p("1 - x^2 - y^2")}}, alphabet);
  if (name == "disk-lmi") return make_constraint(name, {{one, z, x}, {z, one, y}, {x, y, one}}, alphabet);
  if (name == "bidisk") return make_constraint(name, {{p("1 - x^2"), z}, {z, p("1 - y^2")}}, alphabet);
  if (name == "orthant") return make_constraint(name, {{x, z}, {z, y}}, alphabet);
  throw FormatError("unknown constraint '" + name + "'");
}

ConstraintMatrix build_QG(const ConstraintMatrix& q, const CertificateTransform& t, const Alphabet& alphabet) {
  const std::size_t n = q.q.size(), ng = t.order.size();
  std::vector<ExprMatrix> moved;
  for (int g : t.order) moved.push_back(act_matrix(t.rep(g), q.q, alphabet));
  ExprMatrix radj(ng, std::vector<Expr>(ng)), rr(ng, std::vector<Expr>(ng));
  for (std::size_t a = 0; a < ng; ++a)
    for (std::size_t b = 0; b < ng; ++b) {
      rr[a][b] = expand(t.r[a][b]);
      radj[a][b] = adj(rr[a][b]);
    }
  ExprMatrix out(ng * n, std::vector<Expr>(ng * n));
  for (std::size_t mu = 0; mu < ng; ++mu)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t nu = 0; nu < ng; ++nu)
        for (std::size_t j = 0; j < n; ++j) {
          std::vector<Expr> terms;
          for (std::size_t g = 0; g < ng; ++g) {
            if (is_zero_expr(rr[g][mu]) || is_zero_expr(rr[g][nu]) || is_zero_expr(moved[g][i][j])) continue;
            terms.push_back(mul({radj[g][mu], moved[g][i][j], rr[g][nu]}));
          }
          Expr e = tidy(add(std::move(terms)));
          if (vanishes(e)) e = zero();
          out[mu * n + i][nu * n + j] = e;
        }
  return {q.label + " (invariant)", std::move(out)};
}

SosBlock sos_block_realization(const Realization& s) {
  const Pencil& p = s.pencil;
  for (const auto& sym : p.syms)
    if (sym->base_index < 0) throw UnknownSymbol("bordered form needs a pencil over base letters");
  const std::size_t n = p.n;
  SosBlock out;
  auto bordered = [&](const CMatrix& tl, const CMatrix& a) {
    CMatrix m(2 * n, 2 * n);
    m.set_block(0, 0, tl);
    m.set_block(0, n, a.adjoint());
    m.set_block(n, 0, -a);
    return m;
  };
  Pencil k;
  k.n = 2 * n;
  k.a0 = bordered(s.c * s.c.adjoint(), p.a0);
  k.syms = p.syms;
  for (const auto& a : p.coeffs) k.coeffs.push_back(bordered(CMatrix(n, n), a));
  CMatrix v(2 * n, 1);
  v.set_block(n, 0, s.b);
  out.bordered = Realization{v, std::move(k), v, std::nullopt};
  out.p = CMatrix(1, 2 * n);
  out.p.set_block(0, 0, s.c.adjoint());
  out.middle = out.p.adjoint() * out.p;
  return out;
}

SosDecomposition invariant_sos_rewrite(const std::vector<Expr>& s, const Representation& rho, Alphabet& alphabet,
                                       const Budget& budget) {
  const FiniteGroup& g = *rho.group;
  std::vector<Expr> squares;
  for (const auto& si : s) squares.push_back(mul(adj(expand(si)), expand(si)));
  const Expr r = add(squares);
  for (int a = 0; a < g.order(); ++a) {
    if (a == g.id()) continue;
    if (nc_equal(act_element(rho, a, r, alphabet), r, budget).verdict == Verdict::Distinct)
      throw NotInvariant("sum of squares moves under " + g.name(a));
  }
  SosDecomposition out;
  RealizeOptions opts;
  opts.budget = budget;
  for (const auto& si : s) out.blocks.push_back(sos_block_realization(realize(si, opts)));
  out.transform = build_R(rho, alphabet, false, budget.seed);
  out.qg = build_QG(named_constraint("entire", alphabet), out.transform, alphabet);
  const CertificateTransform& t = out.transform;
  const std::size_t ng = t.order.size();
  const Cyclotomic scale_by = Cyclotomic(1) / Cyclotomic::sqrt_nat(static_cast<unsigned long>(ng));
  for (const auto& si : s) {
    std::vector<Expr> orbit;
    for (int e : t.order) orbit.push_back(act_element(rho, e, si, alphabet));
    std::vector<Expr> v;
    for (std::size_t mu = 0; mu < ng; ++mu) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < ng; ++k)
        if (!is_zero_expr(t.r_inv[mu][k])) terms.push_back(mul(expand(t.r_inv[mu][k]), orbit[k]));
      Expr e = tidy(scale(scale_by, add(std::move(terms))));
      if (vanishes(e)) e = zero();
      v.push_back(e);
    }
    out.vectors.push_back(std::move(v));
  }
  bool diagonal = true;
  for (std::size_t a = 0; a < ng && diagonal; ++a)
    for (std::size_t b = 0; b < ng && diagonal; ++b)
      if (a != b && !is_zero_expr(out.qg.q[a][b])) diagonal = false;
  if (diagonal)
    for (const auto& v : out.vectors)
      for (std::size_t mu = 0; mu < ng; ++mu)
        if (!is_zero_expr(v[mu])) out.terms.push_back({out.qg.q[mu][mu], v[mu]});

  // identity and invariance at hermitian points
  std::mt19937_64 rng(budget.seed + 5);
  std::size_t tries = 0;
  while (out.points_checked < 5) {
    if (++tries > 60) throw DegeneracyNotWitnessed("too few hermitian points where the decomposition is defined");
    const Point pt = random_hermitian_point(rng, alphabet.base(), 2);
    try {
      const CMatrix lhs = eval_expr(r, pt);
      CMatrix rhs(lhs.rows(), lhs.cols());
      std::vector<std::vector<CMatrix>> vals;
      for (const auto& v : out.vectors) vals.push_back(eval_exprs(v, pt));
      const auto qv = [&] {
        std::vector<Expr> flat;
        for (const auto& row : out.qg.q) flat.insert(flat.end(), row.begin(), row.end());
        return eval_exprs(flat, pt);
      }();
      for (const auto& vv : vals)
        for (std::size_t a = 0; a < ng; ++a)
          for (std::size_t b = 0; b < ng; ++b) rhs += vv[a].adjoint() * qv[a * ng + b] * vv[b];
      if (lhs != rhs) throw Error("internal", "invariant decomposition differs from the sum of squares");
      for (int e = 0; e < g.order(); ++e)
        for (const auto& v : out.vectors) {
          const auto moved = eval_exprs(act_all(rho(e), v, alphabet), pt);
          const auto base = eval_exprs(v, pt);
          if (moved != base) throw Error("internal", "summand is not invariant");
        }
    } catch (const SingularAtPoint&) {
      continue;
    }
    ++out.points_checked;
  }
  return out;
}

}  // namespace ncinv
