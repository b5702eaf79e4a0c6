#include "ncinv/realization.hpp"

#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "ncinv/error.hpp"

namespace ncinv {

long Pencil::index_of(const SymbolPtr& s) const {
  for (std::size_t i = 0; i < syms.size(); ++i)
    if (syms[i] == s) return static_cast<long>(i);
  return -1;
}

CMatrix Pencil::coeff(const SymbolPtr& s) const {
  const long i = index_of(s);
  return i < 0 ? CMatrix(n, n) : coeffs[i];
}

CMatrix Pencil::eval(const Point& point, std::size_t m) const {
  CMatrix l = kron(a0, CMatrix::identity(m));
  std::vector<Expr> vs;
  for (const auto& s : syms) vs.push_back(var(s));
  const std::vector<CMatrix> vals = eval_exprs(vs, point);
  for (std::size_t i = 0; i < syms.size(); ++i) {
    const CMatrix& x = vals[i];
    if (x.rows() != m) throw DimensionMismatch("point size does not match");
    l += kron(coeffs[i], x);
  }
  return l;
}

CMatrix Pencil::at_scalars(const std::vector<Cyclotomic>& t) const {
  if (t.size() != syms.size()) throw DimensionMismatch("scalar tuple has wrong length");
  CMatrix l = a0;
  for (std::size_t i = 0; i < syms.size(); ++i)
    if (!t[i].is_zero()) l += t[i] * coeffs[i];
  return l;
}

namespace {

std::size_t point_size(const Point& p) { return p.empty() ? 1 : p.begin()->second.rows(); }

// Solves L Y = B for invertible L; throws SingularAtPoint otherwise.
CMatrix solve_invertible(const CMatrix& l, const CMatrix& b) {
  const RrefResult rr = rref(hstack(l, b));
  const std::size_t n = l.rows();
  if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) throw SingularAtPoint("pencil is singular at the point");
  return rr.r.block(0, n, n, b.cols());
}

// Puts both pencils on the union of their symbols (order of first appearance).
std::vector<SymbolPtr> merged_symbols(const Pencil& p, const Pencil& q) {
  std::vector<SymbolPtr> out = p.syms;
  for (const auto& s : q.syms)
    if (p.index_of(s) < 0) out.push_back(s);
  return out;
}

}  // namespace

CMatrix Realization::eval(const Point& point) const {
  const std::size_t m = point_size(point);
  const CMatrix l = pencil.eval(point, m);
  const CMatrix id = CMatrix::identity(m);
  const CMatrix y = solve_invertible(l, kron(b, id));
  return kron(c, id).adjoint() * y;
}

Budget Budget::from_env(Budget base) {
  const char* env = std::getenv("NCINV_BUDGET");
  if (!env) return base;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      // a bare number sets the attempt count
      base.attempts = std::stoul(item);
      continue;
    }
    const std::string key = item.substr(0, eq);
    const unsigned long long v = std::stoull(item.substr(eq + 1));
    if (key == "max_size")
      base.max_size = v;
    else if (key == "attempts")
      base.attempts = v;
    else if (key == "points")
      base.points = v;
    else if (key == "seed")
      base.seed = v;
    else
      throw FormatError("unknown NCINV_BUDGET key " + key);
  }
  return base;
}

Realization realize_const(const Cyclotomic& a) {
  Realization r;
  r.pencil.n = 1;
  r.pencil.a0 = CMatrix::identity(1);
  r.c = CMatrix::column({Cyclotomic(1L)});
  r.b = CMatrix::column({a});
  return r;
}

Realization realize_var(const SymbolPtr& s) {
  Realization r;
  r.pencil.n = 2;
  r.pencil.a0 = CMatrix::identity(2);
  r.pencil.syms = {s};
  CMatrix a(2, 2);
  a(0, 1) = -1L;
  r.pencil.coeffs = {a};
  r.c = CMatrix::unit_column(2, 0);
  r.b = CMatrix::unit_column(2, 1);
  return r;
}

Realization realize_sum(const Realization& r1, const Realization& r2) {
  Realization r;
  const Pencil &p = r1.pencil, &q = r2.pencil;
  r.pencil.n = p.n + q.n;
  r.pencil.a0 = direct_sum(p.a0, q.a0);
  r.pencil.syms = merged_symbols(p, q);
  for (const auto& s : r.pencil.syms) r.pencil.coeffs.push_back(direct_sum(p.coeff(s), q.coeff(s)));
  r.c = vstack(r1.c, r2.c);
  r.b = vstack(r1.b, r2.b);
  return r;
}

Realization realize_product(const Realization& r1, const Realization& r2) {
  Realization r;
  const Pencil &p = r1.pencil, &q = r2.pencil;
  r.pencil.n = p.n + q.n;
  r.pencil.a0 = direct_sum(p.a0, q.a0);
  r.pencil.a0.set_block(0, p.n, -(r1.b * r2.c.adjoint()));
  r.pencil.syms = merged_symbols(p, q);
  for (const auto& s : r.pencil.syms) r.pencil.coeffs.push_back(direct_sum(p.coeff(s), q.coeff(s)));
  r.c = vstack(r1.c, CMatrix(q.n, 1));
  r.b = vstack(CMatrix(p.n, 1), r2.b);
  return r;
}

Realization realize_inverse(const Realization& r0) {
  Realization r;
  const Pencil& p = r0.pencil;
  const std::size_t n = p.n;
  r.pencil.n = n + 1;
  r.pencil.a0 = CMatrix(n + 1, n + 1);
  r.pencil.a0.set_block(0, 0, p.a0);
  r.pencil.a0.set_block(0, n, -r0.b);
  r.pencil.a0.set_block(n, 0, r0.c.adjoint());
  r.pencil.syms = p.syms;
  for (const auto& a : p.coeffs) {
    CMatrix big(n + 1, n + 1);
    big.set_block(0, 0, a);
    r.pencil.coeffs.push_back(big);
  }
  r.c = CMatrix::unit_column(n + 1, n);
  r.b = CMatrix::unit_column(n + 1, n);
  return r;
}

Realization realize_scale(const Cyclotomic& a, const Realization& r0) {
  Realization r = r0;
  r.b *= a;
  r.witness.reset();
  return r;
}

Realization realize_adjoint(const Realization& r0) {
  for (const auto& s : r0.pencil.syms)
    if (s->base_index < 0) throw NotLinearAction("adjoint realization needs base letters, got " + s->name);
  Realization r;
  r.pencil.n = r0.pencil.n;
  r.pencil.a0 = r0.pencil.a0.adjoint();
  r.pencil.syms = r0.pencil.syms;
  for (const auto& a : r0.pencil.coeffs) r.pencil.coeffs.push_back(a.adjoint());
  r.c = r0.b;
  r.b = r0.c;
  return r;
}

Realization realize(const Expr& e0, const RealizeOptions& opts) {
  const Expr e = opts.expand_symbols ? expand(e0) : e0;
  std::unordered_map<const Node*, Realization> memo;
  std::function<Realization(const Expr&)> go = [&](const Expr& x) -> Realization {
    auto it = memo.find(x.get());
    if (it != memo.end()) return it->second;
    Realization r;
    switch (x->kind) {
      case Kind::Const:
        r = realize_const(x->value);
        break;
      case Kind::Var:
        r = realize_var(x->sym);
        break;
      case Kind::Sum:
        r = go(x->kids[0]);
        for (std::size_t i = 1; i < x->kids.size(); ++i) r = realize_sum(r, go(x->kids[i]));
        break;
      case Kind::Product:
        r = go(x->kids[0]);
        for (std::size_t i = 1; i < x->kids.size(); ++i) r = realize_product(r, go(x->kids[i]));
        break;
      case Kind::Neg:
        r = realize_scale(Cyclotomic(-1L), go(x->kids[0]));
        break;
      case Kind::Scale:
        r = realize_scale(x->value, go(x->kids[0]));
        break;
      case Kind::Inverse:
        r = realize_inverse(go(x->kids[0]));
        break;
      case Kind::Adjoint:
        if (x->kids[0]->kind != Kind::Var) throw NotLinearAction("adjoint of a compound node");
        r = realize_adjoint(go(x->kids[0]->sym->binding ? expand(x->kids[0]) : x->kids[0]));
        break;
    }
    memo.emplace(x.get(), r);
    return r;
  };
  Realization r = go(e);
  if (opts.require_witness) {
    r.witness = find_witness(r.pencil, opts.budget);
    if (!r.witness) throw DegeneracyNotWitnessed("no invertible evaluation found within the search budget");
  }
  return r;
}

Point random_point(std::mt19937_64& rng, const std::vector<SymbolPtr>& syms, std::size_t m) {
  std::uniform_int_distribution<long> dist(-5, 5);
  Point p;
  for (const auto& s : syms) {
    CMatrix x(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) x(i, j) = dist(rng);
    p[s->name] = x;
  }
  return p;
}

Point random_hermitian_point(std::mt19937_64& rng, const std::vector<SymbolPtr>& syms, std::size_t m) {
  std::uniform_int_distribution<long> dist(-5, 5);
  const Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
  Point p;
  for (const auto& s : syms) {
    CMatrix x(m, m);
    for (std::size_t r = 0; r < m; ++r) {
      x(r, r) = dist(rng);
      for (std::size_t c = r + 1; c < m; ++c) {
        x(r, c) = Cyclotomic(dist(rng)) + Cyclotomic(dist(rng)) * i;
        x(c, r) = x(r, c).conj();
      }
    }
    p[s->name] = x;
  }
  return p;
}

std::vector<std::vector<Cyclotomic>> scalar_candidates(std::size_t d, std::uint64_t seed) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<std::vector<Cyclotomic>> out;
  std::vector<Cyclotomic> t(d);
  out.push_back(t);
  for (std::size_t i = 0; i < d; ++i) t[i] = static_cast<long>(i + 1);
  out.push_back(t);
  for (std::size_t i = 0; i < d; ++i) t[i] = primes[i % 12] * static_cast<long>(1 + i / 12);
  out.push_back(t);
  for (std::size_t i = 0; i < d; ++i) t[i] = (i % 2 ? 1L : -1L) * static_cast<long>(i + 1);
  out.push_back(t);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-5, 5);
  for (int k = 0; k < 24; ++k) {
    for (std::size_t i = 0; i < d; ++i) t[i] = dist(rng);
    out.push_back(t);
  }
  return out;
}

std::optional<Point> find_witness(const Pencil& p, const Budget& budget) {
  for (const auto& t : scalar_candidates(p.syms.size(), budget.seed))
    if (rank(p.at_scalars(t)) == p.n) {
      Point pt;
      for (std::size_t i = 0; i < p.syms.size(); ++i) pt[p.syms[i]->name] = CMatrix::scalar(1, t[i]);
      return pt;
    }
  std::mt19937_64 rng(budget.seed);
  for (std::size_t m = 1; m <= budget.max_size; ++m)
    for (std::size_t a = 0; a < budget.attempts; ++a) {
      Point pt = random_point(rng, p.syms, m);
      if (rank(p.eval(pt, m)) == p.n * m) return pt;
    }
  return std::nullopt;
}

}  // namespace ncinv
