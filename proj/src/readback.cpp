#include "ncinv/error.hpp"
#include "ncinv/realization.hpp"

namespace ncinv {

Expr realization_to_expr(const Realization& r) {
  const Pencil& p = r.pencil;
  const std::size_t n = p.n;
  std::optional<Point> w = r.witness;
  if (!w) w = find_witness(p, Budget());
  if (!w) throw DegeneracyNotWitnessed("readback needs an invertible evaluation point");
  const std::size_t m = w->empty() ? 1 : w->begin()->second.rows();

  std::vector<Expr> vars;
  std::vector<CMatrix> vals;
  for (const auto& s : p.syms) {
    vars.push_back(var(s));
    auto it = w->find(s->name);
    vals.push_back(it != w->end() ? it->second : eval_expr(vars.back(), *w));
  }
  // Augmented system [L | b] with expressions and their values at the witness.
  std::vector<std::vector<Expr>> e(n, std::vector<Expr>(n + 1));
  std::vector<std::vector<CMatrix>> v(n, std::vector<CMatrix>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Expr> terms;
      CMatrix val = CMatrix::scalar(m, p.a0(i, j));
      if (!p.a0(i, j).is_zero()) terms.push_back(constant(p.a0(i, j)));
      for (std::size_t k = 0; k < p.syms.size(); ++k) {
        const Cyclotomic& a = p.coeffs[k](i, j);
        if (a.is_zero()) continue;
        terms.push_back(scale(a, vars[k]));
        val += a * vals[k];
      }
      e[i][j] = add(std::move(terms));
      v[i][j] = std::move(val);
    }
    e[i][n] = constant(r.b(i, 0));
    v[i][n] = CMatrix::scalar(m, r.b(i, 0));
  }
  auto zero = [](const Expr& x) { return is_const(x, Cyclotomic()); };

  std::vector<bool> row_done(n, false), col_done(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::vector<Expr> pivot_inv(n);
  for (std::size_t step = 0; step < n; ++step) {
    long pi = -1, pj = -1;
    // constant pivots first, then any pivot invertible at the witness
    for (int pass = 0; pass < 2 && pi < 0; ++pass)
      for (std::size_t i = 0; i < n && pi < 0; ++i) {
        if (row_done[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (col_done[j] || zero(e[i][j])) continue;
          if (pass == 0 && e[i][j]->kind != Kind::Const) continue;
          if (rank(v[i][j]) != m) continue;
          pi = static_cast<long>(i);
          pj = static_cast<long>(j);
          break;
        }
      }
    if (pi < 0) throw SingularAtPoint("no pivot invertible at the witness");
    const std::size_t i = pi, j = pj;
    const Expr pinv = inv(e[i][j]);
    const CMatrix pinv_val = inverse(v[i][j]);
    for (std::size_t rr = 0; rr < n; ++rr) {
      if (rr == i || zero(e[rr][j])) continue;
      const Expr f = mul(e[rr][j], pinv);
      const CMatrix fv = v[rr][j] * pinv_val;
      for (std::size_t cc = 0; cc <= n; ++cc) {
        if (cc == j || (cc < n && col_done[cc]) || zero(e[i][cc])) continue;
        e[rr][cc] = sub(e[rr][cc], mul(f, e[i][cc]));
        v[rr][cc] -= fv * v[i][cc];
      }
      e[rr][j] = constant(Cyclotomic());
      v[rr][j] = CMatrix(m, m);
    }
    row_done[i] = col_done[j] = true;
    pivots.emplace_back(i, j);
    pivot_inv[j] = pinv;
  }
  std::vector<Expr> terms;
  for (const auto& [i, j] : pivots) {
    const Cyclotomic cj = r.c(j, 0).conj();
    if (cj.is_zero() || zero(e[i][n])) continue;
    terms.push_back(scale(cj, mul(pivot_inv[j], e[i][n])));
  }
  return add(std::move(terms));
}

}  // namespace ncinv
