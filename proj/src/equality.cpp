#include <deque>

#include "ncinv/error.hpp"
#include "ncinv/realization.hpp"

namespace ncinv {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::EqualProven:
      return "EqualProven";
    case Verdict::EqualProbable:
      return "EqualProbable";
    case Verdict::Distinct:
      return "Distinct";
  }
  return "";
}

namespace {

std::optional<std::vector<Cyclotomic>> regular_center(const Pencil& p, std::uint64_t seed) {
  for (const auto& t : scalar_candidates(p.syms.size(), seed))
    if (rank(p.at_scalars(t)) == p.n) return t;
  return std::nullopt;
}

Cyclotomic inner(const CMatrix& c, const CMatrix& v) {
  Cyclotomic s;
  for (std::size_t i = 0; i < c.rows(); ++i)
    if (!c(i, 0).is_zero() && !v(i, 0).is_zero()) s += c(i, 0).conj() * v(i, 0);
  return s;
}

}  // namespace

SeriesTable series(const Realization& r, std::size_t degree, const std::optional<std::vector<Cyclotomic>>& center) {
  const Pencil& p = r.pencil;
  SeriesTable t;
  t.syms = p.syms;
  if (center) {
    t.center = *center;
    if (rank(p.at_scalars(t.center)) != p.n) throw NoScalarCenter("pencil is singular at the given center");
  } else {
    auto c = regular_center(p, 1);
    if (!c) throw NoScalarCenter("no scalar point makes the pencil invertible");
    t.center = *c;
  }
  const CMatrix l0 = p.at_scalars(t.center);
  const CMatrix v0 = solve(l0, r.b);
  std::vector<CMatrix> ts;
  for (const auto& a : p.coeffs) ts.push_back(solve(l0, a));
  // u_w = T_{w1} ... T_{wk} v0; coefficient (-1)^k c* u_w
  std::vector<std::pair<std::vector<int>, CMatrix>> layer{{{}, v0}};
  for (std::size_t k = 0; k <= degree; ++k) {
    const Cyclotomic sign = (k % 2) ? Cyclotomic(-1L) : Cyclotomic(1L);
    std::vector<std::pair<std::vector<int>, CMatrix>> next;
    for (const auto& [w, u] : layer) {
      const Cyclotomic coef = sign * inner(r.c, u);
      if (!coef.is_zero()) t.coefficients[w] = coef;
      if (k == degree) continue;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        std::vector<int> w2{static_cast<int>(i)};
        w2.insert(w2.end(), w.begin(), w.end());
        next.emplace_back(std::move(w2), ts[i] * u);
      }
    }
    layer = std::move(next);
  }
  return t;
}

Realization realize_difference(const Realization& r1, const Realization& r2) {
  return realize_sum(r1, realize_scale(Cyclotomic(-1L), r2));
}

std::optional<bool> is_zero_at_center(const Realization& r, std::vector<Cyclotomic>* center_out, std::uint64_t seed) {
  const Pencil& p = r.pencil;
  auto center = regular_center(p, seed);
  if (!center) return std::nullopt;
  if (center_out) *center_out = *center;
  const CMatrix l0 = p.at_scalars(*center);
  const CMatrix l0inv = inverse(l0);
  std::vector<CMatrix> ts;
  for (const auto& a : p.coeffs) ts.push_back(l0inv * a);
  // Reachable subspace from L0^-1 b, kept in echelon form.
  std::vector<std::pair<std::size_t, CMatrix>> echelon;
  auto reduce = [&](CMatrix v) {
    for (const auto& [piv, e] : echelon)
      if (!v(piv, 0).is_zero()) v -= v(piv, 0) * e;
    return v;
  };
  std::deque<CMatrix> queue{l0inv * r.b};
  while (!queue.empty()) {
    CMatrix v = reduce(queue.front());
    queue.pop_front();
    std::size_t piv = 0;
    while (piv < v.rows() && v(piv, 0).is_zero()) ++piv;
    if (piv == v.rows()) continue;
    v *= v(piv, 0).inv();
    for (auto& [q, e] : echelon)
      if (!e(piv, 0).is_zero()) e -= e(piv, 0) * v;
    if (!inner(r.c, v).is_zero()) return false;
    echelon.emplace_back(piv, v);
    for (const auto& t : ts) queue.push_back(t * v);
  }
  return true;
}

namespace {

std::optional<Point> distinguishing_point(const Realization& r1, const Realization& r2, const Budget& budget) {
  std::vector<SymbolPtr> syms = r1.pencil.syms;
  for (const auto& s : r2.pencil.syms)
    if (r1.pencil.index_of(s) < 0) syms.push_back(s);
  std::mt19937_64 rng(budget.seed);
  const std::size_t top = std::max<std::size_t>(budget.max_size, 2);
  for (std::size_t m = 1; m <= top; ++m)
    for (std::size_t a = 0; a < std::max<std::size_t>(budget.attempts, 8); ++a) {
      Point pt = random_point(rng, syms, m);
      try {
        if (r1.eval(pt) != r2.eval(pt)) return pt;
      } catch (const SingularAtPoint&) {
      }
    }
  return std::nullopt;
}

}  // namespace

EqualityResult nc_equal(const Realization& r1, const Realization& r2, const Budget& budget) {
  EqualityResult res;
  res.size1 = r1.size();
  res.size2 = r2.size();
  const Realization d = realize_difference(r1, r2);
  auto zero = is_zero_at_center(d, &res.center, budget.seed);
  if (zero) {
    if (*zero) {
      res.verdict = Verdict::EqualProven;
      return res;
    }
    res.verdict = Verdict::Distinct;
    res.center.clear();
    res.witness = distinguishing_point(r1, r2, budget);
    return res;
  }
  // No common scalar regular point: randomized comparison.
  std::vector<SymbolPtr> syms = d.pencil.syms;
  std::mt19937_64 rng(budget.seed);
  const std::size_t top = std::max<std::size_t>(1, std::min(budget.max_size, std::max(res.size1, res.size2)));
  std::size_t tries = 0;
  while (res.points_checked < budget.points && tries < budget.points * 20) {
    const std::size_t m = 1 + tries % top;
    ++tries;
    Point pt = random_point(rng, syms, m);
    try {
      if (r1.eval(pt) != r2.eval(pt)) {
        res.verdict = Verdict::Distinct;
        res.witness = pt;
        return res;
      }
      ++res.points_checked;
    } catch (const SingularAtPoint&) {
    }
  }
  if (res.points_checked == 0) throw DegeneracyNotWitnessed("no common evaluation point found");
  res.verdict = Verdict::EqualProbable;
  return res;
}

EqualityResult nc_equal(const Expr& e1, const Expr& e2, const Budget& budget) {
  RealizeOptions opts;
  opts.budget = budget;
  return nc_equal(realize(e1, opts), realize(e2, opts), budget);
}

}  // namespace ncinv
