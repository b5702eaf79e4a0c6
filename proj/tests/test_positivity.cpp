#include <doctest.h>

#include <random>

#include "ncinv/positivity.hpp"
#include "support.hpp"

using namespace ncinv;
using ncinv::testing::family;

namespace {

bool same(const Expr& e, const std::string& text, const Alphabet& a) {
  return nc_equal(e, parse_expr(text, a)).verdict == Verdict::EqualProven;
}

bool same(const Expr& e, const Expr& f) { return nc_equal(e, f).verdict == Verdict::EqualProven; }

Representation swap_rep() { return natural_permutation(family("S2")); }

/// Z3 permuting three letters with c . x = y.
Representation z3_cycle() {
  GroupPtr g = family("Z3");
  const Representation p = natural_permutation(g);
  Representation r{g, 3, {}};
  for (int k = 0; k < 3; ++k) r.images.push_back(p(g->inv(k)));
  return r;
}

CMatrix eval_matrix(const ExprMatrix& m, const Point& pt) {
  const std::size_t n = m.size();
  const std::size_t s = pt.begin()->second.rows();
  CMatrix out(n * s, n * s);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set_block(i * s, j * s, eval_expr(m[i][j], pt));
  return out;
}

}  // namespace

TEST_CASE("transform for the swap") {
  Alphabet a = Alphabet::standard(2);
  const CertificateTransform t = build_R(swap_rep(), a);
  const Cyclotomic h = Cyclotomic(1) / Cyclotomic::sqrt_nat(2);
  CHECK(same(t.r[0][0], constant(h)));
  CHECK(same(t.r[0][1], scale(h, parse_expr("x - y", a))));
  CHECK(same(t.r[1][0], constant(-h)));
  CHECK(same(t.r[1][1], scale(h, parse_expr("x - y", a))));
  REQUIRE(t.stages.size() == 1);
  CHECK(t.stages[0].m_words.size() == 2);
}

TEST_CASE("R times its inverse is the identity") {
  for (int which = 0; which < 3; ++which) {
    Alphabet a = Alphabet::standard(which == 1 ? 3 : 2);
    Representation rho = which == 0 ? swap_rep() : which == 1 ? z3_cycle() : swap_rep();
    const CertificateTransform t = build_R(rho, a, which != 2);
    std::mt19937_64 rng(3);
    int checked = 0;
    while (checked < 3) {
      const Point pt = random_point(rng, a.base(), 2);
      try {
        const CMatrix r = eval_matrix(t.r, pt), ri = eval_matrix(t.r_inv, pt);
        CHECK((r * ri).is_identity());
        CHECK((ri * r).is_identity());
        ++checked;
      } catch (const SingularAtPoint&) {
      }
    }
  }
}

TEST_CASE("invariant constraints for the swap") {
  Alphabet a = Alphabet::standard(2);
  const CertificateTransform t = build_R(swap_rep(), a);
  {
    const auto q = build_QG(named_constraint("entire", a), t, a).q;
    CHECK(same(q[0][0], "1", a));
    CHECK(is_const(q[0][1], Cyclotomic()));
    CHECK(same(q[1][1], "(x - y)^2", a));
  }
  {
    const auto q = build_QG(named_constraint("disk", a), t, a).q;
    CHECK(same(q[0][0], "1 - x^2 - y^2", a));
    CHECK(is_const(q[1][0], Cyclotomic()));
    CHECK(same(q[1][1], "(x - y)*(1 - x^2 - y^2)*(x - y)", a));
  }
  {
    const auto q = build_QG(named_constraint("bidisk", a), t, a).q;
    REQUIRE(q.size() == 4);
    CHECK(same(q[0][0], "1 - 1/2*(x^2 + y^2)", a));
    CHECK(same(q[1][1], "1 - 1/2*(x^2 + y^2)", a));
    CHECK(same(q[0][2], "1/2*(y^2 - x^2)*(x - y)", a));
    CHECK(same(q[1][3], "1/2*(x^2 - y^2)*(x - y)", a));
    CHECK(same(q[2][2], "1/2*(x - y)*(2 - x^2 - y^2)*(x - y)", a));
    for (auto [i, j] : {std::pair{0, 1}, {0, 3}, {1, 2}, {2, 3}}) CHECK(is_const(q[i][j], Cyclotomic()));
  }
  {
    // 2 Q_G = [[a, 0, b, 0], [0, a, 0, -b], [b*, 0, c, 0], [0, -b*, 0, c]]
    const auto q = build_QG(named_constraint("orthant", a), t, a).q;
    CHECK(same(q[0][0], "1/2*(x + y)", a));
    CHECK(same(q[1][1], "1/2*(x + y)", a));
    CHECK(same(q[0][2], "1/2*(x - y)^2", a));
    CHECK(same(q[1][3], "-1/2*(x - y)^2", a));
    CHECK(same(q[2][2], "1/2*(x - y)*(x + y)*(x - y)", a));
    CHECK(same(q[3][3], "1/2*(x - y)*(x + y)*(x - y)", a));
    for (auto [i, j] : {std::pair{0, 1}, {0, 3}, {1, 2}, {2, 3}}) CHECK(is_const(q[i][j], Cyclotomic()));
  }
  {
    const auto q = build_QG(named_constraint("disk-lmi", a), t, a).q;
    REQUIRE(q.size() == 6);
    CHECK(same(q[0][2], "1/2*(x + y)", a));
    CHECK(same(q[4][5], "1/2*(x - y)*(x + y)*(x - y)", a));
  }
}

TEST_CASE("twist does not change the invariant constraint") {
  Alphabet a = Alphabet::standard(2);
  const auto q1 = build_QG(named_constraint("bidisk", a), build_R(swap_rep(), a, true), a).q;
  const auto q2 = build_QG(named_constraint("bidisk", a), build_R(swap_rep(), a, false), a).q;
  for (std::size_t i = 0; i < q1.size(); ++i)
    for (std::size_t j = 0; j < q1.size(); ++j) CHECK(same(q1[i][j], q2[i][j]));
}

TEST_CASE("cyclic group of order three") {
  Alphabet a = Alphabet::standard(3);
  const CertificateTransform t = build_R(z3_cycle(), a);
  const auto q = build_QG(named_constraint("entire", a), t, a).q;
  REQUIRE(q.size() == 3);
  const Cyclotomic w = Cyclotomic::root_of_unity(3, 1);
  const Expr q1 = add({a.base_var(0), scale(w * w, a.base_var(1)), scale(w, a.base_var(2))});
  const Expr q2 = adj(q1);
  CHECK(same(q[0][0], "1", a));
  CHECK(same(q[1][1], mul(q2, q1)));
  CHECK(same(q[2][2], mul(q1, q2)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(is_const(q[i][j], Cyclotomic()));
}

TEST_CASE("invariant constraints are invariant") {
  for (int which = 0; which < 2; ++which) {
    Alphabet a = Alphabet::standard(which == 0 ? 2 : 3);
    const Representation rho = which == 0 ? swap_rep() : z3_cycle();
    const CertificateTransform t = build_R(rho, a);
    const auto q = build_QG(named_constraint(which == 0 ? "bidisk" : "ball", a), t, a).q;
    for (int g = 0; g < rho.group->order(); ++g)
      for (const auto& row : q)
        for (const auto& e : row) CHECK(same(act_element(rho, g, e, a), e));
  }
}

TEST_CASE("non-real representations are rejected") {
  Alphabet a = Alphabet::standard(2);
  CHECK_THROWS_AS(build_R(ncinv::testing::z3_diagonal(), a), NotUnitary);
}

TEST_CASE("constraint matrices must be symmetric") {
  Alphabet a = Alphabet::standard(2);
  CHECK_THROWS_AS(make_constraint("bad", {{parse_expr("x", a), parse_expr("y", a)}, {parse_expr("x", a), parse_expr("y", a)}}, a),
                  FormatError);
  CHECK_THROWS_AS(make_constraint("bad", {{parse_expr("x*y", a)}}, a), FormatError);
  CHECK_THROWS_AS(named_constraint("nowhere", a), FormatError);
}

TEST_CASE("characteristic polynomial and semidefiniteness") {
  CMatrix a(2, 2);
  a(0, 0) = Cyclotomic(2);
  a(0, 1) = Cyclotomic(1);
  a(1, 0) = Cyclotomic(1);
  a(1, 1) = Cyclotomic(2);
  const auto c = characteristic_polynomial(a);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == Cyclotomic(3));
  CHECK(c[1] == Cyclotomic(-4));
  CHECK(c[2] == Cyclotomic(1));
  CHECK(is_psd(a));
  a(0, 1) = Cyclotomic(2);
  a(1, 0) = Cyclotomic(2);
  CHECK(is_psd(a));  // eigenvalues 4 and 0
  a(0, 1) = Cyclotomic(3);
  a(1, 0) = Cyclotomic(3);
  CHECK_FALSE(is_psd(a));
  a(0, 1) = Cyclotomic::root_of_unity(4, 1);
  a(1, 0) = a(0, 1).conj();
  CHECK(is_hermitian(a));
  CHECK(is_psd(a));
  a(0, 1) = Cyclotomic::root_of_unity(8, 1);
  CHECK_THROWS_AS(is_psd(a), DimensionMismatch);
}

TEST_CASE("bordered form of a hermitian square") {
  Alphabet a = Alphabet::standard(2);
  std::mt19937_64 rng(17);
  for (const char* text : {"x + y", "x*y - 2", "inv(3 + x^2)*y", "1 + x*inv(2 + y^2)*x"}) {
    const Expr s = parse_expr(text, a);
    const SosBlock b = sos_block_realization(realize(s));
    CHECK(is_hermitian(b.middle));
    CHECK(is_psd(b.middle));
    CHECK((b.p.adjoint() * b.p) == b.middle);
    CHECK_MESSAGE(same(b.as_expr(), mul(adj(s), s)), text);
    for (int k = 0; k < 3; ++k) {
      const Point pt = random_hermitian_point(rng, a.base(), 2);
      const CMatrix v = eval_expr(s, pt);
      CHECK(b.bordered.eval(pt) == v.adjoint() * v);
    }
  }
}

TEST_CASE("invariant rewriting of sums of squares") {
  Alphabet a = Alphabet::standard(2);
  {
    const SosDecomposition d = invariant_sos_rewrite({parse_expr("x + y", a)}, swap_rep(), a);
    CHECK(d.points_checked == 5);
    REQUIRE(d.terms.size() == 1);
    CHECK(same(d.terms[0].weight, "1", a));
    CHECK(same(d.terms[0].s, "x + y", a));
  }
  {
    const SosDecomposition d = invariant_sos_rewrite({a.base_var(0), a.base_var(1)}, swap_rep(), a);
    REQUIRE(d.terms.size() == 4);
    std::vector<Expr> parts;
    for (const auto& t : d.terms) parts.push_back(mul({adj(t.s), t.weight, t.s}));
    CHECK(same(add(parts), "x^2 + y^2", a));
    CHECK(same(d.terms[1].weight, "(x - y)^2", a));
  }
  CHECK_THROWS_AS(invariant_sos_rewrite({a.base_var(0)}, swap_rep(), a), NotInvariant);
}

TEST_CASE("invariant rewriting for the three-cycle") {
  Alphabet a = Alphabet::standard(3);
  const Cyclotomic w = Cyclotomic::root_of_unity(3, 1);
  const Expr q1 = add({a.base_var(0), scale(w * w, a.base_var(1)), scale(w, a.base_var(2))});
  // q1* q1 + q1 q1* is invariant; as squares: s1 = q1, s2 = q1*
  const SosDecomposition d = invariant_sos_rewrite({q1, adj(q1)}, z3_cycle(), a);
  CHECK(d.points_checked == 5);
  std::vector<Expr> parts;
  for (const auto& v : d.vectors)
    for (std::size_t i = 0; i < v.size(); ++i) parts.push_back(mul({adj(v[i]), d.qg.q[i][i], v[i]}));
  CHECK(same(add(parts), add(mul(adj(q1), q1), mul(q1, adj(q1)))));
}
