#include "doctest.h"

#include <chrono>
#include <random>

#include "ncinv/error.hpp"
#include "ncinv/realization.hpp"

using namespace ncinv;

namespace {

const char* kInverseSumLhs = "x^-1 + y^-1";
const char* kInverseSumRhs = "4*inv(x + y - (x-y)^2 * inv((x-y)*(x+y)*(x-y)) * (x-y)^2)";

// Independent check: both evaluate equally wherever both are defined.
void check_realization_matches(const Expr& e, const Realization& r, std::mt19937_64& rng, const Alphabet& a) {
  int checked = 0;
  for (int it = 0; it < 40 && checked < 3; ++it) {
    Point p = random_point(rng, a.base(), 1 + it % 3);
    try {
      CMatrix x = eval_expr(e, p);
      CHECK(r.eval(p) == x);
      ++checked;
    } catch (const SingularAtPoint&) {
    }
  }
  CHECK(checked == 3);
}

}  // namespace

TEST_CASE("realization of simple expressions") {
  Alphabet a({"x1", "x2"});
  std::mt19937_64 rng(1);
  Expr x = parse_expr("x1", a);
  Realization rx = realize(x);
  CHECK(rx.size() == 2);
  CHECK(rx.c == CMatrix::unit_column(2, 0));
  CHECK(rx.b == CMatrix::unit_column(2, 1));
  check_realization_matches(x, rx, rng, a);

  Expr comm = parse_expr("inv(x1*x2 - x2*x1)", a);
  Realization rc = realize(comm);
  REQUIRE(rc.witness);
  CHECK(rc.witness->at("x1").rows() == 2);
  CHECK(rc.size() == 2 * (2 + 2) + 1);
  check_realization_matches(comm, rc, rng, a);

  const char* samples[] = {"3*x1 - z3*x2*x1 + 1/2", "inv(1 + x1*x1)*x2", "inv(x1 - inv(x2 + 2))", "adj(z4*x1*x2)"};
  for (const char* s : samples) {
    Expr e = parse_expr(s, a);
    check_realization_matches(e, realize(e), rng, a);
  }
}

TEST_CASE("realization sizes") {
  Alphabet a({"x1", "x2"});
  Realization r1 = realize(parse_expr("x1", a)), r2 = realize(parse_expr("x2 + 1", a));
  CHECK(realize_sum(r1, r2).size() == r1.size() + r2.size());
  CHECK(realize_product(r1, r2).size() == r1.size() + r2.size());
  CHECK(realize_inverse(r2).size() == r2.size() + 1);
}

TEST_CASE("inverse sum identity scalar check") {
  Alphabet a = Alphabet::standard(2);
  Realization r = realize(parse_expr(kInverseSumLhs, a));
  Point p{{"x", CMatrix::scalar(1, 1L)}, {"y", CMatrix::scalar(1, 2L)}};
  CHECK(r.eval(p) == CMatrix::scalar(1, Rational(3, 2)));
}

TEST_CASE("series") {
  Alphabet a({"x1", "x2"});
  SeriesTable g = series(realize(parse_expr("inv(1 - x1)", a)), 6);
  for (std::size_t k = 0; k <= 6; ++k) CHECK(g.coefficients.at(std::vector<int>(k, 0)) == Cyclotomic(1L));
  CHECK(g.coefficients.size() == 7);
  SeriesTable m = series(realize(parse_expr("x1*x2", a)), 4);
  REQUIRE(m.coefficients.size() == 1);
  CHECK(m.coefficients.begin()->first == std::vector<int>{0, 1});
  CHECK(m.coefficients.begin()->second == Cyclotomic(1L));

  // The S2 generators a = x + y, b = (x-y)^2, c = (x-y)(x+y)(x-y).
  Alphabet b = Alphabet::standard(2);
  b.derive("a", parse_expr("x + y", b));
  b.derive("b", parse_expr("(x - y)^2", b));
  b.derive("c", parse_expr("(x - y)*(x + y)*(x - y)", b));
  Realization lhs = realize(parse_expr(kInverseSumLhs, b));
  Realization rhs = realize(parse_expr("4*inv(a - b*inv(c)*b)", b));
  std::vector<Cyclotomic> center{1L, 2L};
  // All words up to the full bound would be 2^(n1+n2); compare a prefix here,
  // the equality oracle covers the full bound through the reachable subspace.
  const std::size_t deg = 8;
  SeriesTable s1 = series(lhs, deg, center), s2 = series(rhs, deg, center);
  CHECK(s1.coefficients == s2.coefficients);
  CHECK(!s1.coefficients.empty());
}

TEST_CASE("equality oracle") {
  Alphabet a = Alphabet::standard(2);
  auto start = std::chrono::steady_clock::now();
  EqualityResult inv_sum = nc_equal(parse_expr(kInverseSumLhs, a), parse_expr(kInverseSumRhs, a));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(inv_sum.verdict == Verdict::EqualProven);
  CHECK(secs < 10.0);

  Alphabet b({"x1", "x2"});
  EqualityResult d = nc_equal(parse_expr("x1*x2", b), parse_expr("x2*x1", b));
  CHECK(d.verdict == Verdict::Distinct);
  REQUIRE(d.witness);
  CHECK(d.witness->at("x1").rows() >= 2);
  CHECK(eval_expr(parse_expr("x1*x2 - x2*x1", b), *d.witness) != CMatrix(d.witness->at("x1").rows(), d.witness->at("x1").rows()));

  Expr e = parse_expr("inv(x1 + 2*x2*x1) - x2", b);
  CHECK(nc_equal(e, e).verdict == Verdict::EqualProven);
  // symmetry and a transitivity spot check
  Expr f = parse_expr("inv(x1) - inv(1 + x2)*x2*inv(x1)", b);
  Expr g = parse_expr("inv(x1 + x1*x2)", b);
  Expr h = parse_expr("inv(1 + x2)*inv(x1)", b);
  CHECK(nc_equal(g, h).verdict == Verdict::EqualProven);
  CHECK(nc_equal(h, g).verdict == Verdict::EqualProven);
  CHECK(nc_equal(f, h).verdict == Verdict::EqualProven);
  CHECK(nc_equal(f, g).verdict == Verdict::EqualProven);
  CHECK(nc_equal(parse_expr("(x1 + x2)^2", b), parse_expr("x1^2 + x1*x2 + x2*x1 + x2^2", b)).verdict ==
        Verdict::EqualProven);
}

TEST_CASE("randomized route without a scalar center") {
  Alphabet b({"x1", "x2"});
  Expr c = parse_expr("inv(x1*x2 - x2*x1)", b);
  EqualityResult r = nc_equal(mul(c, parse_expr("x1*x2 - x2*x1", b)), parse_expr("1", b));
  CHECK(r.verdict == Verdict::EqualProbable);
  CHECK(r.points_checked >= 8);
  EqualityResult s = nc_equal(c, parse_expr("inv(x2*x1 - x1*x2)", b));
  CHECK(s.verdict == Verdict::Distinct);
}

TEST_CASE("witness search") {
  Pencil p;
  p.n = 1;
  p.a0 = CMatrix::identity(1);
  auto s = std::make_shared<Symbol>(Symbol{"x", 0, nullptr});
  p.syms = {s};
  p.coeffs = {CMatrix(1, 1)};
  auto w = find_witness(p, Budget());
  REQUIRE(w);
  CHECK(w->at("x") == CMatrix(1, 1));
  Alphabet b({"x1", "x2"});
  CHECK_THROWS_AS(realize(parse_expr("inv(x1 - x1)", b)), DegeneracyNotWitnessed);
}

TEST_CASE("readback") {
  Alphabet a({"x1", "x2"});
  std::mt19937_64 rng(9);
  const char* samples[] = {"x1*x2 + 3", "inv(1 + x1*x2)*x1", "inv(x1 - inv(x2 + 2)) + z3*x2", "inv(x1*x2 - x2*x1)"};
  for (const char* s : samples) {
    Expr e = parse_expr(s, a);
    Realization r = realize(e);
    Expr back = realization_to_expr(r);
    CHECK(nc_equal(e, back).verdict != Verdict::Distinct);
    check_realization_matches(back, r, rng, a);
  }
}
