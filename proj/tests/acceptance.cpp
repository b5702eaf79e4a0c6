// Acceptance run: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs; the exit code is nonzero when a criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ncinv/error.hpp"
#include "ncinv/io.hpp"
#include "support.hpp"

using namespace ncinv;
using ncinv::testing::family;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

// Point moved by g: X_i -> sum_j g_ij X_j, so that s(moved) = act(g, s)(X).
Point moved_point(const CMatrix& g, const Point& pt, const Alphabet& a) {
  Point out;
  const std::size_t m = pt.begin()->second.rows();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    CMatrix v(m, m);
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!g(i, j).is_zero()) v += pt.at(a.base()[j]->name) * g(i, j);
    out[a.base()[i]->name] = v;
  }
  return out;
}

// Every expression is fixed by every element, checked at `points` random points.
bool act_then_compare(const Representation& rho, const std::vector<Expr>& es, const Alphabet& a, int points,
                      std::uint64_t seed, bool hermitian, std::string& why) {
  std::mt19937_64 rng(seed);
  for (int k = 0, tries = 0; k < points; ++tries) {
    if (tries > 20 * points) {
      why = "too many singular points";
      return false;
    }
    const Point pt = hermitian ? random_hermitian_point(rng, a.base(), 2) : random_point(rng, a.base(), 2);
    try {
      const auto base = eval_exprs(es, pt);
      for (int g = 0; g < rho.group->order(); ++g) {
        const auto moved = eval_exprs(es, moved_point(rho(g), pt, a));
        for (std::size_t i = 0; i < es.size(); ++i)
          if (moved[i] != base[i]) {
            why = "entry " + std::to_string(i) + " moves under " + rho.group->name(g);
            return false;
          }
      }
    } catch (const SingularAtPoint&) {
      continue;
    }
    ++k;
  }
  return true;
}

bool equal_enough(const Expr& e, const Expr& f) {
  const EqualityResult r = nc_equal(e, f);
  return r.verdict == Verdict::EqualProven || (r.verdict == Verdict::EqualProbable && r.points_checked >= 8);
}

// -- criteria ---------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  Alphabet a = Alphabet::standard(2);
  const auto t0 = std::chrono::steady_clock::now();
  const EqualityResult r =
      nc_equal(parse_expr("inv(x) + inv(y)", a),
               parse_expr("4*inv(x + y - (x - y)^2*inv((x - y)*(x + y)*(x - y))*(x - y)^2)", a));
  const double s = seconds_since(t0);
  if (r.verdict != Verdict::EqualProven) o.fail("verdict " + verdict_name(r.verdict));
  if (s >= 10) o.fail("took " + fmt(s));
  if (o.pass) o.detail = "EqualProven in " + fmt(s);
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::vector<std::string> got;
  auto count = [&](const std::string& label, std::size_t n, std::size_t want) {
    got.push_back(label + " " + std::to_string(n));
    if (n != want) o.fail(label + " gave " + std::to_string(n) + ", want " + std::to_string(want));
  };
  {
    Alphabet a = Alphabet::standard(2);
    count("S2", abelian_generators(natural_permutation(family("S2")), a, AbelianMode::Schreier).generators.size(), 3);
  }
  {
    Alphabet a = Alphabet::standard(2);
    count("Z3", abelian_generators(ncinv::testing::z3_diagonal(), a, AbelianMode::Schreier).generators.size(), 4);
  }
  {
    Alphabet a = Alphabet::standard(3);
    count("S3 perm", complete_generators(natural_permutation(family("S3")), a).generators.size(), 13);
  }
  {
    // two-dimensional D4: the listed nine generators, checked invariant,
    // and the Schreier count for the characters of w1..w5
    CMatrix ra(2, 2), rb(2, 2);
    ra(0, 0) = Cyclotomic::root_of_unity(4, 1);
    ra(1, 1) = Cyclotomic::root_of_unity(4, 3);
    rb(0, 1) = 1;
    rb(1, 0) = 1;
    const Representation r = matrix_group({ra, rb});
    Alphabet a = Alphabet::standard(2);
    auto p = [&](const char* s) { return parse_expr(s, a); };
    const Expr z1 = p("x*y"), z2 = p("y*x"), z3 = p("x^2*y^2"), z4 = p("y^2*x^2"), z5 = p("x^2*inv(y^2)");
    const Expr one = constant(Cyclotomic(1));
    const std::vector<Expr> w{add(z1, z2), sub(z1, z2), add(z3, z4), sub(z3, z4),
                              mul(add(one, z5), inv(sub(one, z5)))};
    const std::vector<Expr> nine{w[0],          mul(w[1], w[1]), mul({w[1], w[0], w[1]}), mul({w[1], w[2], w[1]}),
                                 mul(w[1], w[3]), mul(w[1], w[4]), w[2],                   mul(w[3], w[1]),
                                 mul(w[4], w[1])};
    std::string why;
    if (!act_then_compare(r, nine, a, 5, 2, false, why)) o.fail("D4 list: " + why);
    std::vector<AbelianElem> chars;
    for (int s : {0, 1, 0, 1, 1}) chars.push_back({{static_cast<long>(s)}});
    count("D4", schreier_free_generators(chars, {2}).generators.size(), 9);
  }
  {
    Alphabet a = Alphabet::standard(6);
    count("S3 regular", complete_generators(left_regular(family("S3")), a).generators.size(), 31);
  }
  if (o.pass) {
    std::string s;
    for (const auto& g : got) s += (s.empty() ? "" : ", ") + g;
    o.detail = s;
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t gens = 0, reps = 0;
  auto run = [&](const std::string& label, const Representation& rho, bool abelian) {
    Alphabet a = Alphabet::standard(rho.degree);
    const InvariantBasis ib = abelian ? abelian_generators(rho, a, AbelianMode::Schreier) : complete_generators(rho, a);
    if (ib.generators.size() != ib.expected) o.fail(label + ": count " + std::to_string(ib.generators.size()));
    std::vector<Expr> es;
    for (const auto& s : ib.symbols) es.push_back(var(s));
    std::string why;
    if (!act_then_compare(rho, es, a, 5, 11 + reps, false, why)) o.fail(label + ": " + why);
    gens += es.size();
    ++reps;
  };
  for (int n = 2; n <= 12; ++n)
    run("Z" + std::to_string(n), named_representation(family("Z" + std::to_string(n)), "diagonal"), true);
  {
    CMatrix a(2, 2), b(2, 2);
    a(0, 0) = -1;
    a(1, 1) = 1;
    b(0, 0) = 1;
    b(1, 1) = -1;
    run("Z2xZ2", matrix_group({a, b}), true);
  }
  for (const char* f : {"S3", "S4", "D4", "D5", "D6"}) run(f, natural_permutation(family(f)), false);
  const double s = seconds_since(t0);
  if (s >= 600) o.fail("took " + fmt(s));
  if (o.pass)
    o.detail = std::to_string(gens) + " generators over " + std::to_string(reps) + " representations, 5 points each, " +
               fmt(s);
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::set<std::string> names;
  for (const auto& n : catalog_names()) names.insert(n);
  names.insert("S4");
  for (int n = 3; n <= 8; ++n) names.insert("D" + std::to_string(n));
  std::size_t abelian = 0;
  for (const auto& n : names) {
    const FiniteGroup g = make_group(n);
    if (g.is_abelian()) ++abelian;
    if (!is_totally_unramified(g).ok) o.fail(n + " reported not totally unramified");
  }
  if (is_totally_unramified(make_group("SL(2,3)")).ok) o.fail("SL(2,3) reported totally unramified");
  if (o.pass)
    o.detail = std::to_string(names.size()) + " groups true (" + std::to_string(abelian) +
               " abelian), SL(2,3) false";
  return o;
}

// cycle type of a permutation, longest cycles first; fixed points dropped
std::vector<int> cycle_type(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<int> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    if (len > 1) out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

using Table = std::vector<std::vector<long>>;

// Rows of `got` equal the rows of `want` as sets once columns are put in `cols` order.
bool rows_match(const CharacterTable& t, const std::vector<int>& cols, const Table& want) {
  std::multiset<std::vector<long>> a, b(want.begin(), want.end());
  for (const auto& row : t.rows) {
    std::vector<long> r;
    for (int c : cols) {
      const Cyclotomic v = row[c].canonical();
      if (!v.is_rational() || v.rational().get_den() != 1) return false;
      r.push_back(v.rational().get_num().get_si());
    }
    a.insert(r);
  }
  return a == b;
}

Outcome criterion5() {
  Outcome o;
  {
    // columns: {}, {2}, {2,2}, {3}, {4}
    const Table s4{{1, 1, 1, 1, 1}, {1, -1, 1, 1, -1}, {3, 1, -1, 0, -1}, {3, -1, -1, 0, 1}, {2, 0, 2, -1, 0}};
    const FiniteGroup g = make_group("S4");
    const CharacterTable t = character_table(g);
    const std::map<std::vector<int>, int> column{{{}, 0}, {{2}, 1}, {{2, 2}, 2}, {{3}, 3}, {{4}, 4}};
    std::vector<int> cols(5, -1);
    for (std::size_t c = 0; c < t.classes.size(); ++c) cols[column.at(cycle_type(g.perms()[t.classes[c][0]]))] = c;
    if (!rows_match(t, cols, s4)) o.fail("S4 table differs");
  }
  {
    const Table v{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    const CharacterTable t = character_table(make_group("V"));
    std::vector<int> cols{0, 1, 2, 3};
    bool found = false;
    do found = found || rows_match(t, cols, v);
    while (std::next_permutation(cols.begin() + 1, cols.end()));
    if (!found) o.fail("V table differs");
  }
  if (o.pass) o.detail = "S4 by cycle type, V up to a column permutation";
  return o;
}

/// Z3 permuting three letters with c . x = y.
Representation z3_cycle() {
  GroupPtr g = family("Z3");
  const Representation p = natural_permutation(g);
  Representation r{g, 3, {}};
  for (int k = 0; k < 3; ++k) r.images.push_back(p(g->inv(k)));
  return r;
}

Outcome criterion6() {
  Outcome o;
  int compared = 0;
  auto expect = [&](const std::string& label, const Expr& got, const Expr& want) {
    ++compared;
    if (!equal_enough(expand(got), expand(want))) o.fail(label);
  };
  {
    Alphabet al = Alphabet::standard(2);
    auto p = [&](const std::string& s) { return parse_expr(s, al); };
    al.derive("a", p("x + y"));
    al.derive("b", p("(x - y)^2"));
    al.derive("c", p("(x - y)*(x + y)*(x - y)"));
    const Representation rho = natural_permutation(family("S2"));
    const CertificateTransform t = build_R(rho, al);
    const Cyclotomic h = Cyclotomic(1) / Cyclotomic::sqrt_nat(2);
    const char* r_printed[2][2] = {{"1", "x - y"}, {"-1", "x - y"}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) expect("S2 R", t.r[i][j], scale(h, p(r_printed[i][j])));

    auto compare = [&](const std::string& label, const ExprMatrix& got, const std::vector<std::vector<std::string>>& want,
                       const Cyclotomic& factor) {
      if (got.size() != want.size()) return o.fail(label + " has the wrong size");
      for (std::size_t i = 0; i < want.size(); ++i)
        for (std::size_t j = 0; j < want.size(); ++j) expect(label, got[i][j], scale(factor, p(want[i][j])));
    };
    const Cyclotomic half = Cyclotomic(Rational(1, 2));
    compare("entire", build_QG(named_constraint("entire", al), t, al).q, {{"1", "0"}, {"0", "b"}}, 1);
    compare("disk", build_QG(named_constraint("disk", al), t, al).q,
            {{"1 - 1/2*(a^2 + b)", "0"}, {"0", "b - 1/2*(c*inv(b)*c + b^2)"}}, 1);
    compare("disk LMI", build_QG(named_constraint("disk-lmi", al), t, al).q,
            {{"2", "0", "a", "0", "0", "b"},
             {"0", "2", "a", "0", "0", "-b"},
             {"a", "a", "2", "b", "-b", "0"},
             {"0", "0", "b", "2*b", "0", "c"},
             {"0", "0", "-b", "0", "2*b", "c"},
             {"b", "-b", "0", "c", "c", "2*b"}},
            half);
    compare("bidisk", build_QG(named_constraint("bidisk", al), t, al).q,
            {{"2 - 1/2*(a^2 + b)", "0", "-1/2*(c + a*b)", "0"},
             {"0", "2 - 1/2*(a^2 + b)", "0", "1/2*(c + a*b)"},
             {"-1/2*(c + b*a)", "0", "2*b - 1/2*(c*inv(b)*c + b^2)", "0"},
             {"0", "1/2*(c + b*a)", "0", "2*b - 1/2*(c*inv(b)*c + b^2)"}},
            half);
    {
      // U* (2 Q_G) U with U the signed permutation (0, 2, 1, 3), signs (1, 1, 1, -1)
      const ExprMatrix q = build_QG(named_constraint("orthant", al), t, al).q;
      const int perm[4] = {0, 2, 1, 3};
      const int sign[4] = {1, 1, 1, -1};
      ExprMatrix u(4, std::vector<Expr>(4));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) u[i][j] = scale(Cyclotomic(2 * sign[i] * sign[j]), q[perm[i]][perm[j]]);
      compare("orthant", u, {{"a", "b", "0", "0"}, {"b", "c", "0", "0"}, {"0", "0", "a", "b"}, {"0", "0", "b", "c"}}, 1);
    }
  }
  {
    Alphabet al = Alphabet::standard(3);
    const Representation rho = z3_cycle();
    const CertificateTransform t = build_R(rho, al);
    const Cyclotomic w = Cyclotomic::root_of_unity(3, 1);
    const Expr x = al.base_var(0), y = al.base_var(1), z = al.base_var(2);
    const Expr q1 = add({scale(w, x), scale(w * w, y), z});
    const Expr q2 = add({scale(w * w, x), scale(w, y), z});
    const Cyclotomic g[3][3] = {{1, 1, 1}, {w, w * w, 1}, {w * w, w, 1}};
    const Expr d[3] = {constant(Cyclotomic(1)), q2, q1};
    const Cyclotomic s3 = Cyclotomic(1) / Cyclotomic::sqrt_nat(3);
    ExprMatrix printed(3, std::vector<Expr>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) printed[i][j] = scale(s3 * g[i][j], d[j]);
    const Expr qg_printed[3] = {constant(Cyclotomic(1)), mul(q1, q2), mul(q2, q1)};

    // match rows (group elements) and columns (characters) up to permutation
    // and a root of unity per column, decided at a point and then symbolically
    std::mt19937_64 rng(5);
    const Point pt = random_point(rng, al.base(), 2);
    std::vector<std::vector<CMatrix>> got_v(3), want_v(3);
    for (int i = 0; i < 3; ++i) {
      got_v[i] = eval_exprs(t.r[i], pt);
      want_v[i] = eval_exprs(printed[i], pt);
    }
    std::vector<int> rows{0, 1, 2};
    bool matched = false;
    do {
      std::vector<int> cols(3, -1);
      std::vector<Cyclotomic> unit(3);
      bool ok = true;
      for (int mu = 0; mu < 3 && ok; ++mu) {
        bool found = false;
        for (int nu = 0; nu < 3 && !found; ++nu)
          for (int k = 0; k < 6 && !found; ++k) {
            const Cyclotomic u = Cyclotomic::root_of_unity(6, k);
            bool all = true;
            for (int i = 0; i < 3 && all; ++i) all = got_v[i][mu] == want_v[rows[i]][nu] * u;
            if (all) {
              found = true;
              cols[mu] = nu;
              unit[mu] = u;
            }
          }
        ok = found;
      }
      if (!ok || std::set<int>(cols.begin(), cols.end()).size() != 3) continue;
      matched = true;
      for (int i = 0; i < 3; ++i)
        for (int mu = 0; mu < 3; ++mu) expect("Z3 R", t.r[i][mu], scale(unit[mu], printed[rows[i]][cols[mu]]));
      const ExprMatrix qg = build_QG(named_constraint("entire", al), t, al).q;
      for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu)
          expect("Z3 Q_G", qg[mu][nu], mu == nu ? qg_printed[cols[mu]] : constant(Cyclotomic()));
      break;
    } while (std::next_permutation(rows.begin(), rows.end()));
    if (!matched) o.fail("Z3 R has no matching row and column order");
  }
  if (o.pass) o.detail = std::to_string(compared) + " entries equal (S2: R, entire, disk, disk LMI, bidisk, orthant; Z3: R, Q_G)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  Alphabet al = Alphabet::standard(2);
  const Representation rho = natural_permutation(family("S2"));
  const CertificateTransform t = build_R(rho, al);
  for (const char* q : {"entire", "disk"}) {
    std::vector<Expr> entries;
    for (const auto& row : build_QG(named_constraint(q, al), t, al).q) entries.insert(entries.end(), row.begin(), row.end());
    std::string why;
    if (!act_then_compare(rho, entries, al, 5, 21, true, why)) o.fail(std::string(q) + ": " + why);
  }
  if (o.pass) o.detail = "Q = 1 and disk, every entry and element at 5 hermitian points";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(2025);
  struct Case {
    std::string label;
    Representation rep;
  };
  const std::vector<Case> cases{{"S2", natural_permutation(family("S2"))},
                                {"Z3", ncinv::testing::z3_diagonal()},
                                {"S3", natural_permutation(family("S3"))}};
  int done = 0;
  std::size_t largest = 0;
  for (const auto& c : cases)
    for (int k = 0; k < 10; ++k) {
      Alphabet a = Alphabet::standard(c.rep.degree);
      const Expr e = ncinv::testing::symmetrize(c.rep, ncinv::testing::random_expression(rng, a, 3), a);
      try {
        const RewriteResult r = solvable_rewrite(e, c.rep, a);
        largest = std::max(largest, r.realization.size());
        // independent check of the lifted realization against the original
        std::mt19937_64 prng(100 + k);
        for (int m = 0, tries = 0; m < 5 && tries < 100; ++tries) {
          const Point pt = random_point(prng, a.base(), 2);
          try {
            if (r.realization.eval(pt) != eval_expr(e, pt)) {
              o.fail(c.label + " case " + std::to_string(k) + " differs at a point");
              break;
            }
          } catch (const SingularAtPoint&) {
            continue;
          }
          ++m;
          if (m == 5) ++done;
        }
      } catch (const Error& err) {
        o.fail(c.label + " case " + std::to_string(k) + ": " + err.what());
      }
    }
  if (done != 30) o.fail(std::to_string(done) + " of 30 verified");
  if (o.pass) o.detail = "30 of 30 rewrites verified at 5 points, largest realization " + std::to_string(largest);
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(909);
  Alphabet a = Alphabet::standard(2);
  int done = 0, draws = 0;
  std::size_t largest = 0;
  while (done < 10 && draws < 1000) {
    ++draws;
    const Expr s = ncinv::testing::random_expression(rng, a, 3);
    Realization r;
    try {
      r = realize(s);
    } catch (const Error&) {
      continue;
    }
    if (r.size() > 12) continue;
    const SosBlock b = sos_block_realization(r);
    if (!is_psd(b.middle)) o.fail("middle matrix not PSD for " + to_string(s));
    std::mt19937_64 prng(draws);
    int m = 0;
    for (int tries = 0; m < 5 && tries < 100; ++tries) {
      const Point pt = random_hermitian_point(prng, a.base(), 2);
      try {
        const CMatrix v = eval_expr(s, pt);
        if (b.bordered.eval(pt) != v.adjoint() * v) {
          o.fail("bordered form differs for " + to_string(s));
          break;
        }
      } catch (const SingularAtPoint&) {
        continue;
      }
      ++m;
    }
    if (m < 5) o.fail("too few regular points for " + to_string(s));
    largest = std::max(largest, r.size());
    ++done;
  }
  if (done < 10) o.fail("only " + std::to_string(done) + " expressions of size <= 12");
  if (o.pass) o.detail = "10 expressions (largest realization " + std::to_string(largest) + "), 5 hermitian points each, PSD verdicts exact";
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::cout << "  not reproducible: counts of totally unramified groups of order 48, 64 and 243 (no group database;"
               " the catalog stops below order 24)\n";
  std::cout << "  not reproducible: freeness of the invariant generators (no algorithmic test for the absence of"
               " rational relations)\n";
  o.fail("excluded results, covered only by the property suites of criteria 2, 3, 4 and 8");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  std::vector<int> which;
  if (argc > 1) which.push_back(std::atoi(argv[1]));
  else
    for (int k = 1; k <= 10; ++k) which.push_back(k);
  bool all = true;
  for (int k : which) {
    if (k < 1 || k > 10) {
      std::cerr << "criterion must be 1..10\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  ["
              << fmt(seconds_since(t0)) << "]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
