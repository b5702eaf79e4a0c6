#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ncinv/error.hpp"
#include "ncinv/group.hpp"

using namespace ncinv;

namespace {

std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> out;
  for (const auto& c : conjugacy_classes(g)) out.push_back(c.size());
  return out;
}

// Isomorphism-invariant fingerprint: order statistics, center size,
// abelianization size, class sizes, number of normal subgroups.
std::string signature(const FiniteGroup& g) {
  std::map<int, int> orders;
  for (int a = 0; a < g.order(); ++a) ++orders[g.element_order(a)];
  int center = 0;
  for (int a = 0; a < g.order(); ++a) {
    bool c = true;
    for (int b = 0; b < g.order() && c; ++b) c = g.op(a, b) == g.op(b, a);
    center += c;
  }
  std::string s = std::to_string(g.order()) + "|";
  for (auto [o, k] : orders) s += std::to_string(o) + ":" + std::to_string(k) + ",";
  s += "|" + std::to_string(center) + "|" + std::to_string(commutator_subgroup(g, whole(g)).size()) + "|";
  for (auto k : class_sizes(g)) s += std::to_string(k) + ",";
  s += "|" + std::to_string(normal_subgroups(g).size());
  // count of elements of each order inside the commutator subgroup
  std::map<int, int> dorders;
  for (int a : commutator_subgroup(g, whole(g))) ++dorders[g.element_order(a)];
  for (auto [o, k] : dorders) s += "/" + std::to_string(o) + ":" + std::to_string(k);
  return s;
}

}  // namespace

TEST_CASE("group axioms are checked") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}, {}), NotAGroup);
  CHECK_THROWS_AS(FiniteGroup({{0, 1, 2}, {1, 0, 0}, {2, 0, 1}}, {}), NotAGroup);
  FiniteGroup z2({{0, 1}, {1, 0}}, {});
  CHECK(z2.order() == 2);
  CHECK(z2.inv(1) == 1);
}

TEST_CASE("symmetric group S4") {
  FiniteGroup s4 = make_group("S4");
  CHECK(s4.order() == 24);
  auto sizes = class_sizes(s4);
  CHECK(sizes == std::vector<std::size_t>{1, 3, 6, 6, 8});
  CHECK(s4.name(s4.id()) == "e");
  CHECK(s4.id() == 0);

  auto ds = derived_series(s4);
  REQUIRE(ds.chain.size() == 4);
  CHECK(ds.chain[1].size() == 12);
  CHECK(ds.chain[2].size() == 4);
  CHECK(ds.chain[3].size() == 1);
  CHECK(ds.solvable);

  auto na = normal_abelian_subgroups(s4);
  REQUIRE(na.size() == 1);
  CHECK(na[0].size() == 4);
  auto sub = subgroup_as_group(s4, na[0]);
  CHECK(sub.group.is_abelian());
  CHECK(sub.group.exponent() == 2);
}

TEST_CASE("A5 is not solvable") {
  FiniteGroup a5 = make_group("A5");
  CHECK(a5.order() == 60);
  CHECK_FALSE(derived_series(a5).solvable);
  CHECK(normal_subgroups(a5).size() == 2);
}

TEST_CASE("SL(2,3)") {
  FiniteGroup g = make_group("SL(2,3)");
  CHECK(g.order() == 24);
  auto na = normal_abelian_subgroups(g);
  REQUIRE(na.size() == 1);
  CHECK(na[0].size() == 2);
  CHECK(derived_series(g).solvable);
}

TEST_CASE("cyclic normal abelian subgroups") {
  FiniteGroup z6 = make_group("Z6");
  auto na = normal_abelian_subgroups(z6);
  std::vector<std::size_t> sizes;
  for (auto& h : na) sizes.push_back(h.size());
  CHECK(sizes == std::vector<std::size_t>{2, 3, 6});
}

TEST_CASE("quotient is a homomorphism") {
  FiniteGroup s4 = make_group("S4");
  auto v = normal_abelian_subgroups(s4)[0];
  QuotientGroup q = quotient(s4, v);
  CHECK(q.group.order() == 6);
  for (int a = 0; a < s4.order(); ++a)
    for (int b = 0; b < s4.order(); ++b) CHECK(q.map[s4.op(a, b)] == q.group.op(q.map[a], q.map[b]));
  CHECK_FALSE(q.group.is_abelian());
  Subgroup notnormal = generated_subgroup(s4, {1});
  if (notnormal.size() == 2) CHECK_THROWS_AS(quotient(s4, notnormal), NotNormal);
}

TEST_CASE("family names") {
  CHECK(make_group("Q8").order() == 8);
  CHECK(make_group("D4").order() == 8);
  CHECK(make_group("V").order() == 4);
  CHECK(make_group("Z2^3").order() == 8);
  CHECK(make_group("Z3 x Z3").order() == 9);
  CHECK(make_group("Pauli").order() == 16);
  CHECK(make_group("Dic3").order() == 12);
  CHECK_THROWS_AS(make_group("Foo7"), UnknownFamily);
  CHECK_THROWS_AS(make_group("S9"), UnknownFamily);
}

TEST_CASE("catalog covers distinct groups of order below 24") {
  auto names = catalog_names();
  CHECK(names.size() == 59);
  std::map<int, int> per_order;
  std::set<std::string> sigs;
  for (const auto& n : names) {
    FiniteGroup g = make_group(n);
    CHECK(g.order() < 24);
    ++per_order[g.order()];
    INFO(n);
    CHECK(sigs.insert(signature(g)).second);
  }
  // number of isomorphism classes for each order 1..23
  const int counts[] = {0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1};
  for (int n = 1; n < 24; ++n) CHECK(per_order[n] == counts[n]);
}

TEST_CASE("Pauli group is the central product") {
  FiniteGroup p = make_group("Pauli");
  int center = 0;
  for (int a = 0; a < p.order(); ++a) {
    bool c = true;
    for (int b = 0; b < p.order() && c; ++b) c = p.op(a, b) == p.op(b, a);
    center += c;
  }
  CHECK(center == 4);
  CHECK(commutator_subgroup(p, whole(p)).size() == 2);
  CHECK(p.exponent() == 4);
}

// -- characters and representations -------------------------------------------

#include <memory>

#include "ncinv/character.hpp"
#include "ncinv/representation.hpp"

namespace {

Cyclotomic C(long v) { return Cyclotomic(v); }

void check_orthogonality(const FiniteGroup& g, const CharacterTable& t) {
  long sq = 0;
  for (int d : t.degrees) sq += static_cast<long>(d) * d;
  CHECK(sq == g.order());
  CHECK(t.size() == t.classes.size());
  for (const auto& v : t.rows[0]) CHECK(v.is_one());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) {
      Cyclotomic s;
      for (std::size_t k = 0; k < t.classes.size(); ++k)
        s += Cyclotomic(static_cast<long>(t.classes[k].size())) * t.rows[i][k] * t.rows[j][k].conj();
      CHECK(s == Cyclotomic(i == j ? g.order() : 0));
    }
}

std::string cycle_type(const std::vector<int>& p) {
  std::vector<int> lens;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int l = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++l;
    }
    if (l > 1) lens.push_back(l);
  }
  std::sort(lens.begin(), lens.end());
  std::string s = "{";
  for (std::size_t i = 0; i < lens.size(); ++i) s += (i ? "," : "") + std::to_string(lens[i]);
  return s + "}";
}

}  // namespace

TEST_CASE("character table of V matches the sign table") {
  FiniteGroup v = make_group("V");
  auto t = character_table(v);
  check_orthogonality(v, t);
  // rows from the table, columns in an unknown order beyond the identity
  const std::vector<std::vector<long>> printed = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  std::vector<int> perm = {1, 2, 3};
  bool matched = false;
  do {
    std::set<std::vector<long>> ours, theirs(printed.begin(), printed.end());
    for (const auto& row : t.rows) {
      std::vector<long> r{row[0].rational().get_num().get_si()};
      for (int c : perm) r.push_back(row[c].rational().get_num().get_si());
      ours.insert(r);
    }
    matched = matched || ours == theirs;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(matched);
}

TEST_CASE("character table of S4") {
  auto s4 = make_group("S4");
  auto t = character_table(s4);
  check_orthogonality(s4, t);
  CHECK(t.degrees == std::vector<int>{1, 1, 2, 3, 3});
  const std::vector<std::string> cols = {"{}", "{2}", "{2,2}", "{3}", "{4}"};
  const std::set<std::vector<long>> printed = {
      {1, 1, 1, 1, 1}, {1, -1, 1, 1, -1}, {3, 1, -1, 0, -1}, {3, -1, -1, 0, 1}, {2, 0, 2, -1, 0}};
  std::vector<std::size_t> where(5);
  for (std::size_t k = 0; k < 5; ++k) {
    auto ct = cycle_type(s4.perms()[t.classes[k].front()]);
    where[std::find(cols.begin(), cols.end(), ct) - cols.begin()] = k;
  }
  std::set<std::vector<long>> ours;
  for (const auto& row : t.rows) {
    std::vector<long> r;
    for (std::size_t c = 0; c < 5; ++c) {
      REQUIRE(row[where[c]].is_rational());
      r.push_back(row[where[c]].rational().get_num().get_si());
    }
    ours.insert(r);
  }
  CHECK(ours == printed);
}

TEST_CASE("character table of Z3") {
  auto z3 = make_group("Z3");
  auto t = character_table(z3);
  const Cyclotomic w = Cyclotomic::root_of_unity(3);
  REQUIRE(t.size() == 3);
  CHECK(t.rows[0] == std::vector<Cyclotomic>{C(1), C(1), C(1)});
  CHECK(t.rows[1] == std::vector<Cyclotomic>{C(1), w, w * w});
  CHECK(t.rows[2] == std::vector<Cyclotomic>{C(1), w * w, w});
}

TEST_CASE("orthogonality across the catalog") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    auto g = make_group(name);
    check_orthogonality(g, character_table(g));
  }
  for (const char* name : {"S4", "SL(2,3)", "A5", "Z2xQ8xZ3"}) {
    INFO(name);
    auto g = make_group(name);
    if (g.order() > 60) {
      CHECK_THROWS_AS(character_table(g), BudgetExceeded);
      continue;
    }
    check_orthogonality(g, character_table(g));
  }
}

TEST_CASE("dual groups") {
  struct Case {
    const char* name;
    std::vector<int> factors;
  };
  for (const auto& c : std::vector<Case>{{"Z1", {}}, {"Z6", {6}}, {"Z4xZ2", {2, 4}}, {"Z2xZ6xZ3", {6, 6}},
                                         {"Z2^3", {2, 2, 2}}, {"Z4xZ4", {4, 4}}, {"Z10xZ2", {2, 10}}}) {
    INFO(c.name);
    auto a = make_group(c.name);
    auto d = pontryagin_dual(a);
    CHECK(d.factors == c.factors);
    CHECK(d.order() == a.order());
    for (int chi = 0; chi < d.order(); ++chi) {
      bool nontrivial_somewhere = chi == d.trivial();
      for (int x = 0; x < a.order(); ++x) {
        if (!d.value(chi, x).is_one()) nontrivial_somewhere = true;
        for (int y = 0; y < a.order(); ++y) CHECK(d.value(chi, a.op(x, y)) == d.value(chi, x) * d.value(chi, y));
      }
      CHECK(nontrivial_somewhere);
      CHECK(d.mul(chi, d.inv(chi)) == d.trivial());
      for (int x = 0; x < a.order(); ++x) CHECK(d.value(d.mul(chi, 1 % d.order()), x) == d.value(chi, x) * d.value(1 % d.order(), x));
    }
  }
  CHECK_THROWS_AS(pontryagin_dual(make_group("S3")), NotAbelian);
}

TEST_CASE("restriction from S4 to V") {
  auto s4 = make_group("S4");
  auto t = character_table(s4);
  auto v = normal_abelian_subgroups(s4)[0];
  auto vd = pontryagin_dual(subgroup_as_group(s4, v).group);
  int nontrivial_on_v = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto m = restriction_multiplicities(s4, t.character(i), v, vd);
    if (m[0] == t.degrees[i]) continue;
    ++nontrivial_on_v;
    CHECK(t.degrees[i] == 3);
    CHECK(m == std::vector<int>{0, 1, 1, 1});
  }
  CHECK(nontrivial_on_v == 2);
  CHECK(restriction_multiplicities(s4, t.character(0), v, vd) == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("SL(2,3) two-dimensional characters on the center") {
  auto g = make_group("SL(2,3)");
  auto t = character_table(g);
  check_orthogonality(g, t);
  auto z = normal_abelian_subgroups(g)[0];
  auto zd = pontryagin_dual(subgroup_as_group(g, z).group);
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto m = restriction_multiplicities(g, t.character(i), z, zd);
    if (t.degrees[i] == 2) CHECK(m == std::vector<int>{0, 2});
    // every irreducible is trivial on N or a multiple of the sign
    CHECK((m[0] == 0 || m[1] == 0));
  }
}

TEST_CASE("left regular representation") {
  for (const char* name : {"Z1", "Z2", "S3"}) {
    auto g = std::make_shared<FiniteGroup>(make_group(name));
    auto r = left_regular(g);
    r.check();
    auto chi = r.character();
    for (int a = 0; a < g->order(); ++a) CHECK(chi[a] == Cyclotomic(a == g->id() ? g->order() : 0));
  }
  auto z2 = std::make_shared<FiniteGroup>(make_group("Z2"));
  CHECK(left_regular(z2).images[1] == CMatrix::from_rows({{C(0), C(1)}, {C(1), C(0)}}));
}

TEST_CASE("decomposition of the regular representation of S3") {
  auto g = std::make_shared<FiniteGroup>(make_group("S3"));
  auto t = character_table(*g);
  auto r = left_regular(g);
  auto parts = decompose(r, t);
  std::vector<int> ms;
  int total = 0;
  CMatrix sum(6, 6);
  for (const auto& p : parts) {
    ms.push_back(p.multiplicity);
    total += p.multiplicity * t.degrees[p.character];
    CHECK(p.projector * p.projector == p.projector);
    CHECK(p.basis.cols() == static_cast<std::size_t>(p.multiplicity * t.degrees[p.character]));
    for (const auto& q : parts)
      if (&q != &p) CHECK((p.projector * q.projector).is_zero());
    sum += p.projector;
  }
  CHECK(ms == std::vector<int>{1, 1, 2});
  CHECK(total == 6);
  CHECK(sum.is_identity());
  auto z2 = std::make_shared<FiniteGroup>(make_group("Z2"));
  CHECK(decompose(left_regular(z2), character_table(*z2)).size() == 2);
}

TEST_CASE("trivial component of the regular representation") {
  auto g = std::make_shared<FiniteGroup>(make_group("S4"));
  auto v = normal_abelian_subgroups(*g)[0];
  auto tc = trivial_component(left_regular(g), v);
  CHECK(tc.rep.degree == 6);
  tc.rep.check();
  auto reg = left_regular(tc.rep.group);
  CHECK(tc.rep.character() == reg.character());
}

TEST_CASE("tensor and direct sum") {
  auto g = std::make_shared<FiniteGroup>(make_group("Z6"));
  auto t = character_table(*g);
  auto a = linear_character(g, t.character(1)), b = linear_character(g, t.character(2));
  auto ab = tensor(a, b);
  ab.check();
  for (int x = 0; x < g->order(); ++x) CHECK(ab.character()[x] == t.character(1)[x] * t.character(2)[x]);
  auto s = direct_sum(a, b);
  s.check();
  for (int x = 0; x < g->order(); ++x) CHECK(s.character()[x] == t.character(1)[x] + t.character(2)[x]);
}

TEST_CASE("dihedral two-dimensional representation") {
  const int n = 5;
  const Cyclotomic w = Cyclotomic::root_of_unity(n);
  auto pi = matrix_group({CMatrix::diag({w, w.inv()}), CMatrix::from_rows({{C(0), C(1)}, {C(1), C(0)}})});
  CHECK(pi.group->order() == 2 * n);
  pi.check();
  auto a = generated_subgroup(*pi.group, {1});
  CHECK(a.size() == static_cast<std::size_t>(n));
  auto res = restrict(pi, a);
  res.check();
  for (const auto& m : res.images) CHECK((m(0, 1).is_zero() && m(1, 0).is_zero()));
  auto t = character_table(*res.group);
  auto m = multiplicities(res, t);
  CHECK(std::count(m.begin(), m.end(), 1) == 2);
  CHECK(std::count(m.begin(), m.end(), 0) == n - 2);
}

TEST_CASE("matrix group of the SL(2,3) representation") {
  const Cyclotomic w = Cyclotomic::root_of_unity(3);
  auto r = matrix_group({CMatrix::from_rows({{C(0), w * w}, {-w, C(-1)}}), CMatrix::from_rows({{C(0), -w}, {w * w, C(0)}})});
  CHECK(r.group->order() == 24);
  CHECK(r.is_faithful());
  auto na = normal_abelian_subgroups(*r.group);
  REQUIRE(na.size() == 1);
  REQUIRE(na[0].size() == 2);
  const int z = na[0][0] == r.group->id() ? na[0][1] : na[0][0];
  CHECK(r.images[z] == CMatrix::scalar(2, C(-1)));
  auto t = character_table(*r.group);
  auto m = multiplicities(r, t);
  CHECK(std::count(m.begin(), m.end(), 1) == 1);
  CHECK_THROWS_AS(matrix_group({CMatrix::from_rows({{C(2)}})}, 50), NotFiniteOrder);
}
