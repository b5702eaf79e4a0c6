#include "ncinv/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ncinv/error.hpp"

namespace ncinv {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> mul, std::vector<std::string> names, std::string label)
    : mul_(std::move(mul)), names_(std::move(names)), label_(std::move(label)) {
  const int n = static_cast<int>(mul_.size());
  if (n == 0) throw NotAGroup("empty table");
  for (const auto& row : mul_) {
    if (static_cast<int>(row.size()) != n) throw NotAGroup("table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw NotAGroup("table entry out of range");
  }
  id_ = -1;
  for (int e = 0; e < n && id_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul_[e][a] == a && mul_[a][e] == a;
    if (ok) id_ = e;
  }
  if (id_ < 0) throw NotAGroup("no identity element");
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul_[a][b] == id_) {
        if (mul_[b][a] != id_) throw NotAGroup("one-sided inverse");
        inv_[a] = b;
        break;
      }
  for (int a = 0; a < n; ++a)
    if (inv_[a] < 0) throw NotAGroup("element without inverse");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = mul_[a][b];
      for (int c = 0; c < n; ++c)
        if (mul_[ab][c] != mul_[a][mul_[b][c]]) throw NotAGroup("table is not associative");
    }
  if (names_.empty())
    for (int a = 0; a < n; ++a) names_.push_back(a == id_ ? "e" : "g" + std::to_string(a));
  if (static_cast<int>(names_.size()) != n) throw NotAGroup("wrong number of element names");
  if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size())
    throw NotAGroup("element names are not distinct");
  orders_.assign(n, 1);
  for (int a = 0; a < n; ++a) {
    int x = a, k = 1;
    while (x != id_) {
      x = mul_[x][a];
      ++k;
    }
    orders_[a] = k;
  }
}

int FiniteGroup::pow(int a, long k) const {
  long m = k % orders_[a];
  if (m < 0) m += orders_[a];
  int x = id_;
  for (long i = 0; i < m; ++i) x = mul_[x][a];
  return x;
}

int FiniteGroup::exponent() const {
  long e = 1;
  for (int o : orders_) e = std::lcm(e, static_cast<long>(o));
  return static_cast<int>(e);
}

int FiniteGroup::index_of(const std::string& name) const {
  for (int a = 0; a < order(); ++a)
    if (names_[a] == name) return a;
  throw FormatError("no group element named '" + name + "'");
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = a + 1; b < order(); ++b)
      if (mul_[a][b] != mul_[b][a]) return false;
  return true;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<int> elems{g.id()};
  in[g.id()] = true;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (int s : gens) {
      const int x = g.op(elems[i], s);
      if (!in[x]) {
        in[x] = true;
        elems.push_back(x);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

Subgroup normal_closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> conj;
  for (int s : gens)
    for (int x = 0; x < g.order(); ++x) conj.insert(g.conj(x, s));
  return generated_subgroup(g, {conj.begin(), conj.end()});
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  std::vector<bool> in(g.order(), false);
  for (int x : h) in[x] = true;
  for (int x = 0; x < g.order(); ++x)
    for (int y : h)
      if (!in[g.conj(x, y)]) return false;
  return true;
}

bool is_abelian_subgroup(const FiniteGroup& g, const Subgroup& h) {
  for (int a : h)
    for (int b : h)
      if (g.op(a, b) != g.op(b, a)) return false;
  return true;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::set<int> comms;
  for (int a : h)
    for (int b : h) comms.insert(g.op(g.op(a, b), g.op(g.inv(a), g.inv(b))));
  return generated_subgroup(g, {comms.begin(), comms.end()});
}

Subgroup whole(const FiniteGroup& g) {
  Subgroup s(g.order());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return {g.id()}; }

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<int> cls(g.order(), -1);
  std::vector<std::vector<int>> out;
  for (int a = 0; a < g.order(); ++a) {
    if (cls[a] >= 0) continue;
    std::set<int> orbit;
    for (int x = 0; x < g.order(); ++x) orbit.insert(g.conj(x, a));
    for (int y : orbit) cls[y] = static_cast<int>(out.size());
    out.emplace_back(orbit.begin(), orbit.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    if (p.size() != q.size()) return p.size() < q.size();
    return p.front() < q.front();
  });
  return out;
}

DerivedSeries derived_series(const FiniteGroup& g) {
  DerivedSeries d;
  d.chain.push_back(whole(g));
  for (;;) {
    Subgroup next = commutator_subgroup(g, d.chain.back());
    if (next == d.chain.back()) break;
    d.chain.push_back(next);
  }
  d.solvable = d.chain.back().size() == 1;
  return d;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found{trivial_subgroup(g)};
  for (const auto& c : conjugacy_classes(g)) found.insert(normal_closure(g, {c.front()}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subgroup> cur(found.begin(), found.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<int> gens = cur[i];
        gens.insert(gens.end(), cur[j].begin(), cur[j].end());
        if (found.insert(generated_subgroup(g, gens)).second) grew = true;
      }
  }
  std::vector<Subgroup> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<Subgroup> normal_abelian_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  for (auto& h : normal_subgroups(g))
    if (h.size() > 1 && is_abelian_subgroup(g, h)) out.push_back(h);
  return out;
}

SubgroupGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
  SubgroupGroup s;
  s.embed = h;
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> mul(h.size(), std::vector<int>(h.size()));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < h.size(); ++i) {
    names.push_back(g.name(h[i]));
    for (std::size_t j = 0; j < h.size(); ++j) {
      const int p = pos[g.op(h[i], h[j])];
      if (p < 0) throw NotAGroup("subset is not closed");
      mul[i][j] = p;
    }
  }
  s.group = FiniteGroup(std::move(mul), std::move(names));
  return s;
}

QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw NotNormal("subgroup is not normal");
  QuotientGroup q;
  q.map.assign(g.order(), -1);
  for (int a = 0; a < g.order(); ++a) {
    if (q.map[a] >= 0) continue;
    const int k = static_cast<int>(q.reps.size());
    q.reps.push_back(a);
    for (int x : n) q.map[g.op(a, x)] = k;
  }
  const std::size_t m = q.reps.size();
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  std::vector<std::string> names;
  const int id_coset = q.map[g.id()];
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(g.name(static_cast<int>(i) == id_coset ? g.id() : q.reps[i]));
    for (std::size_t j = 0; j < m; ++j) mul[i][j] = q.map[g.op(q.reps[i], q.reps[j])];
  }
  q.group = FiniteGroup(std::move(mul), std::move(names));
  return q;
}

}  // namespace ncinv
