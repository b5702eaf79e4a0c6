#include <algorithm>
#include <map>
#include <numeric>

#include "ncinv/character.hpp"
#include "ncinv/error.hpp"

namespace ncinv {

namespace {

// Order of a modulo the subgroup h (given as a membership mask).
int order_mod(const FiniteGroup& g, int a, const std::vector<bool>& in_h) {
  int x = a, k = 1;
  while (!in_h[x]) {
    x = g.op(x, a);
    ++k;
  }
  return k;
}

// Basis of a p-group inside g (elements listed in elems), as elements of
// decreasing order with H = <x1> x <x2> x ... built greedily.
std::vector<int> primary_basis(const FiniteGroup& g, const std::vector<int>& elems) {
  std::vector<int> basis;
  std::vector<bool> in_h(g.order(), false);
  in_h[g.id()] = true;
  std::size_t h_size = 1;
  while (h_size < elems.size()) {
    int best = 1;
    for (int a : elems) best = std::max(best, order_mod(g, a, in_h));
    int pick = -1;
    for (int a : elems)
      if (order_mod(g, a, in_h) == best && g.element_order(a) == best) {
        pick = a;
        break;
      }
    if (pick < 0) throw Error("internal", "no order-preserving lift in abelian decomposition");
    basis.push_back(pick);
    const Subgroup h = generated_subgroup(g, basis);
    std::fill(in_h.begin(), in_h.end(), false);
    for (int x : h) in_h[x] = true;
    h_size = h.size();
  }
  return basis;
}

}  // namespace

DualGroup pontryagin_dual(const FiniteGroup& a) {
  if (!a.is_abelian()) throw NotAbelian("dual requires an abelian group");
  DualGroup d;
  const int n = a.order();
  // primary components
  std::map<int, std::vector<int>> by_prime;  // prime -> elements of p-power order
  std::vector<int> primes;
  for (int m = n, q = 2; m > 1; ++q)
    if (m % q == 0) {
      primes.push_back(q);
      while (m % q == 0) m /= q;
    }
  for (int x = 0; x < n; ++x)
    for (int q : primes) {
      int o = a.element_order(x);
      while (o % q == 0) o /= q;
      if (o == 1) by_prime[q].push_back(x);
    }
  // per prime, orders sorted descending
  std::vector<std::vector<int>> comps;
  std::size_t len = 0;
  for (int q : primes) {
    auto b = primary_basis(a, by_prime[q]);
    len = std::max(len, b.size());
    comps.push_back(b);
  }
  // invariant factors: combine the k-th largest of each prime
  std::vector<std::pair<int, int>> fac;  // (order, element)
  for (std::size_t k = 0; k < len; ++k) {
    int el = a.id(), ord = 1;
    for (const auto& b : comps)
      if (k < b.size()) {
        el = a.op(el, b[k]);
        ord *= a.element_order(b[k]);
      }
    fac.emplace_back(ord, el);
  }
  std::reverse(fac.begin(), fac.end());
  for (auto [o, el] : fac) {
    d.factors.push_back(o);
    d.basis.push_back(el);
  }
  // coordinates of each element
  d.coords.assign(n, {});
  for (int idx = 0; idx < n; ++idx) {
    std::vector<int> t(d.factors.size());
    for (std::size_t i = t.size(), r = idx; i-- > 0;) {
      t[i] = static_cast<int>(r % d.factors[i]);
      r /= d.factors[i];
    }
    int x = a.id();
    for (std::size_t i = 0; i < t.size(); ++i) x = a.op(x, a.pow(d.basis[i], t[i]));
    d.coords[x] = t;
    d.chars.push_back(t);
  }
  for (const auto& c : d.coords)
    if (c.size() != d.factors.size()) throw Error("internal", "abelian decomposition does not cover the group");
  return d;
}

Cyclotomic DualGroup::value(int chi, int a) const {
  const int e = exponent();
  long k = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    k += static_cast<long>(chars[chi][i]) * coords[a][i] * (e / factors[i]);
  return Cyclotomic::root_of_unity(e, k % e);
}

ClassFunction DualGroup::character(int chi) const {
  ClassFunction f(coords.size());
  for (std::size_t a = 0; a < coords.size(); ++a) f[a] = value(chi, static_cast<int>(a));
  return f;
}

int DualGroup::index_of(const std::vector<int>& t) const {
  int idx = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i] + ((t[i] % factors[i]) + factors[i]) % factors[i];
  return idx;
}

int DualGroup::mul(int chi, int eta) const {
  std::vector<int> t(factors.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = chars[chi][i] + chars[eta][i];
  return index_of(t);
}

int DualGroup::inv(int chi) const {
  std::vector<int> t(factors.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = -chars[chi][i];
  return index_of(t);
}

std::string DualGroup::name(int chi) const {
  std::string s = "chi(";
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + std::to_string(chars[chi][i]);
  return s + ")";
}

std::vector<int> restriction_multiplicities(const FiniteGroup& g, const ClassFunction& chi, const Subgroup& n,
                                            const DualGroup& dual) {
  (void)g;
  std::vector<int> out;
  for (int k = 0; k < dual.order(); ++k) {
    Cyclotomic s;
    for (std::size_t i = 0; i < n.size(); ++i) s += chi[n[i]] * dual.value(k, static_cast<int>(i)).conj();
    s /= Cyclotomic(static_cast<long>(n.size()));
    if (!s.is_rational() || s.rational().get_den() != 1) throw Error("internal", "non-integral multiplicity");
    out.push_back(static_cast<int>(s.rational().get_num().get_si()));
  }
  return out;
}

}  // namespace ncinv
