#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "ncinv/error.hpp"
#include "ncinv/group.hpp"

namespace ncinv {

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& p, const Perm& q) {  // (p q)(i) = p(q(i))
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

std::string cycle_name(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

std::string power_name(const std::string& letter, int k) {
  if (k == 0) return "";
  return k == 1 ? letter : letter + "^" + std::to_string(k);
}

std::string join_name(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return "e";
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

// Generic closure of generators under an associative product with identity.
template <class T>
FiniteGroup closure(const std::vector<T>& gens, const T& identity, const std::function<T(const T&, const T&)>& op,
                    const std::function<std::string(const T&)>& namer, const std::string& label) {
  std::map<T, int> index{{identity, 0}};
  std::vector<T> elems{identity};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& s : gens) {
      T x = op(elems[i], s);
      if (!index.count(x)) {
        index[x] = static_cast<int>(elems.size());
        elems.push_back(x);
      }
    }
  const std::size_t n = elems.size();
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i][j] = index.at(op(elems[i], elems[j]));
  std::vector<std::string> names;
  for (const auto& x : elems) names.push_back(namer(x));
  return FiniteGroup(std::move(mul), std::move(names), label);
}

FiniteGroup dihedral(int n) {
  if (n < 1) throw UnknownFamily("dihedral index must be positive");
  if (n == 1) return cyclic_group(2);
  if (n == 2) return direct_product(cyclic_group(2), cyclic_group(2));
  Perm r(n), s(n);
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  return permutation_group({r, s}, "D" + std::to_string(n));
}

FiniteGroup symmetric(int n) {
  if (n < 1 || n > 5) throw UnknownFamily("symmetric groups are built for n <= 5");
  if (n == 1) return cyclic_group(1);
  Perm t(n), c(n);
  for (int i = 0; i < n; ++i) {
    t[i] = i;
    c[i] = (i + 1) % n;
  }
  std::swap(t[0], t[1]);
  return permutation_group({t, c}, "S" + std::to_string(n));
}

FiniteGroup alternating(int n) {
  if (n < 1 || n > 5) throw UnknownFamily("alternating groups are built for n <= 5");
  if (n <= 2) return cyclic_group(1);
  std::vector<Perm> gens;
  for (int k = 2; k < n; ++k) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return permutation_group(gens, "A" + std::to_string(n));
}

std::vector<int> cyclic_power_map(int m, int k) {
  std::vector<int> phi(m);
  for (int i = 0; i < m; ++i) phi[i] = static_cast<int>((static_cast<long>(k) * i) % m);
  return phi;
}

std::vector<int> inversion_map(const FiniteGroup& a) {
  std::vector<int> phi(a.order());
  for (int i = 0; i < a.order(); ++i) phi[i] = a.inv(i);
  return phi;
}

FiniteGroup pauli() {
  FiniteGroup p = direct_product(cyclic_group(4), dihedral(4));
  // identify the square of the Z4 generator with the central rotation of D4
  const FiniteGroup d4 = dihedral(4);
  int z = -1;
  for (int x = 0; x < d4.order() && z < 0; ++x) {
    if (x == d4.id()) continue;
    bool central = true;
    for (int y = 0; y < d4.order() && central; ++y) central = d4.op(x, y) == d4.op(y, x);
    if (central) z = x;
  }
  const int gen = 2 * d4.order() + z;  // (a^2, z) in the product layout
  QuotientGroup q = quotient(p, {p.id(), gen});
  q.group.set_label("Pauli");
  return q.group;
}

bool parse_int(const std::string& s, int& out) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return false;
  out = std::stoi(s);
  return true;
}

FiniteGroup make_single(const std::string& f) {
  int n = 0;
  if (f == "V" || f == "V4") return direct_product(cyclic_group(2), cyclic_group(2));
  if (f == "Q8") return dicyclic_group(2);
  if (f == "Q16") return dicyclic_group(4);
  if (f == "SD16") return semidirect_cyclic(cyclic_group(8), 2, cyclic_power_map(8, 3), "SD16");
  if (f == "M16") return semidirect_cyclic(cyclic_group(8), 2, cyclic_power_map(8, 5), "M16");
  if (f == "F20") return semidirect_cyclic(cyclic_group(5), 4, cyclic_power_map(5, 2), "F20");
  if (f == "Z7:Z3") return semidirect_cyclic(cyclic_group(7), 3, cyclic_power_map(7, 2), f);
  if (f == "Z4:Z4") return semidirect_cyclic(cyclic_group(4), 4, cyclic_power_map(4, 3), f);
  if (f == "Z2^2:Z4") {
    FiniteGroup a = direct_product(cyclic_group(2), cyclic_group(2));
    // swap the two factors: (i, j) -> (j, i) in the product layout i*2 + j
    return semidirect_cyclic(a, 4, {0, 2, 1, 3}, f);
  }
  if (f == "Z3^2:Z2") {
    FiniteGroup a = direct_product(cyclic_group(3), cyclic_group(3));
    return semidirect_cyclic(a, 2, inversion_map(a), f);
  }
  if (f == "Pauli") return pauli();
  if (f == "SL(2,3)" || f == "SL23") {
    FiniteGroup g = special_linear_2(3);
    g.set_label("SL(2,3)");
    return g;
  }
  if (f.rfind("Dic", 0) == 0 && parse_int(f.substr(3), n)) return dicyclic_group(n);
  if ((f[0] == 'Z' || f[0] == 'C') && parse_int(f.substr(1), n)) return cyclic_group(n);
  if (f[0] == 'D' && parse_int(f.substr(1), n)) return dihedral(n);
  if (f[0] == 'S' && parse_int(f.substr(1), n)) return symmetric(n);
  if (f[0] == 'A' && parse_int(f.substr(1), n)) return alternating(n);
  // Z2^k style powers
  const auto caret = f.find('^');
  if (caret != std::string::npos && f.find(':') == std::string::npos && parse_int(f.substr(caret + 1), n) && n >= 1) {
    FiniteGroup base = make_single(f.substr(0, caret));
    FiniteGroup g = base;
    for (int i = 1; i < n; ++i) g = direct_product(g, base);
    return g;
  }
  throw UnknownFamily("unknown group family '" + f + "'");
}

}  // namespace

FiniteGroup permutation_group(const std::vector<std::vector<int>>& gens, const std::string& label) {
  if (gens.empty()) throw UnknownFamily("no generators");
  const std::size_t deg = gens[0].size();
  Perm id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<int>(i);
  std::vector<Perm> elems{id};
  std::map<Perm, int> seen{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& s : gens) {
      Perm x = compose(elems[i], s);
      if (!seen.count(x)) {
        seen[x] = 0;
        elems.push_back(x);
      }
    }
  std::sort(elems.begin(), elems.end());
  std::map<Perm, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  const std::size_t n = elems.size();
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i][j] = index.at(compose(elems[i], elems[j]));
  std::vector<std::string> names;
  for (const auto& p : elems) names.push_back(cycle_name(p));
  FiniteGroup g(std::move(mul), std::move(names), label);
  g.set_perms(elems);
  return g;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw UnknownFamily("cyclic order must be positive");
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<std::string> names;
  std::vector<std::vector<int>> perms;
  for (int i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "e" : power_name("a", i));
    std::vector<int> p(n);
    for (int j = 0; j < n; ++j) {
      mul[i][j] = (i + j) % n;
      p[j] = (i + j) % n;
    }
    perms.push_back(p);
  }
  FiniteGroup g(std::move(mul), std::move(names), "Z" + std::to_string(n));
  g.set_perms(perms);
  return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> mul(na * nb, std::vector<int>(na * nb));
  std::vector<std::string> names;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const bool ei = i == a.id(), ej = j == b.id();
      names.push_back(ei && ej ? "e" : "(" + a.name(i) + "," + b.name(j) + ")");
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l) mul[i * nb + j][k * nb + l] = a.op(i, k) * nb + b.op(j, l);
    }
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + "x" + b.label();
  FiniteGroup g(std::move(mul), std::move(names), label);
  if (!a.perms().empty() && !b.perms().empty()) {
    const std::size_t da = a.perms()[0].size(), db = b.perms()[0].size();
    std::vector<std::vector<int>> perms;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) {
        std::vector<int> p(da + db);
        for (std::size_t k = 0; k < da; ++k) p[k] = a.perms()[i][k];
        for (std::size_t k = 0; k < db; ++k) p[da + k] = static_cast<int>(da) + b.perms()[j][k];
        perms.push_back(p);
      }
    g.set_perms(perms);
  }
  return g;
}

FiniteGroup semidirect_cyclic(const FiniteGroup& a, int n, const std::vector<int>& phi, const std::string& label) {
  const int na = a.order();
  if (static_cast<int>(phi.size()) != na) throw NotAGroup("automorphism has wrong size");
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y)
      if (phi[a.op(x, y)] != a.op(phi[x], phi[y])) throw NotAGroup("map is not a homomorphism");
  // phi^j
  std::vector<std::vector<int>> phis{std::vector<int>(na)};
  for (int x = 0; x < na; ++x) phis[0][x] = x;
  for (int j = 1; j <= n; ++j) {
    std::vector<int> p(na);
    for (int x = 0; x < na; ++x) p[x] = phi[phis.back()[x]];
    phis.push_back(p);
  }
  if (phis[n] != phis[0]) throw NotAGroup("automorphism order does not divide n");
  const int m = na * n;
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  std::vector<std::string> names;
  for (int j1 = 0; j1 < n; ++j1)
    for (int a1 = 0; a1 < na; ++a1) {
      names.push_back(join_name(a1 == a.id() ? "" : a.name(a1), power_name("t", j1)));
      for (int j2 = 0; j2 < n; ++j2)
        for (int a2 = 0; a2 < na; ++a2) mul[j1 * na + a1][j2 * na + a2] = ((j1 + j2) % n) * na + a.op(a1, phis[j1][a2]);
    }
  return FiniteGroup(std::move(mul), std::move(names), label);
}

FiniteGroup dicyclic_group(int n) {
  if (n < 1) throw UnknownFamily("dicyclic index must be positive");
  const int m = 2 * n;  // a has order 2n, elements a^k x^j, index j*m + k
  std::vector<std::vector<int>> mul(2 * m, std::vector<int>(2 * m));
  std::vector<std::string> names;
  for (int j1 = 0; j1 < 2; ++j1)
    for (int k1 = 0; k1 < m; ++k1) {
      names.push_back(join_name(power_name("a", k1), power_name("x", j1)));
      for (int j2 = 0; j2 < 2; ++j2)
        for (int k2 = 0; k2 < m; ++k2) {
          int k = j1 ? k1 - k2 : k1 + k2, j = j1 + j2;
          if (j == 2) {
            k += n;
            j = 0;
          }
          k = ((k % m) + m) % m;
          mul[j1 * m + k1][j2 * m + k2] = j * m + k;
        }
    }
  std::string label = n == 2 ? "Q8" : n == 4 ? "Q16" : "Dic" + std::to_string(n);
  return FiniteGroup(std::move(mul), std::move(names), label);
}

FiniteGroup special_linear_2(int p) {
  using M = std::vector<int>;  // a b c d
  auto op = [p](const M& x, const M& y) -> M {
    return {(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p, (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p};
  };
  auto namer = [](const M& x) -> std::string {
    if (x == M{1, 0, 0, 1}) return "e";
    return "[" + std::to_string(x[0]) + "," + std::to_string(x[1]) + ";" + std::to_string(x[2]) + "," +
           std::to_string(x[3]) + "]";
  };
  return closure<M>({{1, 1, 0, 1}, {1, 0, 1, 1}}, {1, 0, 0, 1}, op, namer, "SL(2," + std::to_string(p) + ")");
}

FiniteGroup make_group(const std::string& family) {
  std::string f;
  for (char c : family)
    if (!std::isspace(static_cast<unsigned char>(c))) f += c;
  if (f.empty()) throw UnknownFamily("empty family name");
  // direct products split on 'x' outside parentheses
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : f) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == 'x' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  FiniteGroup g = make_single(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, make_single(parts[i]));
  g.set_label(f);
  return g;
}

std::vector<std::string> catalog_names() {
  return {"Z1",     "Z2",     "Z3",      "Z4",   "Z2xZ2", "Z5",     "Z6",   "S3",     "Z7",      "Z8",
          "Z4xZ2",  "Z2^3",   "D4",      "Q8",   "Z9",    "Z3xZ3",  "Z10",  "D5",     "Z11",     "Z12",
          "Z6xZ2",  "A4",     "D6",      "Dic3", "Z13",   "Z14",    "D7",   "Z15",    "Z16",     "Z8xZ2",
          "Z4xZ4",  "Z4xZ2xZ2", "Z2^4",  "D8",   "Q16",   "SD16",   "M16",  "Z4:Z4",  "Z2^2:Z4", "D4xZ2",
          "Q8xZ2",  "Pauli",  "Z17",     "Z18",  "Z6xZ3", "D9",     "S3xZ3", "Z3^2:Z2", "Z19",    "Z20",
          "Z10xZ2", "D10",    "Dic5",    "F20",  "Z21",   "Z7:Z3",  "Z22",  "D11",    "Z23"};
}

}  // namespace ncinv
