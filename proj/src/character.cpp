#include "ncinv/character.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ncinv/error.hpp"

namespace ncinv {

namespace {

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;

long mod(long a, long p) { return ((a % p) + p) % p; }

long pow_mod(long b, long e, long p) {
  long r = 1;
  b = mod(b, p);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

long inv_mod(long a, long p) { return pow_mod(a, p - 2, p); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Right kernel of an r x k matrix over F_p, as column vectors.
std::vector<Vec> kernel_mod(Mat a, std::size_t k, long p) {
  const std::size_t r = a.size();
  std::vector<long> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < r; ++c) {
    std::size_t piv = row;
    while (piv < r && a[piv][c] == 0) ++piv;
    if (piv == r) continue;
    std::swap(a[piv], a[row]);
    const long iv = inv_mod(a[row][c], p);
    for (auto& x : a[row]) x = x * iv % p;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const long f = a[i][c];
      for (std::size_t j = 0; j < k; ++j) a[i][j] = mod(a[i][j] - f * a[row][j], p);
    }
    pivot_col.push_back(static_cast<long>(c));
    ++row;
  }
  std::vector<bool> is_pivot(k, false);
  for (long c : pivot_col) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    Vec v(k, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = mod(-a[i][f], p);
    out.push_back(v);
  }
  return out;
}

// Columns of basis (r x k) times vectors of length k.
std::vector<Vec> combine(const std::vector<Vec>& basis, const std::vector<Vec>& ys, long p) {
  std::vector<Vec> out;
  for (const auto& y : ys) {
    Vec v(basis[0].size(), 0);
    for (std::size_t j = 0; j < y.size(); ++j)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + y[j] * basis[j][i]) % p;
    out.push_back(v);
  }
  return out;
}

}  // namespace

ClassFunction CharacterTable::character(std::size_t i) const {
  ClassFunction f(class_of.size());
  for (std::size_t a = 0; a < class_of.size(); ++a) f[a] = rows[i][class_of[a]];
  return f;
}

CharacterTable character_table(const FiniteGroup& g) {
  const int n = g.order();
  if (n > 60) throw BudgetExceeded("character tables are computed for groups of order at most 60");
  CharacterTable t;
  t.classes = conjugacy_classes(g);
  const std::size_t r = t.classes.size();
  t.class_of.assign(n, -1);
  for (std::size_t k = 0; k < r; ++k)
    for (int x : t.classes[k]) t.class_of[x] = static_cast<int>(k);
  const long e = g.exponent();
  long p = 2 * n + 1;
  while (!(is_prime(p) && (p - 1) % e == 0)) ++p;

  // a[j][i][k] = #{x in C_j : x^-1 g_k in C_i}
  std::vector<Mat> amat(r, Mat(r, Vec(r, 0)));
  for (std::size_t k = 0; k < r; ++k) {
    const int z = t.classes[k].front();
    for (std::size_t j = 0; j < r; ++j)
      for (int x : t.classes[j]) ++amat[j][t.class_of[g.op(g.inv(x), z)]][k];
  }

  // split F_p^r into joint eigenspaces
  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> full;
    for (std::size_t i = 0; i < r; ++i) {
      Vec v(r, 0);
      v[i] = 1;
      full.push_back(v);
    }
    spaces.push_back(full);
  }
  for (std::size_t j = 1; j < r; ++j) {
    std::vector<std::vector<Vec>> next;
    for (const auto& sp : spaces) {
      if (sp.size() == 1) {
        next.push_back(sp);
        continue;
      }
      std::size_t found = 0;
      for (long lam = 0; lam < p && found < sp.size(); ++lam) {
        // (A_j - lam) B as an r x k matrix
        Mat m(r, Vec(sp.size(), 0));
        for (std::size_t c = 0; c < sp.size(); ++c)
          for (std::size_t i = 0; i < r; ++i) {
            long s = -lam * sp[c][i];
            for (std::size_t q = 0; q < r; ++q) s += amat[j][i][q] * sp[c][q];
            m[i][c] = mod(s, p);
          }
        auto ker = kernel_mod(m, sp.size(), p);
        if (ker.empty()) continue;
        found += ker.size();
        next.push_back(combine(sp, ker, p));
      }
      if (found != sp.size()) throw Error("internal", "class algebra is not split mod p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw Error("internal", "class matrices failed to separate characters");

  std::vector<int> inv_class(r);
  for (std::size_t k = 0; k < r; ++k) inv_class[k] = t.class_of[g.inv(t.classes[k].front())];
  const long zeta = [&] {
    // a generator of the order-e subgroup of F_p^*
    for (long a = 2; a < p; ++a) {
      const long z = pow_mod(a, (p - 1) / e, p);
      bool prim = true;
      for (long q = 1; q < e && prim; ++q)
        if (e % q == 0 && pow_mod(z, q, p) == 1) prim = false;
      if (prim) return z;
    }
    return 1L;
  }();

  struct Row {
    int degree;
    std::vector<Cyclotomic> values;
  };
  std::vector<Row> rows;
  for (const auto& sp : spaces) {
    Vec w = sp[0];
    const long s0 = inv_mod(w[0], p);
    for (auto& x : w) x = x * s0 % p;
    long s = 0;
    for (std::size_t k = 0; k < r; ++k)
      s = (s + w[k] * w[inv_class[k]] % p * inv_mod(static_cast<long>(t.classes[k].size()), p)) % p;
    const long d2 = static_cast<long>(n) % p * inv_mod(s, p) % p;
    long d = 1;
    while (d * d <= n && d * d % p != d2) ++d;
    if (d * d > n) throw Error("internal", "character degree not found");
    // chi(g_k) mod p
    std::vector<long> chi(r);
    for (std::size_t k = 0; k < r; ++k)
      chi[k] = d * w[k] % p * inv_mod(static_cast<long>(t.classes[k].size()), p) % p;
    std::vector<Cyclotomic> values(r);
    for (std::size_t k = 0; k < r; ++k) {
      const int x = t.classes[k].front();
      std::vector<Rational> coeffs(e);
      for (long tt = 0; tt < e; ++tt) {
        long m = 0;
        for (long q = 0; q < e; ++q)
          m = (m + chi[t.class_of[g.pow(x, q)]] * pow_mod(zeta, mod(-tt * q, e), p)) % p;
        m = m * inv_mod(e % p, p) % p;
        if (m > d) throw Error("internal", "eigenvalue multiplicity out of range");
        coeffs[tt] = m;
      }
      values[k] = Cyclotomic::from_powers(static_cast<int>(e), coeffs);
    }
    rows.push_back({static_cast<int>(d), std::move(values)});
  }
  auto is_trivial = [](const Row& row) {
    return std::all_of(row.values.begin(), row.values.end(), [](const Cyclotomic& c) { return c.is_one(); });
  };
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    const bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (a.degree != b.degree) return a.degree < b.degree;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
      const int c = Cyclotomic::lex_compare(a.values[k], b.values[k]);
      if (c != 0) return c > 0;
    }
    return false;
  });
  for (auto& row : rows) {
    t.degrees.push_back(row.degree);
    t.rows.push_back(std::move(row.values));
  }
  return t;
}

Cyclotomic inner_product(const FiniteGroup& g, const ClassFunction& f1, const ClassFunction& f2) {
  Cyclotomic s;
  for (int a = 0; a < g.order(); ++a) s += f1[a] * f2[a].conj();
  return s / Cyclotomic(g.order());
}

}  // namespace ncinv
