#include "ncinv/cyclotomic.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ncinv/error.hpp"

namespace ncinv {

namespace {

struct CycloData {
  int n = 1;
  int phi = 1;
  std::vector<long> poly;                // Phi_n, low degree first, monic
  std::vector<std::vector<long>> powers;  // zeta^j in the power basis, j < n
};

std::vector<long> poly_divide_exact(std::vector<long> num, const std::vector<long>& den) {
  // Both monic with integer coefficients.
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    q[i - dn] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

std::vector<long> compute_cyclotomic_poly(int n) {
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = poly_divide_exact(num, cyclotomic_polynomial(d));
  return num;
}

std::shared_ptr<const CycloData> build_data(int n) {
  auto data = std::make_shared<CycloData>();
  data->n = n;
  data->poly = compute_cyclotomic_poly(n);
  data->phi = static_cast<int>(data->poly.size()) - 1;
  const int phi = data->phi;
  data->powers.assign(n, std::vector<long>(phi, 0));
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  for (int j = 0; j < n; ++j) {
    data->powers[j] = cur;
    // multiply by zeta: shift, then reduce the overflow coefficient.
    const long top = cur[phi - 1];
    for (int k = phi - 1; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 0;
    if (top != 0)
      for (int k = 0; k < phi; ++k) cur[k] -= top * data->poly[k];
  }
  return data;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

const CycloData& data_for(int n) {
  static std::map<int, std::shared_ptr<const CycloData>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  auto built = build_data(n);
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto [it, inserted] = cache.emplace(n, std::move(built));
  return *it->second;
}

int fix_conductor(int n) { return (n % 4 == 2) ? n / 2 : n; }

std::vector<int> prime_factors(long n) {
  std::vector<int> out;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(static_cast<int>(p));
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

// Fold sum_k acc[k] zeta_n^k (k arbitrary below 2n) into the power basis.
std::vector<Rational> fold(const CycloData& d, const std::vector<Rational>& acc) {
  std::vector<Rational> out(d.phi, Rational(0));
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (sgn(acc[k]) == 0) continue;
    const auto& p = d.powers[k % d.n];
    for (int j = 0; j < d.phi; ++j)
      if (p[j] != 0) out[j] += acc[k] * p[j];
  }
  return out;
}

// Data for recognising members of Q(zeta_m) inside Q(zeta_n).
struct SubfieldSolver {
  std::vector<int> pivot_rows;              // phi(m) rows of the embedding
  std::vector<std::vector<Rational>> inv;   // inverse of the pivot block
};

const SubfieldSolver& subfield_solver(int n, int m) {
  static std::map<std::pair<int, int>, std::shared_ptr<const SubfieldSolver>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache.find({n, m});
    if (it != cache.end()) return *it->second;
  }
  const CycloData& dn = data_for(n);
  const CycloData& dm = data_for(m);
  const int rows = dn.phi, cols = dm.phi;
  // E[r][c] = coordinate r of zeta_m^c embedded in Q(zeta_n).
  std::vector<std::vector<Rational>> e(rows, std::vector<Rational>(cols));
  for (int c = 0; c < cols; ++c) {
    const auto& p = dn.powers[(static_cast<long>(c) * (n / m)) % n];
    for (int r = 0; r < rows; ++r) e[r][c] = p[r];
  }
  // Choose independent rows greedily.
  auto solver = std::make_shared<SubfieldSolver>();
  std::vector<std::vector<Rational>> basis;  // echelon copies
  std::vector<int> lead;
  for (int r = 0; r < rows && static_cast<int>(solver->pivot_rows.size()) < cols; ++r) {
    std::vector<Rational> v = e[r];
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (sgn(v[lead[b]]) != 0) {
        Rational f = v[lead[b]] / basis[b][lead[b]];
        for (int c = 0; c < cols; ++c) v[c] -= f * basis[b][c];
      }
    int l = -1;
    for (int c = 0; c < cols; ++c)
      if (sgn(v[c]) != 0) {
        l = c;
        break;
      }
    if (l < 0) continue;
    basis.push_back(v);
    lead.push_back(l);
    solver->pivot_rows.push_back(r);
  }
  // Invert the square block by Gauss-Jordan.
  std::vector<std::vector<Rational>> a(cols, std::vector<Rational>(2 * cols, Rational(0)));
  for (int i = 0; i < cols; ++i) {
    for (int j = 0; j < cols; ++j) a[i][j] = e[solver->pivot_rows[i]][j];
    a[i][cols + i] = 1;
  }
  for (int c = 0; c < cols; ++c) {
    int p = c;
    while (sgn(a[p][c]) == 0) ++p;
    std::swap(a[p], a[c]);
    Rational f = a[c][c];
    for (auto& x : a[c]) x /= f;
    for (int i = 0; i < cols; ++i)
      if (i != c && sgn(a[i][c]) != 0) {
        Rational g = a[i][c];
        for (int j = 0; j < 2 * cols; ++j) a[i][j] -= g * a[c][j];
      }
  }
  solver->inv.assign(cols, std::vector<Rational>(cols));
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) solver->inv[i][j] = a[i][cols + j];
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto [it, inserted] = cache.emplace(std::make_pair(n, m), std::move(solver));
  return *it->second;
}

}  // namespace

long euler_phi(long n) {
  long r = n;
  for (int p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

const std::vector<long>& cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
  return data_for(n).poly;
}

void Cyclotomic::demote() {
  if (conductor_ == 1) return;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    if (sgn(coeffs_[k]) != 0) return;
  Rational c = coeffs_[0];
  conductor_ = 1;
  coeffs_.assign(1, c);
}

Cyclotomic Cyclotomic::from_powers(int conductor, const std::vector<Rational>& coeffs) {
  if (conductor < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
  int n = conductor;
  std::vector<Rational> acc;
  std::vector<Rational> input = coeffs;
  for (auto& q : input) q.canonicalize();
  const auto& coeffs_in = input;
  if (n % 4 == 2) {
    // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m.
    const int m = n / 2;
    acc.assign(m, Rational(0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const long e = static_cast<long>(k) % n;
      const long t = (e * ((m + 1) / 2)) % m;
      if (e % 2 == 0)
        acc[t] += coeffs_in[k];
      else
        acc[t] -= coeffs_in[k];
    }
    n = m;
  } else {
    acc.assign(n, Rational(0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) acc[k % n] += coeffs_in[k];
  }
  Cyclotomic out(n, fold(data_for(n), acc));
  out.demote();
  return out;
}

Cyclotomic Cyclotomic::root_of_unity(int n, long k) {
  if (n < 1) throw std::invalid_argument("root_of_unity: n must be positive");
  long e = k % n;
  if (e < 0) e += n;
  std::vector<Rational> c(e + 1, Rational(0));
  c[e] = 1;
  return from_powers(n, c);
}

Cyclotomic Cyclotomic::sqrt_nat(unsigned long n) {
  if (n == 0) return Cyclotomic(0L);
  // n = s^2 * (product of distinct primes)
  unsigned long square = 1, free = 1, m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2) free *= p;
  }
  if (m > 1) free *= m;
  Cyclotomic result{static_cast<long>(square)};
  unsigned long f = free;
  for (unsigned long p = 2; f > 1; ++p) {
    if (f % p) continue;
    f /= p;
    Cyclotomic root;
    if (p == 2) {
      root = root_of_unity(8, 1) + root_of_unity(8, 7);
    } else {
      // Quadratic Gauss sum g with g^2 = (-1/p) p.
      std::vector<Rational> c(p, Rational(0));
      for (unsigned long a = 1; a < p; ++a) {
        unsigned long r = 1;  // Euler criterion a^((p-1)/2) mod p
        unsigned long base = a % p, e = (p - 1) / 2;
        while (e) {
          if (e & 1) r = r * base % p;
          base = base * base % p;
          e >>= 1;
        }
        c[a] = (r == 1) ? 1 : -1;
      }
      root = from_powers(static_cast<int>(p), c);
      if (p % 4 == 3) root *= root_of_unity(4, 1);  // i*g is real
    }
    if (root.to_complex().real() < 0) root = -root;
    result *= root;
  }
  return result;
}

bool Cyclotomic::is_zero() const { return conductor_ == 1 && sgn(coeffs_[0]) == 0; }
bool Cyclotomic::is_one() const { return conductor_ == 1 && coeffs_[0] == 1; }

Cyclotomic Cyclotomic::embed(int target) const {
  target = fix_conductor(target);
  if (target == conductor_) return *this;
  if (target % conductor_ != 0)
    throw std::invalid_argument("embed: conductor does not divide target");
  const CycloData& d = data_for(target);
  const long step = target / conductor_;
  std::vector<Rational> out(d.phi, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    const auto& p = d.powers[(static_cast<long>(k) * step) % target];
    for (int j = 0; j < d.phi; ++j)
      if (p[j] != 0) out[j] += coeffs_[k] * p[j];
  }
  return Cyclotomic(target, std::move(out));
}

Cyclotomic Cyclotomic::canonical() const {
  if (conductor_ == 1) return *this;
  for (int p : prime_factors(conductor_)) {
    const int m = fix_conductor(conductor_ / p);
    if (m == conductor_) continue;
    const SubfieldSolver& s = subfield_solver(conductor_, m);
    const std::size_t cols = s.pivot_rows.size();
    std::vector<Rational> y(cols, Rational(0));
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = 0; j < cols; ++j) y[i] += s.inv[i][j] * coeffs_[s.pivot_rows[j]];
    Cyclotomic cand(m, y);
    cand.demote();
    if (cand.embed(conductor_).coeffs_ == coeffs_) return cand.canonical();
  }
  return *this;
}

Cyclotomic Cyclotomic::galois(long a) const {
  if (conductor_ == 1) return *this;
  const CycloData& d = data_for(conductor_);
  long aa = a % conductor_;
  if (aa < 0) aa += conductor_;
  std::vector<Rational> acc(conductor_, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) acc[(aa * static_cast<long>(k)) % conductor_] += coeffs_[k];
  Cyclotomic out(conductor_, fold(d, acc));
  out.demote();
  return out;
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic");
  if (conductor_ == 1) return Cyclotomic(Rational(1) / coeffs_[0]);
  Cyclotomic others(1L);
  for (long a = 2; a < conductor_; ++a)
    if (std::gcd(a, static_cast<long>(conductor_)) == 1) others *= galois(a);
  Cyclotomic norm = *this * others;
  if (!norm.is_rational()) throw std::logic_error("cyclotomic norm is not rational");
  return others * Cyclotomic(Rational(1) / norm.rational());
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (conductor_ == o.conductor_) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  } else {
    const int l = static_cast<int>(lcm_long(conductor_, o.conductor_));
    Cyclotomic a = embed(l);
    Cyclotomic b = o.embed(l);
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) a.coeffs_[k] += b.coeffs_[k];
    *this = std::move(a);
  }
  demote();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == 1) {
    if (sgn(a.coeffs_[0]) == 0) return Cyclotomic();
    Cyclotomic r = b;
    for (auto& c : r.coeffs_) c *= a.coeffs_[0];
    return r;
  }
  if (b.conductor_ == 1) return b * a;
  const int l = static_cast<int>(lcm_long(a.conductor_, b.conductor_));
  const Cyclotomic& x = (a.conductor_ == l) ? a : a.embed(l);
  Cyclotomic ytmp;
  const Cyclotomic* yp = &b;
  if (b.conductor_ != l) {
    ytmp = b.embed(l);
    yp = &ytmp;
  }
  const Cyclotomic& y = *yp;
  std::vector<Rational> acc(2 * x.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (sgn(x.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < y.coeffs_.size(); ++j)
      if (sgn(y.coeffs_[j]) != 0) acc[i + j] += x.coeffs_[i] * y.coeffs_[j];
  }
  Cyclotomic r(l, fold(data_for(l), acc));
  r.demote();
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  *this = *this * o;
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) {
  *this = *this * o.inv();
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  if (a.conductor_ == 1 || b.conductor_ == 1) return false;  // demoted forms
  const int l = static_cast<int>(lcm_long(a.conductor_, b.conductor_));
  return a.embed(l).coeffs_ == b.embed(l).coeffs_;
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyclotomic result(1L), base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    const double ang = 2.0 * M_PI * static_cast<double>(k) / conductor_;
    z += coeffs_[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

int Cyclotomic::real_sign() const {
  if (conductor_ == 1) return sgn(coeffs_[0]);
  if (is_zero()) return 0;
  using Big = boost::multiprecision::cpp_bin_float_100;
  const Big two_pi = 2 * boost::math::constants::pi<Big>();
  Big re = 0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    Big q = Big(coeffs_[k].get_num().get_str()) / Big(coeffs_[k].get_den().get_str());
    re += q * cos(two_pi * static_cast<long>(k) / conductor_);
  }
  if (abs(re) < Big("1e-80"))
    throw std::runtime_error("real_sign: value too close to zero for the embedding precision");
  return re > 0 ? 1 : -1;
}

std::string Cyclotomic::str() const {
  const Cyclotomic c = canonical();
  if (c.conductor_ == 1) return c.coeffs_[0].get_str();
  std::string out;
  for (std::size_t k = c.coeffs_.size(); k-- > 0;) {
    const Rational& q = c.coeffs_[k];
    if (sgn(q) == 0) continue;
    std::string term;
    if (k == 0) {
      term = q.get_str();
    } else {
      std::string mono = "z" + std::to_string(c.conductor_);
      if (k > 1) mono += "^" + std::to_string(k);
      if (q == 1)
        term = mono;
      else if (q == -1)
        term = "-" + mono;
      else
        term = q.get_str() + "*" + mono;
    }
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out;
}

namespace {

// sum := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := rational | 'z' N ['^' int] | '(' sum ')'
class ScalarParser {
 public:
  explicit ScalarParser(const std::string& s) : s_(s) {}
  Cyclotomic run() {
    Cyclotomic v = sum();
    skip();
    if (i_ != s_.size()) throw SyntaxError("unexpected character in cyclotomic literal", i_);
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Integer integer() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw SyntaxError("expected integer", start);
    return Integer(s_.substr(start, i_ - start));
  }
  Cyclotomic sum() {
    bool neg = eat('-');
    Cyclotomic v = term();
    if (neg) v = -v;
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  Cyclotomic term() {
    Cyclotomic v = factor();
    while (eat('*')) v *= factor();
    return v;
  }
  Cyclotomic factor() {
    skip();
    if (eat('(')) {
      Cyclotomic v = sum();
      if (!eat(')')) throw SyntaxError("expected ')'", i_);
      return v;
    }
    if (i_ < s_.size() && s_[i_] == 'z') {
      ++i_;
      Integer n = integer();
      long e = 1;
      if (eat('^')) {
        bool neg = eat('-');
        e = integer().get_si();
        if (neg) e = -e;
      }
      return Cyclotomic::root_of_unity(static_cast<int>(n.get_si()), e);
    }
    Integer num = integer();
    if (eat('/')) {
      std::size_t at = i_;
      Integer den = integer();
      if (den == 0) throw SyntaxError("zero denominator", at);
      Rational q(num, den);
      q.canonicalize();
      return Cyclotomic(q);
    }
    return Cyclotomic(num);
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Cyclotomic Cyclotomic::parse(const std::string& text) { return ScalarParser(text).run(); }

std::size_t Cyclotomic::hash() const {
  const Cyclotomic c = canonical();
  std::size_t h = std::hash<int>()(c.conductor_);
  for (const auto& q : c.coeffs_) {
    h ^= std::hash<std::string>()(q.get_str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int Cyclotomic::lex_compare(const Cyclotomic& a, const Cyclotomic& b) {
  const int l = static_cast<int>(lcm_long(a.conductor_, b.conductor_));
  const Cyclotomic x = a.embed(l), y = b.embed(l);
  for (std::size_t k = 0; k < x.coeffs_.size(); ++k) {
    const int c = cmp(x.coeffs_[k], y.coeffs_[k]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

}  // namespace ncinv
