#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A value is stored at some conductor N as coordinates in the power basis
// 1, z, ..., z^(phi(N)-1) reduced modulo the N-th cyclotomic polynomial.
// Binary operations embed both operands into Q(zeta_lcm). Values whose only
// nonzero coordinate is the constant one are demoted to conductor 1, so the
// rational fast path is taken whenever possible. `canonical()` additionally
// moves a value to the smallest conductor that contains it; printing and
// hashing go through that form, so equal values print identically.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ncinv {

using Rational = mpq_class;
using Integer = mpz_class;

class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1, Rational(0)) {}
  Cyclotomic(long v) : conductor_(1), coeffs_(1, Rational(v)) {}  // NOLINT
  Cyclotomic(const Rational& q) : conductor_(1), coeffs_(1, q) { coeffs_[0].canonicalize(); }  // NOLINT
  Cyclotomic(const Integer& z) : conductor_(1), coeffs_(1, Rational(z)) {}  // NOLINT

  /// Builds the value sum_k coeffs[k] * zeta_N^k. Any length is accepted;
  /// exponents are taken mod N and the result is reduced.
  static Cyclotomic from_powers(int conductor, const std::vector<Rational>& coeffs);
  /// zeta_N^k.
  static Cyclotomic root_of_unity(int n, long k = 1);
  /// Positive square root of a natural number, built from quadratic Gauss sums.
  static Cyclotomic sqrt_nat(unsigned long n);

  int conductor() const { return conductor_; }
  /// Power-basis coordinates at the current conductor (length phi(N)).
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return conductor_ == 1; }
  /// Requires is_rational().
  const Rational& rational() const { return coeffs_[0]; }

  /// The same value expressed at a multiple of the current conductor.
  Cyclotomic embed(int conductor) const;
  /// The same value at the smallest conductor whose field contains it.
  Cyclotomic canonical() const;

  Cyclotomic conj() const;
  /// Galois automorphism zeta -> zeta^a (a coprime to the conductor).
  Cyclotomic galois(long a) const;
  Cyclotomic inv() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic pow(long e) const;

  std::complex<double> to_complex() const;
  /// Sign of a real value (value must equal its conjugate). Exact for
  /// rationals; otherwise decided from a high-precision embedding after
  /// checking exactly that the value is nonzero.
  int real_sign() const;

  /// Canonical text, e.g. `1/2*z8^3 - 1/2*z8`. Round-trips through parse().
  std::string str() const;
  static Cyclotomic parse(const std::string& text);

  std::size_t hash() const;

  /// Total order on values at a fixed conductor (coordinate-wise lex).
  /// Used only for deterministic tie-breaking, never for math.
  static int lex_compare(const Cyclotomic& a, const Cyclotomic& b);

 private:
  Cyclotomic(int n, std::vector<Rational> c) : conductor_(n), coeffs_(std::move(c)) {}
  void demote();

  int conductor_;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c);

long euler_phi(long n);
long lcm_long(long a, long b);
/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
const std::vector<long>& cyclotomic_polynomial(int n);

struct CyclotomicHash {
  std::size_t operator()(const Cyclotomic& c) const { return c.hash(); }
};

}  // namespace ncinv
