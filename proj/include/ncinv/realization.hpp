#pragma once

// Linear-pencil realizations r = c* L^-1 b with L = A0 + sum_i A_i x_i.
//
// Layouts produced by realize():
//   constant a      n = 1   A0 = [1], c = 1, b = a
//   letter x        n = 2   A0 = I, A_x = [[0,-1],[0,0]], c = e1, b = e2
//   sum             n1+n2   block diagonal, c and b stacked
//   product r1 r2   n1+n2   L = [[L1, -b1 c2*], [0, L2]], c = (c1; 0), b = (0; b2)
//   inverse r^-1    n+1     L' = [[L, -b], [c*, 0]], c = b = e_{n+1}
//   scale / neg     n       b scaled
// Evaluation at a point of size m uses L(X) = A0 (x) I_m + sum A_i (x) X_i.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncinv/expr.hpp"
#include "ncinv/matrix.hpp"

namespace ncinv {

struct Pencil {
  std::size_t n = 0;
  CMatrix a0;
  std::vector<SymbolPtr> syms;
  std::vector<CMatrix> coeffs;

  /// Coefficient of s, or a zero matrix.
  CMatrix coeff(const SymbolPtr& s) const;
  long index_of(const SymbolPtr& s) const;
  /// L(X) at a point (values for symbols missing from the point are
  /// taken from their bindings).
  CMatrix eval(const Point& point, std::size_t m) const;
  /// L at a scalar tuple (one value per entry of syms).
  CMatrix at_scalars(const std::vector<Cyclotomic>& t) const;
};

struct Realization {
  CMatrix c;  // n x 1
  Pencil pencil;
  CMatrix b;  // n x 1
  std::optional<Point> witness;

  std::size_t size() const { return pencil.n; }
  /// c* L(X)^-1 b. Throws SingularAtPoint when L(X) is singular.
  CMatrix eval(const Point& point) const;
};

/// Search limits shared by witness search and randomized checks.
struct Budget {
  std::size_t max_size = 4;   // largest matrix size tried
  std::size_t attempts = 12;  // random tuples per size
  std::size_t points = 8;     // points for randomized equality
  std::uint64_t seed = 1;
  /// Reads NCINV_BUDGET ("max_size=..,attempts=..,points=..,seed=..").
  static Budget from_env(Budget base);
  static Budget from_env() { return from_env(Budget{}); }
};

// -- building blocks (also used by the lifting code) -----------------------

Realization realize_const(const Cyclotomic& a);
Realization realize_var(const SymbolPtr& s);
Realization realize_sum(const Realization& r1, const Realization& r2);
Realization realize_product(const Realization& r1, const Realization& r2);
Realization realize_inverse(const Realization& r);
Realization realize_scale(const Cyclotomic& a, const Realization& r);
/// The involution: b* (L*)^-1 c, with L* built from conjugate-transposed
/// coefficients. Valid for pencils over base letters only.
Realization realize_adjoint(const Realization& r);

struct RealizeOptions {
  bool expand_symbols = true;  // realize over base letters
  bool require_witness = true;
  Budget budget;
};

/// Standard inductive realization. Throws DegeneracyNotWitnessed when no
/// point making the pencil invertible is found within the budget.
Realization realize(const Expr& e, const RealizeOptions& opts = RealizeOptions());

/// Random square matrices with integer entries in [-5, 5].
Point random_point(std::mt19937_64& rng, const std::vector<SymbolPtr>& syms, std::size_t m);
/// Random hermitian integer matrices.
Point random_hermitian_point(std::mt19937_64& rng, const std::vector<SymbolPtr>& syms, std::size_t m);

/// Scalar tuples tried first by every search, in order.
std::vector<std::vector<Cyclotomic>> scalar_candidates(std::size_t d, std::uint64_t seed);

std::optional<Point> find_witness(const Pencil& p, const Budget& budget);

// -- series and equality -----------------------------------------------------

struct SeriesTable {
  std::vector<Cyclotomic> center;  // one scalar per pencil symbol
  std::vector<SymbolPtr> syms;
  std::map<std::vector<int>, Cyclotomic> coefficients;  // word -> coefficient
};

/// Coefficients of r(t + x) for all words of length <= degree, where t is
/// the first scalar candidate at which L is invertible (or the given one).
SeriesTable series(const Realization& r, std::size_t degree,
                   const std::optional<std::vector<Cyclotomic>>& center = std::nullopt);

enum class Verdict { EqualProven, EqualProbable, Distinct };
std::string verdict_name(Verdict v);

struct EqualityResult {
  Verdict verdict;
  std::optional<Point> witness;           // for Distinct
  std::vector<Cyclotomic> center;         // for EqualProven
  std::size_t points_checked = 0;         // for EqualProbable
  std::size_t size1 = 0, size2 = 0;
};

/// Difference r1 - r2 as a single realization.
Realization realize_difference(const Realization& r1, const Realization& r2);
/// Whether c* L^-1 b vanishes identically, decided at an invertible scalar
/// center through the reachable subspace of L0^-1 b under L0^-1 A_i.
/// Returns nullopt when no candidate center makes L invertible.
std::optional<bool> is_zero_at_center(const Realization& r, std::vector<Cyclotomic>* center_out = nullptr,
                                      std::uint64_t seed = 1);

EqualityResult nc_equal(const Realization& r1, const Realization& r2, const Budget& budget = Budget());
EqualityResult nc_equal(const Expr& e1, const Expr& e2, const Budget& budget = Budget());

/// Reads the realization back as an expression, by symbolic elimination on
/// the pencil. Pivots are chosen so that each is invertible at the witness.
Expr realization_to_expr(const Realization& r);

}  // namespace ncinv
