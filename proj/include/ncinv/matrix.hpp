#pragma once

// Dense matrices over cyclotomic fields and exact elimination.

#include <string>
#include <vector>

#include "ncinv/cyclotomic.hpp"

namespace ncinv {

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Cyclotomic> entries);
  /// Row-major nested initializer, all rows must have equal length.
  static CMatrix from_rows(const std::vector<std::vector<Cyclotomic>>& rows);
  static CMatrix identity(std::size_t n);
  static CMatrix scalar(std::size_t n, const Cyclotomic& c);
  static CMatrix column(const std::vector<Cyclotomic>& v);
  static CMatrix unit_column(std::size_t n, std::size_t k);
  static CMatrix diag(const std::vector<Cyclotomic>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Cyclotomic& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Cyclotomic>& entries() const { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  Cyclotomic trace() const;
  bool is_zero() const;
  bool is_identity() const;

  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);
  CMatrix col(std::size_t j) const { return block(0, j, rows_, 1); }
  CMatrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(const Cyclotomic& c);
  CMatrix operator-() const;
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const Cyclotomic& c, CMatrix a) { return a *= c; }
  friend CMatrix operator*(CMatrix a, const Cyclotomic& c) { return a *= c; }
  friend bool operator==(const CMatrix& a, const CMatrix& b);
  friend bool operator!=(const CMatrix& a, const CMatrix& b) { return !(a == b); }

  CMatrix pow(long e) const;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Cyclotomic> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);
CMatrix hstack(const CMatrix& a, const CMatrix& b);
CMatrix vstack(const CMatrix& a, const CMatrix& b);

struct RrefResult {
  CMatrix r;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Pivots are taken column by column, the pivot
/// row being the first row (in order) with a nonzero entry.
RrefResult rref(const CMatrix& a);
std::size_t rank(const CMatrix& a);
/// Columns spanning the right kernel; each normalised so that its first
/// nonzero entry is 1. Ordered by free column.
CMatrix kernel(const CMatrix& a);
/// X with A X = B. Free variables are set to 0. Throws InconsistentSystem.
CMatrix solve(const CMatrix& a, const CMatrix& b);
/// Throws DivisionByZero when singular.
CMatrix inverse(const CMatrix& a);
Cyclotomic determinant(const CMatrix& a);
/// Orthonormal-free column basis of the span of the columns (pivot columns).
CMatrix column_space(const CMatrix& a);

struct Eigenbasis {
  CMatrix basis;                            // columns are joint eigenvectors
  std::vector<std::vector<long>> exponents;  // per column, lambda_k = zeta_e^exponent
  std::vector<std::vector<Cyclotomic>> eigenvalues;
};

/// Joint eigenbasis of commuting matrices of finite order dividing e.
/// Eigenvalues are tried in order zeta_e^0, zeta_e^1, ... for each matrix
/// in turn, refining the current joint eigenspaces.
Eigenbasis simultaneous_eigenbasis(const std::vector<CMatrix>& mats, long e);

}  // namespace ncinv
