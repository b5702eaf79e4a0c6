#include "ncinv/matrix.hpp"

#include <sstream>

#include "ncinv/error.hpp"

namespace ncinv {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Cyclotomic> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
}

CMatrix CMatrix::from_rows(const std::vector<std::vector<Cyclotomic>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

CMatrix CMatrix::identity(std::size_t n) { return scalar(n, Cyclotomic(1L)); }

CMatrix CMatrix::scalar(std::size_t n, const Cyclotomic& c) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

CMatrix CMatrix::column(const std::vector<Cyclotomic>& v) { return CMatrix(v.size(), 1, v); }

CMatrix CMatrix::unit_column(std::size_t n, std::size_t k) {
  CMatrix m(n, 1);
  m(k, 0) = 1L;
  return m;
}

CMatrix CMatrix::diag(const std::vector<Cyclotomic>& d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m = *this;
  for (auto& x : m.data_) x = x.conj();
  return m;
}

Cyclotomic CMatrix::trace() const {
  Cyclotomic t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool CMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool CMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((i == j) ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
  CMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shapes differ");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference shapes differ");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(const Cyclotomic& c) {
  for (auto& x : data_)
    if (!x.is_zero()) x *= c;
  return *this;
}

CMatrix CMatrix::operator-() const {
  CMatrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes differ");
  CMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Cyclotomic& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Cyclotomic& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

bool operator==(const CMatrix& a, const CMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

CMatrix CMatrix::pow(long e) const {
  if (!is_square()) throw DimensionMismatch("power of a non-square matrix");
  if (e < 0) return inverse(*this).pow(-e);
  CMatrix result = identity(rows_), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::string CMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Cyclotomic& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return m;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

CMatrix hstack(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack row counts differ");
  CMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

CMatrix vstack(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack column counts differ");
  CMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

RrefResult rref(const CMatrix& a) {
  RrefResult res{a, {}};
  CMatrix& m = res.r;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Cyclotomic inv = m(row, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      const Cyclotomic f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    res.pivots.push_back(c);
    ++row;
  }
  return res;
}

std::size_t rank(const CMatrix& a) { return rref(a).pivots.size(); }

CMatrix kernel(const CMatrix& a) {
  const RrefResult rr = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  CMatrix k(a.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1L;
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) k(rr.pivots[r], f) = -rr.r(r, free[f]);
    // first nonzero entry -> 1
    for (std::size_t i = 0; i < k.rows(); ++i)
      if (!k(i, f).is_zero()) {
        const Cyclotomic s = k(i, f).inv();
        for (std::size_t j = i; j < k.rows(); ++j) k(j, f) *= s;
        break;
      }
  }
  return k;
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row counts differ");
  const RrefResult rr = rref(hstack(a, b));
  const std::size_t n = a.cols();
  CMatrix x(n, b.cols());
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
    if (rr.pivots[r] >= n) throw InconsistentSystem("linear system has no solution");
    for (std::size_t j = 0; j < b.cols(); ++j) x(rr.pivots[r], j) = rr.r(r, n + j);
  }
  return x;
}

CMatrix inverse(const CMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const RrefResult rr = rref(hstack(a, CMatrix::identity(n)));
  if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) throw DivisionByZero("matrix is singular");
  return rr.r.block(0, n, n, n);
}

Cyclotomic determinant(const CMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  CMatrix m = a;
  const std::size_t n = m.rows();
  Cyclotomic det(1L);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Cyclotomic();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const Cyclotomic inv = m(c, c).inv();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Cyclotomic f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

CMatrix column_space(const CMatrix& a) {
  const RrefResult rr = rref(a);
  CMatrix out(a.rows(), rr.pivots.size());
  for (std::size_t k = 0; k < rr.pivots.size(); ++k) out.set_block(0, k, a.col(rr.pivots[k]));
  return out;
}

Eigenbasis simultaneous_eigenbasis(const std::vector<CMatrix>& mats, long e) {
  if (e < 1) throw NotFiniteOrder("exponent must be positive");
  std::size_t n = 0;
  if (!mats.empty()) n = mats[0].rows();
  for (const auto& m : mats) {
    if (!m.is_square() || m.rows() != n) throw DimensionMismatch("eigenbasis: matrices must be square of equal size");
    if (!m.pow(e).is_identity()) throw NotFiniteOrder("matrix order does not divide the exponent");
  }
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (mats[i] * mats[j] != mats[j] * mats[i]) throw NotCommuting("matrices do not commute");

  struct Space {
    CMatrix v;
    std::vector<long> exps;
  };
  std::vector<Space> spaces{{CMatrix::identity(n), {}}};
  std::vector<Cyclotomic> roots;
  for (long k = 0; k < e; ++k) roots.push_back(Cyclotomic::root_of_unity(static_cast<int>(e), k));
  for (const auto& a : mats) {
    std::vector<Space> next;
    for (const auto& s : spaces) {
      const std::size_t d = s.v.cols();
      const CMatrix b = solve(s.v, a * s.v);  // restriction of a to the subspace
      for (long k = 0; k < e; ++k) {
        const CMatrix ker = kernel(b - CMatrix::scalar(d, roots[k]));
        if (ker.cols() == 0) continue;
        Space t{s.v * ker, s.exps};
        t.exps.push_back(k);
        next.push_back(std::move(t));
      }
    }
    spaces = std::move(next);
  }
  Eigenbasis out;
  out.basis = CMatrix(n, n);
  std::size_t col = 0;
  for (const auto& s : spaces)
    for (std::size_t j = 0; j < s.v.cols(); ++j) {
      out.basis.set_block(0, col++, s.v.col(j));
      out.exponents.push_back(s.exps);
      std::vector<Cyclotomic> ev;
      for (long k : s.exps) ev.push_back(roots[k]);
      out.eigenvalues.push_back(std::move(ev));
    }
  return out;
}

}  // namespace ncinv
