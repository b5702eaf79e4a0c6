#include "ncinv/error.hpp"
#include "ncinv/positivity.hpp"

namespace ncinv {

bool is_hermitian(const CMatrix& a) { return a.is_square() && a == a.adjoint(); }

// Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
std::vector<Cyclotomic> characteristic_polynomial(const CMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Cyclotomic> c(n + 1);
  c[n] = 1;
  CMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    c[n - k] = -(a * m).trace() / Cyclotomic(static_cast<long>(k));
  }
  return c;
}

bool is_psd(const CMatrix& a) {
  if (!is_hermitian(a)) throw DimensionMismatch("semidefiniteness needs a hermitian matrix");
  const auto c = characteristic_polynomial(a);
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k <= n; ++k) {
    if (c[k].is_zero()) continue;
    const int want = (n - k) % 2 == 0 ? 1 : -1;
    if (c[k].real_sign() != want) return false;
  }
  return true;
}

}  // namespace ncinv
