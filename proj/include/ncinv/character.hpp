#pragma once

// Exact character tables and duals of finite abelian groups.

#include <vector>

#include "ncinv/cyclotomic.hpp"
#include "ncinv/group.hpp"

namespace ncinv {

/// A class function stored per element (not per class).
using ClassFunction = std::vector<Cyclotomic>;

struct CharacterTable {
  std::vector<std::vector<int>> classes;  // by size, then least element
  std::vector<int> class_of;              // element -> class
  std::vector<std::vector<Cyclotomic>> rows;  // row i, class j
  std::vector<int> degrees;

  std::size_t size() const { return rows.size(); }
  /// Row i as a function on elements.
  ClassFunction character(std::size_t i) const;
};

/// Dixon-Schneider over F_p with p = 1 mod exp(G), values lifted through
/// eigenvalue multiplicities. Rows: trivial first, then by degree, then
/// descending lex order of values. Throws BudgetExceeded when |G| > 60.
CharacterTable character_table(const FiniteGroup& g);

/// (1/|G|) sum f1(g) conj(f2(g)).
Cyclotomic inner_product(const FiniteGroup& g, const ClassFunction& f1, const ClassFunction& f2);

struct DualGroup {
  std::vector<int> factors;              // invariant factors d1 | d2 | ...
  std::vector<int> basis;                // element of order d_i
  std::vector<std::vector<int>> coords;  // element -> exponents on basis
  std::vector<std::vector<int>> chars;   // exponent tuples t, lex order

  int order() const { return static_cast<int>(chars.size()); }
  int exponent() const { return factors.empty() ? 1 : factors.back(); }
  int trivial() const { return 0; }
  /// chi_t(a) = prod zeta_{d_i}^(t_i a_i).
  Cyclotomic value(int chi, int a) const;
  ClassFunction character(int chi) const;
  int mul(int chi, int eta) const;
  int inv(int chi) const;
  int index_of(const std::vector<int>& t) const;
  /// Label such as "chi(1,0)".
  std::string name(int chi) const;
};

/// Throws NotAbelian.
DualGroup pontryagin_dual(const FiniteGroup& a);

/// The character of G restricted to the abelian normal subgroup n (given
/// with its dual), decomposed: multiplicity of each dual character.
std::vector<int> restriction_multiplicities(const FiniteGroup& g, const ClassFunction& chi, const Subgroup& n,
                                            const DualGroup& dual);

}  // namespace ncinv
