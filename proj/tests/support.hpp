#pragma once

// Shared helpers for the test binaries.

#include <memory>
#include <random>

#include "ncinv/error.hpp"
#include "ncinv/invariants.hpp"

namespace ncinv::testing {

inline GroupPtr family(const std::string& f) { return std::make_shared<FiniteGroup>(make_group(f)); }

/// Z3 acting by diag(w, w^2) on two letters.
inline Representation z3_diagonal() {
  GroupPtr z3 = family("Z3");
  Representation r{z3, 2, {}};
  for (int g = 0; g < 3; ++g) {
    CMatrix m(2, 2);
    const Cyclotomic w = Cyclotomic::root_of_unity(3, g);
    m(0, 0) = w;
    m(1, 1) = w.conj();
    r.images.push_back(m);
  }
  return r;
}

/// Small random expression: letters, integers, sums, products and at most
/// one inversion of a sum.
inline Expr random_expression(std::mt19937_64& rng, const Alphabet& a, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(a.dim()) - 1);
  std::uniform_int_distribution<int> small(1, 3);
  const int k = pick(rng);
  if (depth == 0 || k < 3) {
    if (k == 0) return constant(Cyclotomic(small(rng)));
    return a.base_var(letter(rng));
  }
  if (k < 6) return add(random_expression(rng, a, depth - 1), random_expression(rng, a, depth - 1));
  if (k < 9) return mul(random_expression(rng, a, depth - 1), random_expression(rng, a, depth - 1));
  return inv(add(constant(Cyclotomic(small(rng) + 1)), random_expression(rng, a, depth - 1)));
}

/// sum over g of act(g, s).
inline Expr symmetrize(const Representation& r, const Expr& s, const Alphabet& a) {
  std::vector<Expr> terms;
  for (int g = 0; g < r.group->order(); ++g) terms.push_back(act(r(g), s, a));
  return add(std::move(terms));
}

}  // namespace ncinv::testing
