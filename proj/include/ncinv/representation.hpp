#pragma once

// Matrix representations of finite groups.

#include <map>
#include <string>
#include <vector>

#include "ncinv/character.hpp"
#include "ncinv/group.hpp"
#include "ncinv/matrix.hpp"

namespace ncinv {

struct Representation {
  GroupPtr group;
  std::size_t degree = 0;
  std::vector<CMatrix> images;  // per element

  const CMatrix& operator()(int g) const { return images[g]; }
  /// Checks rho(g)rho(h) = rho(gh) on the full table; throws NotAGroup.
  void check() const;
  ClassFunction character() const;
  bool is_faithful() const;
};

Representation trivial_representation(GroupPtr g, std::size_t degree = 1);
/// P(gh, h) = 1.
Representation left_regular(GroupPtr g);
/// Permutation matrices from g->perms(); rho(g) e_i = e_{g(i)}.
Representation natural_permutation(GroupPtr g);
/// Degree-one representation from a class function of degree one.
Representation linear_character(GroupPtr g, const ClassFunction& chi);
Representation tensor(const Representation& a, const Representation& b);
Representation direct_sum(const Representation& a, const Representation& b);
/// Restriction to a subgroup, as a representation of subgroup_as_group.
Representation restrict(const Representation& r, const Subgroup& h);
/// Conjugate by an invertible matrix: p^-1 rho(g) p.
Representation change_basis(const Representation& r, const CMatrix& p);

/// The group generated by invertible matrices of finite order, together with
/// its defining representation. Elements are named by shortest words
/// "g1*g2" in the generators (BFS order). Throws NotFiniteOrder past
/// max_order elements.
Representation matrix_group(const std::vector<CMatrix>& gens, std::size_t max_order = 2000);

struct TrivialComponent {
  QuotientGroup quotient;
  CMatrix basis;        // columns span the N-fixed subspace
  Representation rep;   // of quotient.group on that subspace
};
/// The summand of r on which the normal subgroup n acts trivially, as a
/// representation of G/N.
TrivialComponent trivial_component(const Representation& r, const Subgroup& n);

struct Isotypic {
  std::size_t character;  // row of the character table
  int multiplicity;
  CMatrix projector;
  CMatrix basis;          // columns span the isotypic subspace
};
/// Isotypic decomposition through p_chi = (deg/|G|) sum conj(chi(g)) rho(g).
std::vector<Isotypic> decompose(const Representation& r, const CharacterTable& table);

/// Multiplicity of each irreducible (row) in r.
std::vector<int> multiplicities(const Representation& r, const CharacterTable& table);

}  // namespace ncinv
