#pragma once

// Finite groups given by multiplication tables.

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ncinv {

using Subgroup = std::vector<int>;  // sorted element indices

class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Verifies the group axioms; throws NotAGroup.
  FiniteGroup(std::vector<std::vector<int>> mul, std::vector<std::string> names, std::string label = "");

  int order() const { return static_cast<int>(mul_.size()); }
  int id() const { return id_; }
  int op(int a, int b) const { return mul_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int pow(int a, long k) const;
  int conj(int g, int x) const { return op(op(g, x), inv(g)); }  // g x g^-1
  int element_order(int a) const { return orders_[a]; }
  int exponent() const;
  const std::vector<std::vector<int>>& table() const { return mul_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int a) const { return names_[a]; }
  /// Index of the element with this name; throws FormatError.
  int index_of(const std::string& name) const;
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  bool is_abelian() const;

  /// Permutation action on {0..deg-1} when the group was built from
  /// permutations; the natural representation uses it.
  const std::vector<std::vector<int>>& perms() const { return perms_; }
  void set_perms(std::vector<std::vector<int>> p) { perms_ = std::move(p); }

 private:
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  std::vector<int> orders_;
  int id_ = 0;
  std::vector<std::string> names_;
  std::string label_;
  std::vector<std::vector<int>> perms_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// -- subgroups ----------------------------------------------------------------

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
Subgroup normal_closure(const FiniteGroup& g, const std::vector<int>& gens);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
bool is_abelian_subgroup(const FiniteGroup& g, const Subgroup& h);
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h);
Subgroup whole(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);

/// Conjugacy classes sorted by size, then least element.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

struct DerivedSeries {
  std::vector<Subgroup> chain;  // G = chain[0] > chain[1] > ...
  bool solvable;
};
DerivedSeries derived_series(const FiniteGroup& g);

/// All normal subgroups, ordered by size then element list.
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);
/// Nontrivial normal abelian subgroups, same order.
std::vector<Subgroup> normal_abelian_subgroups(const FiniteGroup& g);

struct SubgroupGroup {
  FiniteGroup group;
  std::vector<int> embed;  // subgroup element -> element of the parent
};
SubgroupGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h);

struct QuotientGroup {
  FiniteGroup group;
  std::vector<int> map;   // parent element -> coset index
  std::vector<int> reps;  // coset index -> least parent element in the coset
};
/// Throws NotNormal.
QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n);

// -- construction -------------------------------------------------------------

/// Closure of permutations of {0..deg-1}. Elements are sorted
/// lexicographically and named in cycle notation (points from 1).
FiniteGroup permutation_group(const std::vector<std::vector<int>>& gens, const std::string& label = "");
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// A x| Z_n, the generator of Z_n acting by the automorphism phi of A.
FiniteGroup semidirect_cyclic(const FiniteGroup& a, int n, const std::vector<int>& phi, const std::string& label = "");
FiniteGroup cyclic_group(int n);
/// Dicyclic group of order 4n.
FiniteGroup dicyclic_group(int n);
/// SL(2, p) as 2x2 matrices mod p.
FiniteGroup special_linear_2(int p);

/// Family names: Z<n>, C<n>, V, V4, D<n> (order 2n), S<n>, A<n> (n <= 5),
/// Q8, Q16, Dic<n>, SD16, M16, F20, SL(2,3), "AxB" products and the named
/// groups listed by catalog_names().
FiniteGroup make_group(const std::string& family);
/// Every built-in group of order below 24, one name per isomorphism class.
std::vector<std::string> catalog_names();

}  // namespace ncinv
