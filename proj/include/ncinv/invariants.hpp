#pragma once

// Generators of invariant skew fields and rewriting over them.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncinv/character.hpp"
#include "ncinv/expr.hpp"
#include "ncinv/realization.hpp"
#include "ncinv/representation.hpp"

namespace ncinv {

// -- unramified groups --------------------------------------------------------

struct UnramifiedCheck {
  bool ok = true;
  /// Per irreducible row: restriction multiplicities over the dual of N.
  std::vector<std::vector<int>> restrictions;
  std::optional<std::size_t> witness;  // first row violating the condition
};
/// n must be a nontrivial normal abelian subgroup.
UnramifiedCheck is_unramified_over(const FiniteGroup& g, const Subgroup& n);

struct UnramifiedStep {
  int order = 0;             // order of the group at this step
  std::string label;
  Subgroup n;                // chosen N (indices in that group)
  std::vector<std::string> n_names;
};
struct UnramifiedCertificate {
  bool ok = false;
  std::vector<UnramifiedStep> chain;  // down to the trivial group when ok
  /// On failure: for each candidate N at the top level, the row that breaks it
  /// (or the depth at which the quotient failed).
  std::vector<std::pair<Subgroup, std::string>> failures;
};
UnramifiedCertificate is_totally_unramified(const FiniteGroup& g);

// -- complete representations ---------------------------------------------------

/// One level of a completeness certificate: N and the irreducible rows
/// (of the current character table) chosen for pi_B.
struct CompleteLevel {
  GroupPtr group;
  Subgroup n;
  std::vector<std::size_t> pi_b;
  ClassFunction character;  // of the representation at this level
};
struct CompletenessResult {
  bool complete = false;
  std::vector<CompleteLevel> levels;  // outermost first
  std::string reason;
};

/// Character-level test. The representation derived at each level has
/// character chi_{N-trivial} + (B J + J B + B B + B J B + B B B)_{N-trivial},
/// which is the action on the generators built from pi_B = B and pi_J = J.
/// Throws NotFaithful when rho is not faithful.
CompletenessResult is_complete(const Representation& rho);
CompletenessResult is_complete_character(GroupPtr g, const ClassFunction& chi);

// -- generators ---------------------------------------------------------------

struct TaggedGenerator {
  std::string name;
  Expr expr;             // over the symbols of its level
  int character = 0;     // index in the current dual; 0 means invariant
  std::string provenance;
  int depth = 0;
};

struct InvariantBasis {
  GroupPtr group;
  Representation rep;
  std::vector<TaggedGenerator> generators;
  std::vector<SymbolPtr> symbols;  // one derived symbol per generator
  std::size_t expected = 0;        // |G|(d-1)+1 (or with the image dual)
  std::string mode;
};

enum class AbelianMode { Schreier, Monomial };

/// Linear forms diagonalizing an abelian action: act(g, form_k) = chi_k(g) form_k.
struct Diagonalization {
  std::vector<Expr> forms;
  std::vector<std::vector<Cyclotomic>> coeffs;  // over the acting symbols
  std::vector<int> chars;                       // dual indices
  DualGroup dual;
};
Diagonalization diagonalize(const Representation& rho, const std::vector<SymbolPtr>& syms);

/// rho must be a representation of an abelian group on the base letters of
/// alphabet. Derived symbols for the generators are added to alphabet.
InvariantBasis abelian_generators(const Representation& rho, Alphabet& alphabet, AbelianMode mode);

/// Generators for a complete representation, built level by level; each level
/// works on symbols bound to the previous level's generators.
InvariantBasis complete_generators(const Representation& rho, Alphabet& alphabet);

// -- lifting realizations -------------------------------------------------------

/// Diagonalized action of K/H on the span of the K-orbit of H-invariant
/// symbols qs (H normal in K, both normal in G, K/H abelian).
struct OrbitTagging {
  FiniteGroup quotient;            // K/H
  std::vector<int> reps;           // quotient element -> element of G
  DualGroup dual;
  std::vector<SymbolPtr> symbols;  // eigen-generators, bound to orbit combinations
  std::vector<int> tags;           // dual index of each eigen-generator
  /// qs[i] = sum_l in_basis[i][l] symbols[l]
  std::vector<std::vector<Cyclotomic>> in_basis;
  std::size_t orbit_size = 0;
};
/// The span is found from evaluation vectors at random 3x3 points; the
/// action matrices are checked to be a commuting homomorphism of finite order.
OrbitTagging tag_orbit(const Representation& rho, const Subgroup& k, const Subgroup& h,
                       const std::vector<SymbolPtr>& qs, Alphabet& alphabet, const std::string& prefix,
                       std::mt19937_64& rng);

struct LiftResult {
  Realization realization;               // over the new symbols
  std::vector<TaggedGenerator> generators;
  std::vector<SymbolPtr> symbols;
  std::vector<int> d_elements;           // dual indices used as block labels
  std::vector<Expr> monomials;           // m_chi per block
  std::string trace;
};

/// r is a realization whose pencil symbols carry the characters tags (dual
/// indices of the acting abelian group). Blows r up by the monomial table of
/// the subgroup of the dual generated by the tags.
LiftResult lift_realization(const Realization& r, const std::vector<int>& tags, const DualGroup& dual,
                            Alphabet& alphabet, const std::string& prefix, const Budget& budget = Budget());

struct RewriteResult {
  Realization realization;  // over G-invariant symbols
  std::vector<TaggedGenerator> generators;
  std::vector<SymbolPtr> symbols;
  std::vector<std::string> trace;
  std::size_t points_checked = 0;
};

/// Rewrites a G-invariant expression as a realization over G-invariant
/// generators, lifting up the derived series. Throws NotInvariant, NotSolvable.
RewriteResult solvable_rewrite(const Expr& e, const Representation& rho, Alphabet& alphabet,
                               const Budget& budget = Budget());

/// Witness search over the base letters (derived symbols evaluated through
/// their bindings).
std::optional<Point> find_base_witness(const Pencil& p, const Alphabet& alphabet, const Budget& budget);

/// act(g, .) on several expressions, sharing the expansion of derived symbols.
std::vector<Expr> act_all(const CMatrix& g, const std::vector<Expr>& es, const Alphabet& alphabet);

/// Symbolic group action on an expression over the base letters.
Expr act_element(const Representation& rho, int g, const Expr& e, const Alphabet& alphabet);

}  // namespace ncinv
