#pragma once

// Invariant positivity certificates: R_G, Q_G and hermitian-square rewriting.

#include <cstdint>
#include <string>
#include <vector>

#include "ncinv/invariants.hpp"

namespace ncinv {

using ExprMatrix = std::vector<std::vector<Expr>>;

struct TransformStage {
  std::string label;
  std::vector<int> reps;   // quotient element -> element of G
  CMatrix gamma;           // rows: quotient elements, columns: characters
  std::vector<Expr> m;     // m_mu, one per character in dual order
  std::vector<std::string> m_words;
  int twist = 0;           // dual index lambda with gamma(k, mu) = (lambda mu)(k) / sqrt|N|
};

struct CertificateTransform {
  GroupPtr group;
  Representation rep;
  std::vector<int> order;  // row g of R corresponds to the element order[g]
  ExprMatrix r;
  ExprMatrix r_inv;        // built from m_mu^-1 and gamma*
  std::vector<TransformStage> stages;
};

/// R_G = Gamma M stage by stage along the derived series. With printed_twist
/// the first nontrivial character is used as lambda, which reproduces the
/// usual printed matrices; lambda = trivial gives the same Q_G and makes
/// R^-1 (g s)_g invariant. Throws NotUnitary (also for non-real matrices,
/// whose action does not commute with the involution) and NotSolvable.
CertificateTransform build_R(const Representation& rho, Alphabet& alphabet, bool printed_twist = true,
                             std::uint64_t seed = 1);

struct ConstraintMatrix {
  std::string label;
  ExprMatrix q;
};

/// Q = adj(Q) checked at random hermitian points; throws FormatError.
ConstraintMatrix make_constraint(const std::string& label, ExprMatrix q, const Alphabet& alphabet);
/// "entire", "disk", "disk-lmi", "bidisk", "orthant" for two letters;
/// "entire" and "ball" (1 - sum x_i^2) for any number.
ConstraintMatrix named_constraint(const std::string& name, const Alphabet& alphabet);

/// (R (x) I)* (sum over g of g.Q) (R (x) I). Entries that are identically
/// zero are replaced by the constant 0.
ConstraintMatrix build_QG(const ConstraintMatrix& q, const CertificateTransform& t, const Alphabet& alphabet);

/// s* s = (0 b*) K^-1 (0; b) with K = [[c c*, L*], [-L, 0]], and the middle
/// matrix P* P = [[c c*, 0], [0, 0]] of the expanded form.
struct SosBlock {
  Realization bordered;
  CMatrix middle;
  CMatrix p;
  Expr as_expr() const { return realization_to_expr(bordered); }
};
/// The pencil must be over base letters.
SosBlock sos_block_realization(const Realization& s);

struct WeightedSquare {
  Expr weight;  // the term is s* weight s
  Expr s;
};

struct SosDecomposition {
  CertificateTransform transform;
  ConstraintMatrix qg;
  std::vector<SosBlock> blocks;
  /// r = sum_i v_i* Q_G v_i, with invariant entries
  std::vector<std::vector<Expr>> vectors;
  /// set when Q_G is diagonal
  std::vector<WeightedSquare> terms;
  std::size_t points_checked = 0;
};

/// r = sum_i adj(s_i) s_i must be G-invariant (else NotInvariant).
SosDecomposition invariant_sos_rewrite(const std::vector<Expr>& s, const Representation& rho, Alphabet& alphabet,
                                       const Budget& budget = Budget());

// -- exact semidefiniteness ------------------------------------------------------

/// det(t I - A), coefficients from degree 0 up (monic).
std::vector<Cyclotomic> characteristic_polynomial(const CMatrix& a);
bool is_hermitian(const CMatrix& a);
/// Hermitian A is PSD iff the coefficients of its characteristic polynomial
/// alternate in sign (Descartes' rule for a real-rooted polynomial).
/// Throws DimensionMismatch for non-hermitian input.
bool is_psd(const CMatrix& a);

}  // namespace ncinv
