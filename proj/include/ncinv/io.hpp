#pragma once

// JSON file formats. Matrices are row-major arrays of cyclotomic literal
// strings; expressions are strings in the expression grammar.

#include <json.hpp>

#include "ncinv/positivity.hpp"

namespace ncinv {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const CMatrix& m);
/// Throws FormatError.
CMatrix matrix_from_json(const Json& j);

/// {order, mul, names} or {family}.
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

/// {group, degree, images: {elementName: matrix}}; group is a group object or
/// a family string. Every element must have an image and the images must
/// multiply like the group (else FormatError).
Json representation_to_json(const Representation& r);
Representation representation_from_json(const Json& j);

/// "perm" (natural permutation), "regular", "diagonal" (diag(w^k, w^-k) on a
/// generator of a cyclic group), "trivial" (of the given degree) or "auto"
/// (perm when the group carries permutations, else regular).
Representation named_representation(GroupPtr g, const std::string& kind, std::size_t degree = 1);

/// {n, c, b, A0, coeffs: {symbol: matrix}}.
Json realization_to_json(const Realization& r);
/// Symbols are looked up in the alphabet (UnknownSymbol otherwise).
Realization realization_from_json(const Json& j, const Alphabet& alphabet);

struct Verification {
  std::string mode;
  std::size_t points = 0;
  std::uint64_t seed = 0;
};

/// {group, rep, generators: [{name, expr, character, provenance}], count, verified}.
Json invariant_basis_to_json(const InvariantBasis& ib, const Verification& v);

/// Matrix of expression strings.
Json expr_matrix_to_json(const ExprMatrix& m);
ExprMatrix expr_matrix_from_json(const Json& j, const Alphabet& alphabet);

/// {group, R, QG, verification: {points, seed, verdicts}}.
Json certificate_to_json(const CertificateTransform& t, const ConstraintMatrix& qg, std::size_t points,
                         std::uint64_t seed, const std::vector<std::string>& verdicts);

/// Point as {symbol: matrix}.
Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

}  // namespace ncinv
