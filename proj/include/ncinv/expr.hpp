#pragma once

// Noncommutative rational expressions as immutable, shared DAGs.
//
// Nodes are built only through the smart constructors below, which do a
// small amount of local simplification (constant folding, flattening of
// nested sums and products, pulling scalars out of products, pushing
// adjoints down to the leaves). No attempt is made at a normal form;
// equality of rational functions is decided by the realization module.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncinv/cyclotomic.hpp"
#include "ncinv/matrix.hpp"

namespace ncinv {

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Symbol {
  std::string name;
  int base_index = -1;  // position in the base alphabet, -1 for derived symbols
  Expr binding;         // set for derived symbols
};
using SymbolPtr = std::shared_ptr<const Symbol>;

enum class Kind { Const, Var, Sum, Product, Neg, Inverse, Adjoint, Scale };

struct Node {
  Kind kind;
  Cyclotomic value;  // Const, Scale
  SymbolPtr sym;     // Var
  std::vector<Expr> kids;
  std::size_t hash = 0;
};

// -- construction ----------------------------------------------------------

Expr constant(const Cyclotomic& c);
Expr var(const SymbolPtr& s);
Expr add(std::vector<Expr> terms);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(std::vector<Expr> factors);
Expr mul(const Expr& a, const Expr& b);
Expr neg(const Expr& e);
Expr scale(const Cyclotomic& c, const Expr& e);
Expr inv(const Expr& e);
/// The involution: reverses products, conjugates scalars, fixes base letters.
Expr adj(const Expr& e);
Expr power(const Expr& e, long k);

bool is_const(const Expr& e, const Cyclotomic& c);
bool structurally_equal(const Expr& a, const Expr& b);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e->hash; }
};
struct ExprEq {
  bool operator()(const Expr& a, const Expr& b) const { return structurally_equal(a, b); }
};

// -- alphabets ---------------------------------------------------------------

/// Base letters x_1..x_d plus any number of derived symbols bound to
/// expressions over earlier symbols.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& base_names);
  /// x, y, z for d <= 3 (with x1, x2, x3 accepted as aliases), else x1..xd.
  static Alphabet standard(std::size_t d);

  std::size_t dim() const { return base_.size(); }
  const std::vector<SymbolPtr>& base() const { return base_; }
  Expr base_var(std::size_t i) const { return var(base_[i]); }
  /// Declares a derived symbol. Throws if the name is taken.
  SymbolPtr derive(const std::string& name, const Expr& binding);
  SymbolPtr lookup(const std::string& name) const;  // nullptr when unknown
  void alias(const std::string& name, const SymbolPtr& s) { names_[name] = s; }

 private:
  std::vector<SymbolPtr> base_;
  std::map<std::string, SymbolPtr> names_;
};

// -- text -----------------------------------------------------------------

Expr parse_expr(const std::string& text, const Alphabet& alphabet);
std::string to_string(const Expr& e);

// -- semantics --------------------------------------------------------------

using Point = std::map<std::string, CMatrix>;

/// Evaluates at a tuple of square matrices of common size. Symbols absent
/// from the point are evaluated through their bindings.
CMatrix eval_expr(const Expr& e, const Point& point);
/// Several expressions with shared intermediate values.
std::vector<CMatrix> eval_exprs(const std::vector<Expr>& es, const Point& point);

/// Replaces derived symbols by their bindings, recursively.
Expr expand(const Expr& e);
/// Rebuilds e with every Var replaced by f(symbol) (nullptr keeps the Var).
Expr substitute(const Expr& e, const std::function<Expr(const SymbolPtr&)>& f);
/// x_i -> sum_j g_ij x_j on base letters; derived symbols are expanded.
Expr act(const CMatrix& g, const Expr& e, const Alphabet& alphabet);

/// Base-letter indices that occur in e after expansion.
std::vector<int> base_support(const Expr& e);

// -- free group words ---------------------------------------------------------

struct Letter {
  int sym;
  int exp;  // +1 or -1
  bool operator==(const Letter&) const = default;
};
using SignedWord = std::vector<Letter>;

SignedWord reduce_word(const SignedWord& w);
SignedWord word_inverse(const SignedWord& w);
SignedWord concat(const SignedWord& a, const SignedWord& b);
std::string word_str(const SignedWord& w, const std::vector<std::string>& names);
/// Product of letters (inverse letters become Inverse nodes).
Expr word_expr(const SignedWord& w, const std::vector<Expr>& letters);

/// Elements of a finite abelian group Z_{m_1} x ... x Z_{m_k}.
struct AbelianElem {
  std::vector<long> v;
  bool operator==(const AbelianElem&) const = default;
  bool operator<(const AbelianElem& o) const { return v < o.v; }
};

struct SchreierResult {
  std::vector<SignedWord> transversal;  // coset representatives in BFS order
  std::vector<SignedWord> generators;
};

/// Free generators of the kernel of F_d -> A, x_i -> chars[i], by a BFS
/// Schreier transversal over positive letters in index order.
SchreierResult schreier_free_generators(const std::vector<AbelianElem>& chars,
                                        const std::vector<long>& moduli);
/// Same, with a caller-provided prefix-closed transversal of the image.
SchreierResult schreier_free_generators(const std::vector<AbelianElem>& chars,
                                        const std::vector<long>& moduli,
                                        const std::vector<SignedWord>& transversal);

}  // namespace ncinv
