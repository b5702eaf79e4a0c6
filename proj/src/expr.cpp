#include "ncinv/expr.hpp"

#include <set>

#include "ncinv/error.hpp"

namespace ncinv {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

Expr make(Kind k, Cyclotomic value, SymbolPtr sym, std::vector<Expr> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  std::size_t h = mix(0, static_cast<std::size_t>(k));
  if (k == Kind::Const || k == Kind::Scale) h = mix(h, value.hash());
  if (sym) h = mix(mix(h, std::hash<std::string>()(sym->name)), static_cast<std::size_t>(sym->base_index + 1));
  for (const auto& c : kids) h = mix(h, c->hash);
  n->value = std::move(value);
  n->sym = std::move(sym);
  n->kids = std::move(kids);
  n->hash = h;
  return n;
}

}  // namespace

Expr constant(const Cyclotomic& c) { return make(Kind::Const, c, nullptr, {}); }

Expr var(const SymbolPtr& s) { return make(Kind::Var, Cyclotomic(), s, {}); }

bool is_const(const Expr& e, const Cyclotomic& c) { return e->kind == Kind::Const && e->value == c; }

Expr add(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  Cyclotomic c;
  long const_slot = -1;
  for (auto& t : terms) {
    std::vector<Expr> parts = (t->kind == Kind::Sum) ? t->kids : std::vector<Expr>{t};
    for (auto& p : parts) {
      if (p->kind == Kind::Const) {
        c += p->value;
        if (const_slot < 0) {
          const_slot = static_cast<long>(flat.size());
          flat.push_back(nullptr);
        }
      } else {
        flat.push_back(p);
      }
    }
  }
  std::vector<Expr> out;
  for (auto& f : flat) {
    if (f) {
      out.push_back(f);
    } else if (!c.is_zero()) {
      out.push_back(constant(c));
    }
  }
  if (out.empty()) return constant(Cyclotomic());
  if (out.size() == 1) return out[0];
  return make(Kind::Sum, Cyclotomic(), nullptr, std::move(out));
}

Expr add(const Expr& a, const Expr& b) { return add(std::vector<Expr>{a, b}); }
Expr sub(const Expr& a, const Expr& b) { return add(std::vector<Expr>{a, neg(b)}); }

Expr mul(std::vector<Expr> factors) {
  Cyclotomic coef(1L);
  std::vector<Expr> rest;
  std::function<void(const Expr&)> take = [&](const Expr& f) {
    switch (f->kind) {
      case Kind::Const:
        coef *= f->value;
        break;
      case Kind::Scale:
        coef *= f->value;
        take(f->kids[0]);
        break;
      case Kind::Neg:
        coef = -coef;
        take(f->kids[0]);
        break;
      case Kind::Product:
        for (const auto& k : f->kids) take(k);
        break;
      default:
        rest.push_back(f);
    }
  };
  for (const auto& f : factors) take(f);
  if (coef.is_zero()) return constant(Cyclotomic());
  if (rest.empty()) return constant(coef);
  Expr body = rest.size() == 1 ? rest[0] : make(Kind::Product, Cyclotomic(), nullptr, std::move(rest));
  return scale(coef, body);
}

Expr mul(const Expr& a, const Expr& b) { return mul(std::vector<Expr>{a, b}); }

Expr neg(const Expr& e) {
  switch (e->kind) {
    case Kind::Const:
      return constant(-e->value);
    case Kind::Neg:
      return e->kids[0];
    case Kind::Scale:
      return scale(-e->value, e->kids[0]);
    default:
      return make(Kind::Neg, Cyclotomic(), nullptr, {e});
  }
}

Expr scale(const Cyclotomic& c, const Expr& e) {
  if (c.is_zero()) return constant(Cyclotomic());
  if (c.is_one()) return e;
  switch (e->kind) {
    case Kind::Const:
      return constant(c * e->value);
    case Kind::Scale:
      return scale(c * e->value, e->kids[0]);
    case Kind::Neg:
      return scale(-c, e->kids[0]);
    default:
      break;
  }
  if (c == Cyclotomic(-1L)) return make(Kind::Neg, Cyclotomic(), nullptr, {e});
  return make(Kind::Scale, c, nullptr, {e});
}

Expr inv(const Expr& e) {
  switch (e->kind) {
    case Kind::Const:
      if (!e->value.is_zero()) return constant(e->value.inv());
      break;
    case Kind::Inverse:
      return e->kids[0];
    case Kind::Scale:
      return scale(e->value.inv(), inv(e->kids[0]));
    case Kind::Neg:
      return neg(inv(e->kids[0]));
    default:
      break;
  }
  return make(Kind::Inverse, Cyclotomic(), nullptr, {e});
}

Expr adj(const Expr& e) {
  switch (e->kind) {
    case Kind::Const:
      return constant(e->value.conj());
    case Kind::Var:
      if (e->sym->base_index >= 0) return e;
      return make(Kind::Adjoint, Cyclotomic(), nullptr, {e});
    case Kind::Adjoint:
      return e->kids[0];
    case Kind::Sum: {
      std::vector<Expr> t;
      for (const auto& k : e->kids) t.push_back(adj(k));
      return add(std::move(t));
    }
    case Kind::Product: {
      std::vector<Expr> f;
      for (auto it = e->kids.rbegin(); it != e->kids.rend(); ++it) f.push_back(adj(*it));
      return mul(std::move(f));
    }
    case Kind::Neg:
      return neg(adj(e->kids[0]));
    case Kind::Scale:
      return scale(e->value.conj(), adj(e->kids[0]));
    case Kind::Inverse:
      return inv(adj(e->kids[0]));
  }
  return e;
}

Expr power(const Expr& e, long k) {
  if (k < 0) return inv(power(e, -k));
  std::vector<Expr> f(static_cast<std::size_t>(k), e);
  if (f.empty()) return constant(Cyclotomic(1L));
  return mul(std::move(f));
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
  if ((a->kind == Kind::Const || a->kind == Kind::Scale) && a->value != b->value) return false;
  if (a->kind == Kind::Var && a->sym != b->sym &&
      (a->sym->name != b->sym->name || a->sym->base_index != b->sym->base_index))
    return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structurally_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

Alphabet::Alphabet(const std::vector<std::string>& base_names) {
  for (std::size_t i = 0; i < base_names.size(); ++i) {
    auto s = std::make_shared<Symbol>();
    s->name = base_names[i];
    s->base_index = static_cast<int>(i);
    if (names_.count(s->name)) throw FormatError("duplicate symbol name " + s->name);
    names_[s->name] = s;
    base_.push_back(s);
  }
}

Alphabet Alphabet::standard(std::size_t d) {
  std::vector<std::string> names;
  if (d <= 3) {
    const char* xyz[] = {"x", "y", "z"};
    for (std::size_t i = 0; i < d; ++i) names.push_back(xyz[i]);
  } else {
    for (std::size_t i = 0; i < d; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  Alphabet a(names);
  if (d <= 3)
    for (std::size_t i = 0; i < d; ++i) a.alias("x" + std::to_string(i + 1), a.base_[i]);
  return a;
}

SymbolPtr Alphabet::derive(const std::string& name, const Expr& binding) {
  if (names_.count(name)) throw FormatError("symbol already declared: " + name);
  auto s = std::make_shared<Symbol>();
  s->name = name;
  s->binding = binding;
  names_[name] = s;
  return s;
}

SymbolPtr Alphabet::lookup(const std::string& name) const {
  auto it = names_.find(name);
  return it == names_.end() ? nullptr : it->second;
}

std::vector<CMatrix> eval_exprs(const std::vector<Expr>& es, const Point& point) {
  std::size_t n = point.empty() ? 1 : point.begin()->second.rows();
  for (const auto& [name, m] : point)
    if (!m.is_square() || m.rows() != n) throw DimensionMismatch("point matrices must be square of common size");
  std::unordered_map<const Node*, CMatrix> memo;
  std::function<CMatrix(const Expr&)> go = [&](const Expr& x) -> CMatrix {
    auto it = memo.find(x.get());
    if (it != memo.end()) return it->second;
    CMatrix r;
    switch (x->kind) {
      case Kind::Const:
        r = CMatrix::scalar(n, x->value);
        break;
      case Kind::Var: {
        auto p = point.find(x->sym->name);
        if (p != point.end())
          r = p->second;
        else if (x->sym->binding)
          r = go(x->sym->binding);
        else
          throw UnknownSymbol("no value for symbol " + x->sym->name);
        break;
      }
      case Kind::Sum:
        r = go(x->kids[0]);
        for (std::size_t i = 1; i < x->kids.size(); ++i) r += go(x->kids[i]);
        break;
      case Kind::Product:
        r = go(x->kids[0]);
        for (std::size_t i = 1; i < x->kids.size(); ++i) r = r * go(x->kids[i]);
        break;
      case Kind::Neg:
        r = -go(x->kids[0]);
        break;
      case Kind::Scale:
        r = x->value * go(x->kids[0]);
        break;
      case Kind::Adjoint:
        r = go(x->kids[0]).adjoint();
        break;
      case Kind::Inverse:
        try {
          r = inverse(go(x->kids[0]));
        } catch (const DivisionByZero&) {
          throw SingularAtPoint("singular inverse at the point");
        }
        break;
    }
    memo.emplace(x.get(), r);
    return r;
  };
  std::vector<CMatrix> out;
  for (const auto& e : es) out.push_back(go(e));
  return out;
}

CMatrix eval_expr(const Expr& e, const Point& point) { return eval_exprs({e}, point).front(); }

Expr substitute(const Expr& e, const std::function<Expr(const SymbolPtr&)>& f) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
    auto it = memo.find(x.get());
    if (it != memo.end()) return it->second;
    Expr r;
    std::vector<Expr> k;
    for (const auto& c : x->kids) k.push_back(go(c));
    switch (x->kind) {
      case Kind::Const:
        r = x;
        break;
      case Kind::Var: {
        Expr s = f(x->sym);
        r = s ? s : x;
        break;
      }
      case Kind::Sum:
        r = add(std::move(k));
        break;
      case Kind::Product:
        r = mul(std::move(k));
        break;
      case Kind::Neg:
        r = neg(k[0]);
        break;
      case Kind::Scale:
        r = scale(x->value, k[0]);
        break;
      case Kind::Adjoint:
        r = adj(k[0]);
        break;
      case Kind::Inverse:
        r = inv(k[0]);
        break;
    }
    memo.emplace(x.get(), r);
    return r;
  };
  return go(e);
}

Expr expand(const Expr& e) {
  std::map<const Symbol*, Expr> cache;
  std::function<Expr(const SymbolPtr&)> f = [&](const SymbolPtr& s) -> Expr {
    if (!s->binding) return nullptr;
    auto it = cache.find(s.get());
    if (it != cache.end()) return it->second;
    Expr r = substitute(s->binding, f);
    cache[s.get()] = r;
    return r;
  };
  return substitute(e, f);
}

Expr act(const CMatrix& g, const Expr& e, const Alphabet& alphabet) {
  const std::size_t d = alphabet.dim();
  if (g.rows() != d || g.cols() != d) throw DimensionMismatch("action matrix does not match the alphabet");
  std::vector<Expr> forms;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Expr> t;
    for (std::size_t j = 0; j < d; ++j)
      if (!g(i, j).is_zero()) t.push_back(scale(g(i, j), alphabet.base_var(j)));
    forms.push_back(add(std::move(t)));
  }
  return substitute(expand(e), [&](const SymbolPtr& s) -> Expr {
    if (s->base_index >= 0 && static_cast<std::size_t>(s->base_index) < d) return forms[s->base_index];
    throw UnknownSymbol("symbol " + s->name + " is not in the acting alphabet");
  });
}

std::vector<int> base_support(const Expr& e) {
  std::set<int> seen;
  std::set<const Node*> visited;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (!visited.insert(x.get()).second) return;
    if (x->kind == Kind::Var) {
      if (x->sym->base_index >= 0)
        seen.insert(x->sym->base_index);
      else if (x->sym->binding)
        go(x->sym->binding);
    }
    for (const auto& k : x->kids) go(k);
  };
  go(e);
  return {seen.begin(), seen.end()};
}

}  // namespace ncinv
