#include <algorithm>
#include <cctype>

#include "ncinv/error.hpp"
#include "ncinv/expr.hpp"

namespace ncinv {

namespace {

class Parser {
 public:
  Parser(const std::string& s, const Alphabet& a) : s_(s), a_(a) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (i_ != s_.size()) throw SyntaxError("unexpected input", i_);
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) throw SyntaxError(std::string("expected '") + c + "'", i_);
  }
  Integer integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw SyntaxError("expected integer", start);
    return Integer(s_.substr(start, i_ - start));
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (eat('+'))
        e = add(e, term());
      else if (eat('-'))
        e = sub(e, term());
      else
        return e;
    }
  }
  Expr term() {
    Expr e = factor();
    while (eat('*')) e = mul(e, factor());
    return e;
  }
  Expr factor() {
    if (eat('-')) return neg(factor());
    Expr e = atom();
    while (eat('^')) {
      const bool negative = eat('-');
      const std::size_t at = i_;
      Integer k = integer();
      if (!k.fits_slong_p() || k > 64) throw SyntaxError("exponent too large", at);
      e = power(e, negative ? -k.get_si() : k.get_si());
    }
    return e;
  }
  Expr atom() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError("unexpected end of input", i_);
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer();
      if (peek('/')) {
        ++i_;
        const std::size_t at = i_;
        Integer den = integer();
        if (den == 0) throw SyntaxError("zero denominator", at);
        Rational q(num, den);
        q.canonicalize();
        return constant(Cyclotomic(q));
      }
      return constant(Cyclotomic(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      const std::string id = s_.substr(start, i_ - start);
      if ((id == "inv" || id == "adj") && peek('(')) {
        ++i_;
        Expr e = expr();
        expect(')');
        return id == "inv" ? inv(e) : adj(e);
      }
      if (SymbolPtr s = a_.lookup(id)) return var(s);
      if (id.size() > 1 && id[0] == 'z' &&
          std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        const long n = std::stol(id.substr(1));
        if (n < 1 || n > 100000) throw SyntaxError("bad root of unity", start);
        return constant(Cyclotomic::root_of_unity(static_cast<int>(n), 1));
      }
      throw UnknownSymbol("unknown symbol '" + id + "' at position " + std::to_string(start));
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", i_);
  }

  const std::string& s_;
  const Alphabet& a_;
  std::size_t i_ = 0;
};

// ctx: 0 = term of a sum, 1 = factor of a product, 2 = base of a power
std::string print(const Expr& e, int ctx);

std::string print_const(const Cyclotomic& c, int ctx) {
  std::string s = c.str();
  if (ctx == 0) return s;
  const bool compound = s.find(' ') != std::string::npos;
  if (compound || s[0] == '-' || (ctx == 2 && s.find_first_of("*/^") != std::string::npos)) return "(" + s + ")";
  return s;
}

std::string print(const Expr& e, int ctx) {
  switch (e->kind) {
    case Kind::Const:
      return print_const(e->value, ctx);
    case Kind::Var:
      return e->sym->name;
    case Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        const Expr& t = e->kids[i];
        std::string s = print(t, 0);
        if (i == 0) {
          out = s;
          continue;
        }
        if (t->kind == Kind::Const && s.find(' ') != std::string::npos) s = "(" + s + ")";
        if (s[0] == '-')
          out += " - " + s.substr(1);
        else
          out += " + " + s;
      }
      return ctx >= 1 ? "(" + out + ")" : out;
    }
    case Kind::Product: {
      std::string out;
      const auto& k = e->kids;
      for (std::size_t i = 0; i < k.size();) {
        std::size_t j = i + 1;
        while (j < k.size() && structurally_equal(k[i], k[j])) ++j;
        const std::size_t run = j - i;
        if (!out.empty()) out += "*";
        out += print(k[i], run > 1 ? 2 : 1);
        if (run > 1) out += "^" + std::to_string(run);
        i = j;
      }
      return ctx == 2 ? "(" + out + ")" : out;
    }
    case Kind::Neg: {
      std::string s = "-" + print(e->kids[0], 1);
      return ctx >= 1 ? "(" + s + ")" : s;
    }
    case Kind::Scale: {
      std::string c = e->value.str();
      if (c.find(' ') != std::string::npos) c = "(" + c + ")";
      std::string s = c + "*" + print(e->kids[0], 1);
      return ctx >= 1 ? "(" + s + ")" : s;
    }
    case Kind::Inverse: {
      const Expr& k = e->kids[0];
      if (k->kind == Kind::Var && ctx < 2) return k->sym->name + "^-1";
      return "inv(" + print(k, 0) + ")";
    }
    case Kind::Adjoint:
      return "adj(" + print(e->kids[0], 0) + ")";
  }
  return "";
}

}  // namespace

Expr parse_expr(const std::string& text, const Alphabet& alphabet) { return Parser(text, alphabet).run(); }

std::string to_string(const Expr& e) { return print(e, 0); }

}  // namespace ncinv
