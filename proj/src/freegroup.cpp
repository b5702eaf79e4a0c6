#include <deque>
#include <map>

#include "ncinv/error.hpp"
#include "ncinv/expr.hpp"

namespace ncinv {

SignedWord reduce_word(const SignedWord& w) {
  SignedWord out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().sym == l.sym && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

SignedWord word_inverse(const SignedWord& w) {
  SignedWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->sym, -it->exp});
  return out;
}

SignedWord concat(const SignedWord& a, const SignedWord& b) {
  SignedWord w = a;
  w.insert(w.end(), b.begin(), b.end());
  return reduce_word(w);
}

std::string word_str(const SignedWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i + 1;
    while (j < w.size() && w[j] == w[i]) ++j;
    const long k = static_cast<long>(j - i) * w[i].exp;
    if (!out.empty()) out += "*";
    out += names.at(w[i].sym);
    if (k != 1) out += "^" + std::to_string(k);
    i = j;
  }
  return out;
}

Expr word_expr(const SignedWord& w, const std::vector<Expr>& letters) {
  std::vector<Expr> f;
  for (const auto& l : w) f.push_back(l.exp > 0 ? letters.at(l.sym) : inv(letters.at(l.sym)));
  if (f.empty()) return constant(Cyclotomic(1L));
  return mul(std::move(f));
}

namespace {

AbelianElem add_elem(const AbelianElem& a, const AbelianElem& b, const std::vector<long>& moduli) {
  AbelianElem c{a.v};
  for (std::size_t k = 0; k < moduli.size(); ++k) c.v[k] = ((a.v[k] + b.v[k]) % moduli[k] + moduli[k]) % moduli[k];
  return c;
}

AbelianElem image(const SignedWord& w, const std::vector<AbelianElem>& chars, const std::vector<long>& moduli) {
  AbelianElem e{std::vector<long>(moduli.size(), 0)};
  for (const auto& l : w) {
    AbelianElem c = chars.at(l.sym);
    if (l.exp < 0)
      for (auto& x : c.v) x = -x;
    e = add_elem(e, c, moduli);
  }
  return e;
}

void check_chars(const std::vector<AbelianElem>& chars, const std::vector<long>& moduli) {
  for (const auto& c : chars)
    if (c.v.size() != moduli.size()) throw DimensionMismatch("character has wrong number of components");
}

SchreierResult generators_from(const std::vector<AbelianElem>& chars, const std::vector<long>& moduli,
                               const std::vector<SignedWord>& transversal,
                               const std::map<AbelianElem, SignedWord>& rep) {
  SchreierResult res;
  res.transversal = transversal;
  for (const auto& u : transversal) {
    const AbelianElem iu = image(u, chars, moduli);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      const AbelianElem target = add_elem(iu, chars[i], moduli);
      auto it = rep.find(target);
      if (it == rep.end()) throw InconsistentSystem("transversal does not cover the image");
      SignedWord w = u;
      w.push_back({static_cast<int>(i), 1});
      w = concat(w, word_inverse(it->second));
      if (!w.empty()) res.generators.push_back(w);
    }
  }
  return res;
}

}  // namespace

SchreierResult schreier_free_generators(const std::vector<AbelianElem>& chars, const std::vector<long>& moduli) {
  check_chars(chars, moduli);
  std::map<AbelianElem, SignedWord> rep;
  std::vector<SignedWord> order;
  AbelianElem zero{std::vector<long>(moduli.size(), 0)};
  std::deque<AbelianElem> queue{zero};
  rep[zero] = {};
  while (!queue.empty()) {
    AbelianElem u = queue.front();
    queue.pop_front();
    order.push_back(rep[u]);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      AbelianElem v = add_elem(u, chars[i], moduli);
      if (rep.count(v)) continue;
      SignedWord w = rep[u];
      w.push_back({static_cast<int>(i), 1});
      rep[v] = w;
      queue.push_back(v);
    }
  }
  return generators_from(chars, moduli, order, rep);
}

SchreierResult schreier_free_generators(const std::vector<AbelianElem>& chars, const std::vector<long>& moduli,
                                        const std::vector<SignedWord>& transversal) {
  check_chars(chars, moduli);
  std::map<AbelianElem, SignedWord> rep;
  for (const auto& t : transversal) {
    AbelianElem e = image(t, chars, moduli);
    if (rep.count(e)) throw InconsistentSystem("transversal has two words in one coset");
    rep[e] = t;
  }
  return generators_from(chars, moduli, transversal, rep);
}

}  // namespace ncinv
