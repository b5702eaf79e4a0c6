#include <algorithm>
#include <functional>
#include <memory>

#include "ncinv/error.hpp"
#include "ncinv/invariants.hpp"

namespace ncinv {

namespace {

DualGroup dual_of(const FiniteGroup& g, const Subgroup& n) { return pontryagin_dual(subgroup_as_group(g, n).group); }

std::vector<std::string> names_of(const FiniteGroup& g, const Subgroup& n) {
  std::vector<std::string> out;
  for (int x : n) out.push_back(g.name(x));
  return out;
}

bool totally(const FiniteGroup& g, std::vector<UnramifiedStep>& chain,
             std::vector<std::pair<Subgroup, std::string>>* failures) {
  if (g.order() == 1) return true;
  for (const auto& n : normal_abelian_subgroups(g)) {
    const UnramifiedCheck c = is_unramified_over(g, n);
    if (!c.ok) {
      if (failures) failures->emplace_back(n, "irreducible row " + std::to_string(*c.witness) + " ramifies");
      continue;
    }
    std::vector<UnramifiedStep> sub;
    const QuotientGroup q = quotient(g, n);
    if (totally(q.group, sub, nullptr)) {
      chain.push_back({g.order(), g.label(), n, names_of(g, n)});
      chain.insert(chain.end(), sub.begin(), sub.end());
      return true;
    }
    if (failures) failures->emplace_back(n, "quotient of order " + std::to_string(q.group.order()) + " fails");
  }
  return false;
}

}  // namespace

UnramifiedCheck is_unramified_over(const FiniteGroup& g, const Subgroup& n) {
  UnramifiedCheck out;
  const CharacterTable t = character_table(g);
  const DualGroup d = dual_of(g, n);
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto m = restriction_multiplicities(g, t.character(i), n, d);
    bool ok = m[0] == t.degrees[i];
    if (!ok) {
      ok = true;
      for (int k : m) ok = ok && k <= 1;
    }
    if (!ok && !out.witness) out.witness = i;
    out.ok = out.ok && ok;
    out.restrictions.push_back(std::move(m));
  }
  return out;
}

UnramifiedCertificate is_totally_unramified(const FiniteGroup& g) {
  UnramifiedCertificate c;
  c.ok = totally(g, c.chain, &c.failures);
  if (!c.ok) c.chain.clear();
  return c;
}

CompletenessResult is_complete(const Representation& rho) {
  for (int a = 0; a < rho.group->order(); ++a)
    if (a != rho.group->id() && rho.images[a].is_identity()) throw NotFaithful("representation has a nontrivial kernel");
  return is_complete_character(rho.group, rho.character());
}

CompletenessResult is_complete_character(GroupPtr gp, const ClassFunction& chi) {
  const FiniteGroup& g = *gp;
  CompletenessResult res;
  if (g.order() == 1) {
    res.complete = true;
    return res;
  }
  for (int a = 0; a < g.order(); ++a)
    if (a != g.id() && chi[a] == chi[g.id()]) {
      res.reason = "not faithful on a group of order " + std::to_string(g.order());
      return res;
    }
  const CharacterTable t = character_table(g);
  std::vector<int> mult;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Cyclotomic m = inner_product(g, chi, t.character(i));
    mult.push_back(static_cast<int>(m.rational().get_num().get_si()));
  }
  for (const auto& n : normal_abelian_subgroups(g)) {
    const DualGroup d = dual_of(g, n);
    std::vector<std::vector<int>> r;
    for (std::size_t i = 0; i < t.size(); ++i) r.push_back(restriction_multiplicities(g, t.character(i), n, d));
    std::vector<int> need(d.order(), 1);
    need[0] = 0;
    std::vector<std::size_t> chosen;
    bool found = false;
    // rows in increasing order: solutions come out in lex order
    std::function<void(std::size_t)> search = [&](std::size_t from) {
      if (found) return;
      if (std::all_of(need.begin(), need.end(), [](int v) { return v == 0; })) {
        ClassFunction b(g.order());
        for (std::size_t i : chosen) {
          const ClassFunction c = t.character(i);
          for (int a = 0; a < g.order(); ++a) b[a] += c[a];
        }
        ClassFunction full(g.order());
        for (int a = 0; a < g.order(); ++a) {
          const Cyclotomic j = chi[a] - b[a];
          full[a] = j + Cyclotomic(2) * b[a] * j + b[a] * b[a] + b[a] * b[a] * j + b[a] * b[a] * b[a];
        }
        const QuotientGroup q = quotient(g, n);
        ClassFunction derived(q.group.order());
        for (int k = 0; k < q.group.order(); ++k) {
          Cyclotomic s;
          for (int x : n) s += full[g.op(q.reps[k], x)];
          derived[k] = s / Cyclotomic(static_cast<long>(n.size()));
        }
        auto qp = std::make_shared<FiniteGroup>(q.group);
        CompletenessResult sub = is_complete_character(qp, derived);
        if (sub.complete) {
          found = true;
          res.complete = true;
          res.levels.push_back({gp, n, chosen, chi});
          res.levels.insert(res.levels.end(), sub.levels.begin(), sub.levels.end());
        } else if (res.reason.empty()) {
          res.reason = sub.reason;
        }
        return;
      }
      for (std::size_t i = from; i < t.size() && !found; ++i) {
        if (mult[i] == 0 || r[i][0] != 0) continue;
        bool fits = true;
        for (int k = 0; k < d.order() && fits; ++k) fits = r[i][k] <= need[k];
        if (!fits) continue;
        for (int k = 0; k < d.order(); ++k) need[k] -= r[i][k];
        chosen.push_back(i);
        search(i + 1);
        chosen.pop_back();
        for (int k = 0; k < d.order(); ++k) need[k] += r[i][k];
      }
    };
    search(0);
    if (found) return res;
  }
  if (res.reason.empty()) res.reason = "no normal abelian subgroup admits a summand pi_B in a group of order " +
                                       std::to_string(g.order());
  return res;
}

}  // namespace ncinv
