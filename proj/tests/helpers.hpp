#pragma once

#include <random>

#include "hocc/parser.hpp"
#include "hocc/reduction.hpp"

namespace hocc::test {

inline Problem load(const std::string& src) { return parse_problem(src); }

inline Term term(const Problem& p, const std::string& src) {
  return parse_term(p, src);
}

// A first-order signature over naturals plus a couple of higher-order
// symbols, used by the random generators.
inline Problem nat_problem() {
  return load(R"(
sort N .
cons z : N .
cons s : N -> N .
fun plus : N -> N -> N .
var x y w : N .
var f g : N -> N .
var h : N -> N -> N .
rule plus z y -> y .
rule plus (s x) y -> s (plus x y) .
)");
}

// Random well-typed term of the requested type within a size budget.
// Returns a null term when the budget cannot be met.
class TermGen {
 public:
  TermGen(const Problem& p, unsigned seed) : problem_(p), rng_(seed) {
    for (auto& [name, type] : p.system.symbols) syms_.emplace_back(name, type);
    for (auto& [name, type] : p.system.declared_vars)
      vars_.push_back(Var{name, type});
  }

  Term gen(const Type& type, int budget) {
    std::vector<Var> scope = vars_;
    return go(type, budget, scope, 0);
  }

  // random closed-ish term of a random base-type-or-arrow type
  Term gen_any(int budget) {
    std::vector<Type> types;
    types.push_back(Type::constant("N"));
    types.push_back(Type::arrow(Type::constant("N"), Type::constant("N")));
    return gen(types[rng_() % types.size()], budget);
  }

  std::mt19937& rng() { return rng_; }

 private:
  const Problem& problem_;
  std::mt19937 rng_;
  std::vector<std::pair<std::string, Type>> syms_;
  std::vector<Var> vars_;
  int fresh_ = 0;

  Term go(const Type& type, int budget, std::vector<Var>& scope, int depth) {
    if (budget <= 0 || depth > 24) return leaf(type, scope);
    int roll = static_cast<int>(rng_() % 10);
    if (type.is_arrow() && roll < 4) {
      Var b{"b" + std::to_string(fresh_++), type.domain()};
      scope.push_back(b);
      Term body = go(type.codomain(), budget - 1, scope, depth + 1);
      scope.pop_back();
      if (body.null()) return leaf(type, scope);
      return Term::abs(b, body);
    }
    if (roll < 7) {
      // application headed by a symbol or variable with matching codomain
      std::vector<std::pair<Term, std::vector<Type>>> heads;
      for (auto& [name, t] : syms_) collect_head(Term::sym(name, t), t, type, heads);
      for (const Var& v : scope) collect_head(Term::var(v), v.type, type, heads);
      if (!heads.empty()) {
        auto& [head, doms] = heads[rng_() % heads.size()];
        Term out = head;
        bool ok = true;
        for (const Type& d : doms) {
          Term a = go(d, (budget - 1) / std::max<int>(1, doms.size()), scope,
                      depth + 1);
          if (a.null()) {
            ok = false;
            break;
          }
          out = Term::app(out, a);
        }
        if (ok) return out;
      }
    }
    if (roll >= 7 && type.is_constant()) {
      // a beta redex now and then
      Type dom = Type::constant("N");
      std::vector<Var> inner = scope;
      Var b{"b" + std::to_string(fresh_++), dom};
      inner.push_back(b);
      Term body = go(type, budget / 2, inner, depth + 1);
      Term arg = go(dom, budget / 2, scope, depth + 1);
      if (!body.null() && !arg.null())
        return Term::app(Term::abs(b, body), arg);
    }
    return leaf(type, scope);
  }

  void collect_head(Term head, const Type& ht, const Type& want,
                    std::vector<std::pair<Term, std::vector<Type>>>& out) {
    Type cur = ht;
    std::vector<Type> doms;
    while (true) {
      if (cur == want) {
        out.emplace_back(head, doms);
        break;  // only the shortest spine per head
      }
      if (!cur.is_arrow()) break;
      doms.push_back(cur.domain());
      cur = cur.codomain();
    }
  }

  Term leaf(const Type& type, std::vector<Var>& scope) {
    std::vector<Term> cands;
    for (const Var& v : scope)
      if (v.type == type) cands.push_back(Term::var(v));
    for (auto& [name, t] : syms_)
      if (t == type) cands.push_back(Term::sym(name, t));
    if (!cands.empty()) return cands[rng_() % cands.size()];
    if (type.is_arrow()) {
      Var b{"b" + std::to_string(fresh_++), type.domain()};
      scope.push_back(b);
      Term body = leaf(type.codomain(), scope);
      scope.pop_back();
      if (!body.null()) return Term::abs(b, body);
    }
    return Term();
  }
};

// Brute-force multiset comparison oracle: tries every equivalence pairing
// (A ~ A') and checks the cover condition on the remainders.
inline std::optional<Cmp> multiset_oracle(const TermCmp& base,
                                          const std::vector<Term>& m,
                                          const std::vector<Term>& n) {
  size_t k = n.size();
  // enumerate injective partial maps from n-indices to m-indices pairing
  // equivalent elements
  std::vector<int> assign(k, -1);
  bool equivalent = false, greater = false;
  std::function<void(size_t, std::vector<bool>&)> rec =
      [&](size_t i, std::vector<bool>& used) {
        if (i == k) {
          std::vector<Term> rm, rn;
          for (size_t j = 0; j < m.size(); ++j)
            if (!used[j]) rm.push_back(m[j]);
          for (size_t j = 0; j < k; ++j)
            if (assign[j] < 0) rn.push_back(n[j]);
          if (rm.empty() && rn.empty()) equivalent = true;
          if (!rm.empty()) {
            bool cover = true;
            for (const Term& y : rn) {
              bool c = false;
              for (const Term& x : rm)
                if (base(x, y) == Cmp::Greater) c = true;
              cover = cover && c;
            }
            if (cover) greater = true;
          }
          return;
        }
        assign[i] = -1;
        rec(i + 1, used);
        for (size_t j = 0; j < m.size(); ++j) {
          if (used[j]) continue;
          if (base(m[j], n[i]) == Cmp::Equivalent &&
              base(n[i], m[j]) == Cmp::Equivalent) {
            used[j] = true;
            assign[i] = static_cast<int>(j);
            rec(i + 1, used);
            used[j] = false;
            assign[i] = -1;
          }
        }
      };
  std::vector<bool> used(m.size(), false);
  rec(0, used);
  if (equivalent) return Cmp::Equivalent;
  if (greater) return Cmp::Greater;
  return Cmp::NotGE;
}

}  // namespace hocc::test
