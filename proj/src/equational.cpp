#include "hocc/equational.hpp"

#include <algorithm>
#include <deque>

namespace hocc {

bool check_regular(const Equation& e) {
  return e.lhs.free_vars() == e.rhs.free_vars();
}

bool check_collapsing(const Equation& e) {
  return e.lhs.kind() == TermKind::Var || e.rhs.kind() == TermKind::Var;
}

std::vector<EquationDiagnostic> check_neutral(const RewriteSystem& system,
                                              const BaseOrder& base) {
  std::vector<EquationDiagnostic> out;
  std::set<std::string> matched = matched_symbols(system, base, true);
  for (const Equation& e : system.equations) {
    EquationDiagnostic d;
    d.id = e.id;
    d.regular = check_regular(e);
    d.non_collapsing = !check_collapsing(e);
    Term lh = e.lhs.head(), rh = e.rhs.head();
    if (lh.kind() != TermKind::Sym || rh.kind() != TermKind::Sym) {
      d.neutral = false;
      d.note = "side not symbol-headed";
      out.push_back(d);
      continue;
    }
    int la = static_cast<int>(e.lhs.spine_args().size());
    int ra = static_cast<int>(e.rhs.spine_args().size());
    bool arity_ok = la >= arity_sup(system, lh.sym_name(), true) &&
                    ra >= arity_sup(system, rh.sym_name(), true);
    bool matched_agree =
        matched.count(lh.sym_name()) == matched.count(rh.sym_name());
    d.neutral = arity_ok && matched_agree;
    if (!arity_ok) d.note = "head applied below its arity bound";
    if (!matched_agree) d.note = "one head matched, the other not";
    out.push_back(d);
  }
  return out;
}

bool check_commutation_criterion(const std::vector<Equation>& equations) {
  for (const Equation& e : equations) {
    if (!check_regular(e)) return false;
    if (!is_linear(e.lhs) || !is_linear(e.rhs)) return false;
    if (!is_algebraic(e.lhs) || !is_algebraic(e.rhs)) return false;
  }
  return true;
}

AdmissibilityReport admissibility(const RewriteSystem& system,
                                  const BaseOrder& base) {
  AdmissibilityReport rep;
  rep.per_equation = check_neutral(system, base);
  rep.regular = true;
  rep.non_collapsing = true;
  rep.neutral = true;
  for (const auto& d : rep.per_equation) {
    rep.regular = rep.regular && d.regular;
    rep.non_collapsing = rep.non_collapsing && d.non_collapsing;
    rep.neutral = rep.neutral && d.neutral;
  }
  rep.commutes_with_beta = check_commutation_criterion(system.equations)
                               ? CommutationStatus::ProvedBySyntacticCriterion
                               : CommutationStatus::Unknown;
  return rep;
}

// ----------------------------------------------------------------- classes ---

namespace {

std::vector<Term> one_step_equational(const RewriteSystem& system,
                                      const Term& t) {
  std::vector<Term> out;
  for (const Position& p : positions(t)) {
    Term sub = subterm_at(t, p);
    if (!sub.well_typed()) continue;
    for (const Equation& e : system.equations) {
      for (const auto& [l, r] :
           {std::pair<const Term&, const Term&>{e.lhs, e.rhs},
            std::pair<const Term&, const Term&>{e.rhs, e.lhs}}) {
        if (!l.type_opt() || *l.type_opt() != sub.type()) continue;
        if (auto sigma = match_alpha(l, sub, {}))
          out.push_back(replace_at(t, p, substitute(r, *sigma)));
      }
    }
  }
  return out;
}

}  // namespace

EqClassResult eq_class(const RewriteSystem& system, const Term& t,
                       int member_bound, int size_cap) {
  EqClassResult res;
  if (size_cap <= 0) size_cap = 2 * t.size();
  std::map<std::string, Term> seen;
  std::deque<Term> frontier{t};
  seen.emplace(alpha_key(t), t);
  while (!frontier.empty()) {
    Term cur = frontier.front();
    frontier.pop_front();
    for (const Term& next : one_step_equational(system, cur)) {
      if (next.size() > size_cap) {
        res.bound_exceeded = true;
        continue;
      }
      std::string key = alpha_key(next);
      if (seen.count(key)) continue;
      if (static_cast<int>(seen.size()) >= member_bound) {
        res.bound_exceeded = true;
        continue;
      }
      seen.emplace(key, next);
      frontier.push_back(next);
    }
  }
  for (auto& [_, m] : seen) res.members.push_back(m);
  return res;
}

EqClassResult eq_class(const RewriteSystem& system, const Term& t) {
  return eq_class(system, t, 1000, 0);
}

bool eq_equal(const RewriteSystem& system, const Term& a, const Term& b,
              int member_bound) {
  if (alpha_eq(a, b)) return true;
  if (system.equations.empty()) return false;
  if (!a.well_typed() || !b.well_typed() || a.type() != b.type()) return false;
  int cap = 2 * std::max(a.size(), b.size());
  EqClassResult cls = eq_class(system, a, member_bound, cap);
  for (const Term& m : cls.members)
    if (alpha_eq(m, b)) return true;
  return false;
}

std::vector<Term> class_rewrite_reducts(const RewriteSystem& system,
                                        const Term& t, int member_bound,
                                        int size_cap) {
  EqClassResult cls = eq_class(system, t, member_bound, size_cap);
  std::map<std::string, Term> out;
  for (const Term& m : cls.members)
    for (const TraceStep& s : rewrite_reducts(system, m))
      out.emplace(alpha_key(s.result), s.result);
  std::vector<Term> v;
  for (auto& [_, m] : out) v.push_back(m);
  return v;
}

// ------------------------------------------------------------------ aliens ---

std::vector<Term> aliens(const std::set<std::string>& eq_symbols,
                         const std::vector<Term>& m) {
  std::vector<Term> out;
  for (const Term& t : m) {
    Term h = t.head();
    if (h.kind() == TermKind::Sym && eq_symbols.count(h.sym_name())) {
      std::vector<Term> inner = aliens(eq_symbols, t.spine_args());
      out.insert(out.end(), inner.begin(), inner.end());
    } else {
      out.push_back(t);
    }
  }
  return out;
}

namespace {

std::set<std::string> prec_class_of(const RewriteSystem& system,
                                    const Precedence& prec,
                                    const std::string& f) {
  std::set<std::string> cls{f};
  for (auto& [name, _] : system.symbols)
    if (prec.equiv(f, name)) cls.insert(name);
  return cls;
}

bool multiset_alpha_equal(std::vector<Term> a, std::vector<Term> b) {
  if (a.size() != b.size()) return false;
  for (const Term& x : a) {
    bool found = false;
    for (size_t j = 0; j < b.size(); ++j)
      if (alpha_eq(x, b[j])) {
        b.erase(b.begin() + j);
        found = true;
        break;
      }
    if (!found) return false;
  }
  return b.empty();
}

// spine-argument descent: every proper "argument of a symbol-headed spine"
// subterm, transitively
void alg_subterms(const Term& t, std::vector<Term>& out) {
  Term h = t.head();
  if (h.kind() != TermKind::Sym) return;
  for (const Term& a : t.spine_args()) {
    out.push_back(a);
    alg_subterms(a, out);
  }
}

}  // namespace

bool aliens_compatible(const RewriteSystem& system, const Precedence& prec) {
  for (const Equation& e : system.equations) {
    Term lh = e.lhs.head(), rh = e.rhs.head();
    if (lh.kind() != TermKind::Sym || rh.kind() != TermKind::Sym) return false;
    if (!prec.equiv(lh.sym_name(), rh.sym_name())) return false;
    std::set<std::string> cls = prec_class_of(system, prec, lh.sym_name());
    if (!multiset_alpha_equal(aliens(cls, e.lhs.spine_args()),
                              aliens(cls, e.rhs.spine_args())))
      return false;
  }
  return true;
}

Cmp aliens_cmp(const RewriteSystem& system, const Precedence& prec,
               const Call& c1, const Call& c2, int member_bound) {
  if (!c1.maximal() || !c2.maximal()) return Cmp::NotGE;
  if (prec.greater(c1.head, c2.head)) return Cmp::Greater;
  if (!prec.equiv(c1.head, c2.head)) return Cmp::NotGE;
  std::set<std::string> cls = prec_class_of(system, prec, c1.head);
  std::vector<Term> a1 = aliens(cls, c1.args), a2 = aliens(cls, c2.args);
  TermCmp base = [&](const Term& x, const Term& y) {
    if (eq_equal(system, x, y, member_bound)) return Cmp::Equivalent;
    // strict part: =E composed with >= 1 spine-argument descents
    EqClassResult cx = eq_class(system, x, member_bound, 2 * x.size());
    for (const Term& m : cx.members) {
      std::vector<Term> subs;
      alg_subterms(m, subs);
      for (const Term& s : subs)
        if (alpha_eq(s, y)) return Cmp::Greater;
    }
    return Cmp::NotGE;
  };
  return multiset_cmp(base, a1, a2);
}

}  // namespace hocc
