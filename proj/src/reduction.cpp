#include "hocc/reduction.hpp"

#include <algorithm>

namespace hocc {

std::string to_string(const TraceStep& s) {
  std::string kind;
  switch (s.kind) {
    case ReductionKind::Beta: kind = "beta"; break;
    case ReductionKind::Eta: kind = "eta"; break;
    case ReductionKind::Beta0: kind = "beta0"; break;
    case ReductionKind::Rule: kind = s.rule_id; break;
  }
  return kind + "@" + (s.position.empty() ? "e" : s.position) + ": " +
         to_string(s.result);
}

Term beta_contract(const Term& redex) {
  const Term& f = redex.fun();
  return substitute(f.body(), Substitution::single(f.binder(), redex.arg()));
}

namespace {

bool is_beta_redex(const Term& t) {
  return t.kind() == TermKind::App && t.fun().kind() == TermKind::Abs;
}

void beta_rec(const Term& root, const Term& t, Position& cur,
              std::vector<std::pair<Position, Term>>& out, bool beta0_only) {
  if (is_beta_redex(t)) {
    bool ok = !beta0_only || t.arg().kind() == TermKind::Var;
    if (ok) out.emplace_back(cur, replace_at(root, cur, beta_contract(t)));
  }
  switch (t.kind()) {
    case TermKind::Abs:
      cur.push_back('0');
      beta_rec(root, t.body(), cur, out, beta0_only);
      cur.pop_back();
      break;
    case TermKind::App:
      cur.push_back('0');
      beta_rec(root, t.fun(), cur, out, beta0_only);
      cur.back() = '1';
      beta_rec(root, t.arg(), cur, out, beta0_only);
      cur.pop_back();
      break;
    default:
      break;
  }
}

// \x. t x with x not free in t
std::optional<Term> eta_contract(const Term& t) {
  if (t.kind() != TermKind::Abs) return std::nullopt;
  const Term& b = t.body();
  if (b.kind() != TermKind::App) return std::nullopt;
  if (b.arg().kind() != TermKind::Var || b.arg().var() != t.binder())
    return std::nullopt;
  if (b.fun().has_free(t.binder())) return std::nullopt;
  return b.fun();
}

void eta_rec(const Term& root, const Term& t, Position& cur,
             std::vector<std::pair<Position, Term>>& out) {
  if (auto c = eta_contract(t))
    out.emplace_back(cur, replace_at(root, cur, *c));
  switch (t.kind()) {
    case TermKind::Abs:
      cur.push_back('0');
      eta_rec(root, t.body(), cur, out);
      cur.pop_back();
      break;
    case TermKind::App:
      cur.push_back('0');
      eta_rec(root, t.fun(), cur, out);
      cur.back() = '1';
      eta_rec(root, t.arg(), cur, out);
      cur.pop_back();
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<std::pair<Position, Term>> beta_reducts(const Term& t) {
  std::vector<std::pair<Position, Term>> out;
  Position cur;
  beta_rec(t, t, cur, out, false);
  std::sort(out.begin(), out.end(),
            [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

std::vector<std::pair<Position, Term>> beta0_reducts(const Term& t) {
  std::vector<std::pair<Position, Term>> out;
  Position cur;
  beta_rec(t, t, cur, out, true);
  std::sort(out.begin(), out.end(),
            [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

std::vector<std::pair<Position, Term>> eta_reducts(const Term& t) {
  std::vector<std::pair<Position, Term>> out;
  Position cur;
  eta_rec(t, t, cur, out);
  std::sort(out.begin(), out.end(),
            [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

namespace {

Term eta_nf_rec(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Sym:
      return t;
    case TermKind::App:
      return Term::app(eta_nf_rec(t.fun()), eta_nf_rec(t.arg()));
    case TermKind::Abs: {
      Term b = eta_nf_rec(t.body());
      Term out = Term::abs(t.binder(), b);
      if (auto c = eta_contract(out)) return *c;
      return out;
    }
  }
  return t;
}

}  // namespace

Term eta_normal_form(const Term& t) { return eta_nf_rec(t); }

bool eta_eq(const Term& t, const Term& u) {
  if (t.type() != u.type()) return false;
  return alpha_eq(eta_normal_form(t), eta_normal_form(u));
}

Term eta_expand_prefix(const Term& t, int n) {
  if (n <= 0) return t;
  if (t.kind() == TermKind::Abs)
    return Term::abs(t.binder(), eta_expand_prefix(t.body(), n - 1));
  Type ty = t.type();
  if (!ty.is_arrow())
    throw std::runtime_error("eta_expand_prefix: not an arrow type");
  std::set<std::string> avoid = all_var_names(t);
  Var y = fresh_var("y", ty.domain(), avoid);
  return Term::abs(y, eta_expand_prefix(Term::app(t, Term::var(y)), n - 1));
}

// ---------------------------------------------------------------- matching ---

namespace {

struct Matcher {
  const std::set<Var>& protected_vars;
  // pattern binder -> subject binder correspondence, innermost last
  std::vector<std::pair<Var, Var>> binders;
  std::map<Var, Term> sol;

  bool bound_pat(const Var& v) const {
    for (auto& [p, _] : binders)
      if (p == v) return true;
    return false;
  }

  // subject-side variables that are bound in the subject context; images may
  // not mention them (they would escape their scope)
  bool image_ok(const Term& img) const {
    for (auto& [_, s] : binders)
      if (img.has_free(s)) return false;
    return true;
  }

  bool go(const Term& p, const Term& s) {
    if (p.kind() == TermKind::Var && !bound_pat(p.var()) &&
        !protected_vars.count(p.var())) {
      // match variable
      if (p.var().type != s.type()) return false;
      if (!image_ok(s)) return false;
      auto it = sol.find(p.var());
      if (it != sol.end()) return alpha_eq(it->second, s);
      sol.emplace(p.var(), s);
      return true;
    }
    if (p.kind() != s.kind()) {
      // a bound/protected pattern var must match the corresponding subject var
      if (p.kind() == TermKind::Var && s.kind() == TermKind::Var) {}
      return false;
    }
    switch (p.kind()) {
      case TermKind::Var: {
        if (s.kind() != TermKind::Var) return false;
        // rigid variable: either corresponding binders or identical free var
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          if (it->first == p.var() || it->second == s.var())
            return it->first == p.var() && it->second == s.var();
        }
        return p.var() == s.var();
      }
      case TermKind::Sym:
        return p.sym_name() == s.sym_name() && p.sym_type() == s.sym_type();
      case TermKind::App:
        return go(p.fun(), s.fun()) && go(p.arg(), s.arg());
      case TermKind::Abs: {
        if (p.binder().type != s.binder().type) return false;
        binders.emplace_back(p.binder(), s.binder());
        bool ok = go(p.body(), s.body());
        binders.pop_back();
        return ok;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Substitution> match_alpha(const Term& pattern,
                                        const Term& subject,
                                        const std::set<Var>& protected_vars) {
  if (!pattern.well_typed() || !subject.well_typed()) return std::nullopt;
  if (pattern.type() != subject.type()) return std::nullopt;
  Matcher m{protected_vars, {}, {}};
  if (!m.go(pattern, subject)) return std::nullopt;
  Substitution s;
  for (auto& [x, t] : m.sol) s.bind(x, t);
  // matching under pattern binders fixed binder names; re-check on a
  // representative-independent criterion
  if (!alpha_eq(substitute(pattern, s), subject)) return std::nullopt;
  return s;
}

// --------------------------------------------------------------- rewriting ---

std::vector<TraceStep> rewrite_reducts(const RewriteSystem& system,
                                       const Term& t) {
  std::vector<TraceStep> out;
  for (const Position& p : positions(t)) {
    Term sub = subterm_at(t, p);
    if (!sub.well_typed()) continue;
    for (const Rule& r : system.rules) {
      if (!r.lhs.type_opt() || *r.lhs.type_opt() != sub.type()) continue;
      if (auto sigma = match_alpha(r.lhs, sub, {})) {
        Term rhs = substitute(r.rhs, *sigma);
        out.push_back(TraceStep{ReductionKind::Rule, r.id, p,
                                replace_at(t, p, rhs)});
      }
    }
  }
  return out;
}

namespace {

std::vector<TraceStep> all_reducts(const RewriteSystem& system,
                                   const Term& t) {
  std::vector<TraceStep> out;
  for (auto& [p, r] : beta_reducts(t))
    out.push_back(TraceStep{ReductionKind::Beta, "", p, r});
  for (auto& s : rewrite_reducts(system, t)) out.push_back(s);
  std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) {
    return a.position < b.position;
  });
  return out;
}

}  // namespace

NormalizeResult normalize(const RewriteSystem& system, const Term& t, int fuel,
                          Strategy strategy) {
  NormalizeResult res;
  Term cur = t;
  for (int i = 0; i < fuel; ++i) {
    auto steps = all_reducts(system, cur);
    if (steps.empty()) {
      res.result = cur;
      return res;
    }
    const TraceStep& step =
        strategy == Strategy::Leftmost ? steps.front() : steps.back();
    cur = step.result;
    res.trace.push_back(step);
  }
  if (all_reducts(system, cur).empty()) {
    res.result = cur;
    return res;
  }
  res.fuel_exhausted = true;
  return res;
}

std::vector<Term> one_step_beta_r(const RewriteSystem& system, const Term& t) {
  std::vector<Term> out;
  for (auto& s : all_reducts(system, t)) out.push_back(s.result);
  return out;
}

}  // namespace hocc
