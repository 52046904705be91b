#include "hocc/patterns.hpp"

#include <algorithm>

namespace hocc {

// ---------------------------------------------------------------- patterns ---

namespace {

// Check t in P_V; on failure record the offending position.
bool pattern_rec(const Term& t, std::set<Var>& v, const std::set<Var>& bound,
                 Position& cur, Position& witness) {
  switch (t.kind()) {
    case TermKind::Abs: {
      // lambda x t in P_{V - {x}}: the definition quantifies over V, so x
      // may or may not be a member inside the body; try both.
      const Var& x = t.binder();
      std::set<Var> newbound = bound;
      newbound.insert(x);
      cur.push_back('0');
      bool outer_in_v = v.count(x) > 0;
      v.erase(x);
      bool ok = pattern_rec(t.body(), v, newbound, cur, witness);
      if (!ok) {
        v.insert(x);
        ok = pattern_rec(t.body(), v, newbound, cur, witness);
        v.erase(x);
      }
      if (outer_in_v) v.insert(x);
      cur.pop_back();
      return ok;
    }
    case TermKind::Sym:
      return true;
    case TermKind::Var: {
      const Var& x = t.var();
      if (v.count(x)) return true;       // nullary leaf with head in V
      if (!bound.count(x)) return true;  // rigid free variable outside V
      witness = cur;
      return false;
    }
    case TermKind::App: {
      Term h = t.head();
      std::vector<Term> args = t.spine_args();
      if (h.kind() == TermKind::Sym) {
        Position p = cur;
        for (size_t i = 0; i < args.size(); ++i) {
          Position argpos =
              cur + std::string(args.size() - 1 - i, '0') + "1";
          Position sub = argpos;
          std::swap(cur, sub);
          bool ok = pattern_rec(args[i], v, bound, cur, witness);
          std::swap(cur, sub);
          if (!ok) return false;
        }
        return true;
      }
      if (h.kind() == TermKind::Var && v.count(h.var())) {
        std::set<Var> seen;
        for (const Term& a : args) {
          Term nf = eta_normal_form(a);
          if (nf.kind() != TermKind::Var || v.count(nf.var()) ||
              seen.count(nf.var()) || !bound.count(nf.var())) {
            witness = cur;
            return false;
          }
          seen.insert(nf.var());
        }
        return true;
      }
      witness = cur;
      return false;
    }
  }
  return false;
}

}  // namespace

PatternCheck is_pattern(const Term& t) {
  PatternCheck res;
  std::set<Var> v(t.free_vars().begin(), t.free_vars().end());
  Position cur;
  res.is_pattern = pattern_rec(t, v, {}, cur, res.witness);
  if (res.is_pattern) res.witness.clear();
  return res;
}

// ------------------------------------------------------------------ leaves ---

namespace {

void leaf_rec(const Term& t, Position& cur, std::vector<Position>& out) {
  switch (t.kind()) {
    case TermKind::Abs:
      cur.push_back('0');
      leaf_rec(t.body(), cur, out);
      cur.pop_back();
      return;
    case TermKind::App: {
      Term h = t.head();
      if (h.kind() == TermKind::Sym) {
        std::vector<Term> args = t.spine_args();
        for (size_t i = 0; i < args.size(); ++i) {
          Position argpos =
              cur + std::string(args.size() - 1 - i, '0') + "1";
          Position save = cur;
          cur = argpos;
          leaf_rec(args[i], cur, out);
          cur = save;
        }
        return;
      }
      out.push_back(cur);
      return;
    }
    case TermKind::Sym:
      return;
    case TermKind::Var:
      out.push_back(cur);
      return;
  }
}

}  // namespace

std::vector<Position> leaf_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  leaf_rec(t, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

// --------------------------------------------------------------- valuation ---

namespace {

// decompose s = \y1...\yn. a with pairwise distinct binders; renames nothing
std::optional<std::pair<std::vector<Var>, Term>> lambda_prefix(const Term& s,
                                                               size_t n) {
  std::vector<Var> ys;
  Term cur = s;
  for (size_t i = 0; i < n; ++i) {
    if (cur.kind() != TermKind::Abs) return std::nullopt;
    ys.push_back(cur.binder());
    cur = cur.body();
  }
  std::set<Var> distinct(ys.begin(), ys.end());
  if (distinct.size() != ys.size()) return std::nullopt;
  return std::make_pair(ys, cur);
}

}  // namespace

bool subst_valid_wrt(const Substitution& sigma, const Term& t) {
  for (const Position& p : leaf_positions(t)) {
    Term leaf = subterm_at(t, p);
    Term h = leaf.head();
    if (h.kind() != TermKind::Var) return false;
    size_t n = leaf.spine_args().size();
    const Term* img = sigma.lookup(h.var());
    Term s = img ? *img : Term::var(h.var());
    if (!lambda_prefix(s, n)) return false;
  }
  return true;
}

namespace {

Term valuation_rec(const Term& t, const Substitution& sigma) {
  switch (t.kind()) {
    case TermKind::Abs: {
      const Var& x = t.binder();
      if (sigma.lookup(x) || sigma.image_free_vars().count(x)) {
        // rename the binder so the substitution is away from it
        std::set<std::string> avoid = all_var_names(t.body());
        for (const Var& iv : sigma.image_free_vars()) avoid.insert(iv.name);
        for (const Var& dv : sigma.domain()) avoid.insert(dv.name);
        Var x2 = fresh_var(x.name, x.type, avoid);
        Term body2 =
            substitute(t.body(), Substitution::single(x, Term::var(x2)));
        return Term::abs(x2, valuation_rec(body2, sigma));
      }
      return Term::abs(x, valuation_rec(t.body(), sigma));
    }
    case TermKind::Sym:
      return t;
    case TermKind::Var:
    case TermKind::App: {
      Term h = t.head();
      std::vector<Term> args = t.spine_args();
      if (h.kind() == TermKind::Sym) {
        std::vector<Term> out;
        for (const Term& a : args) out.push_back(valuation_rec(a, sigma));
        return Term::app(h, out);
      }
      if (h.kind() != TermKind::Var)
        throw InvalidValuation("leaf headed by an abstraction");
      const Term* img = sigma.lookup(h.var());
      Term s = img ? *img : Term::var(h.var());
      auto pre = lambda_prefix(s, args.size());
      if (!pre)
        throw InvalidValuation("image of " + h.var().name +
                               " lacks a lambda prefix of length " +
                               std::to_string(args.size()));
      Substitution dev;
      for (size_t i = 0; i < args.size(); ++i) dev.bind(pre->first[i], args[i]);
      return substitute(pre->second, dev);
    }
  }
  return t;
}

}  // namespace

Term valuation(const Substitution& sigma, const Term& t) {
  return valuation_rec(t, sigma);
}

// -------------------------------------------------------------- completion ---

namespace {

// rule equality up to renaming of free variables (and alpha)
bool rule_variant(const Term& l1, const Term& r1, const Term& l2,
                  const Term& r2) {
  auto sigma = match_alpha(l1, l2, {});
  if (!sigma) return false;
  for (auto& [x, t] : sigma->map())
    if (t.kind() != TermKind::Var) return false;
  // injective on the lhs variables
  std::set<Var> imgs;
  for (const Var& x : l1.free_vars()) {
    const Term* t = sigma->lookup(x);
    Var y = t ? t->var() : x;
    if (!imgs.insert(y).second) return false;
  }
  return alpha_eq(substitute(r1, *sigma), r2);
}

bool has_rule_variant(const std::vector<Rule>& rules, const Term& l,
                      const Term& r) {
  for (const Rule& rule : rules)
    if (rule_variant(rule.lhs, rule.rhs, l, r) ||
        rule_variant(l, r, rule.lhs, rule.rhs))
      return true;
  return false;
}

// fresh rule variable, deterministic from the parent rule id
Var completion_fresh(const Rule& parent, const Type& type,
                     const std::set<std::string>& avoid) {
  return fresh_var("x", type, avoid);
}

// the beta-completion step for one rule, или nullopt when not an arrow type
std::optional<Rule> beta_step(const Rule& rule, int serial) {
  Type t = rule.lhs.type();
  if (!t.is_arrow()) return std::nullopt;
  std::set<std::string> avoid = all_var_names(rule.lhs);
  for (auto& n : all_var_names(rule.rhs)) avoid.insert(n);
  Var x = completion_fresh(rule, t.domain(), avoid);
  Term lhs = Term::app(rule.lhs, Term::var(x));
  Term rhs;
  if (rule.rhs.kind() == TermKind::Abs) {
    rhs = substitute(rule.rhs.body(),
                     Substitution::single(rule.rhs.binder(), Term::var(x)));
  } else {
    rhs = Term::app(rule.rhs, Term::var(x));
  }
  return Rule{rule.id + ".b" + std::to_string(serial), lhs, rhs};
}

std::optional<Rule> eta_step(const Rule& rule, int serial) {
  if (rule.lhs.kind() != TermKind::App) return std::nullopt;
  Term l = rule.lhs.fun();
  Term k = rule.lhs.arg();
  Term knf = eta_normal_form(k);
  if (knf.kind() != TermKind::Var) return std::nullopt;
  Var x = knf.var();
  if (l.has_free(x)) return std::nullopt;
  if (l.head().kind() != TermKind::Sym) return std::nullopt;
  // r = s k' with k' eta-reducing to x not free in s: drop the application
  if (rule.rhs.kind() == TermKind::App) {
    Term s = rule.rhs.fun();
    Term kp = eta_normal_form(rule.rhs.arg());
    if (kp.kind() == TermKind::Var && kp.var() == x && !s.has_free(x))
      return Rule{rule.id + ".e" + std::to_string(serial), l, s};
  }
  return Rule{rule.id + ".e" + std::to_string(serial), l,
              Term::abs(x, rule.rhs)};
}

CompletionResult saturate(const RewriteSystem& system,
                          const std::function<std::optional<Rule>(
                              const Rule&, int)>& step,
                          int cap) {
  CompletionResult res;
  std::vector<Rule> all = system.rules;
  size_t next = 0;
  int serial = 1;
  while (next < all.size()) {
    if (static_cast<int>(all.size()) > cap) {
      res.fixpoint_reached = false;
      break;
    }
    const Rule rule = all[next++];
    auto r2 = step(rule, serial);
    if (!r2) continue;
    if (has_rule_variant(all, r2->lhs, r2->rhs)) continue;
    ++serial;
    all.push_back(*r2);
    res.added.push_back(*r2);
  }
  return res;
}

int completion_cap(const RewriteSystem& system) {
  // card(R) <= n + sum |T_i| over the maximally uncurried lhs types
  int cap = static_cast<int>(system.rules.size());
  for (const Rule& r : system.rules) cap += r.lhs.type().arity();
  return cap + 1;
}

}  // namespace

CompletionResult beta_complete(const RewriteSystem& system) {
  return saturate(system, beta_step, completion_cap(system));
}

bool is_beta_complete(const RewriteSystem& system) {
  int serial = 1;
  for (const Rule& r : system.rules) {
    auto r2 = beta_step(r, serial);
    if (r2 && !has_rule_variant(system.rules, r2->lhs, r2->rhs)) return false;
  }
  return true;
}

CompletionResult eta_complete(const RewriteSystem& system) {
  return saturate(system, eta_step, completion_cap(system));
}

bool is_eta_complete(const RewriteSystem& system) {
  int serial = 1;
  for (const Rule& r : system.rules) {
    auto r2 = eta_step(r, serial);
    if (r2 && !has_rule_variant(system.rules, r2->lhs, r2->rhs)) return false;
  }
  return true;
}

RewriteSystem complete_beta_eta(const RewriteSystem& system) {
  RewriteSystem out = system;
  for (int round = 0; round < 8; ++round) {
    bool changed = false;
    CompletionResult b = beta_complete(out);
    for (const Rule& r : b.added) {
      out.rules.push_back(r);
      changed = true;
    }
    CompletionResult e = eta_complete(out);
    for (const Rule& r : e.added) {
      out.rules.push_back(r);
      changed = true;
    }
    if (!changed) break;
  }
  return out;
}

// ---------------------------------------------------- matching modulo beta-eta

namespace {

struct HopmMatcher {
  // pattern binder -> subject-side variable standing for the same binding
  std::vector<std::pair<Var, Var>> binders;
  std::set<Var> pattern_free;  // match variables
  std::map<Var, Term> raw;     // collected bindings (not yet prefixed)
  std::map<Var, size_t> leaf_arity;

  std::optional<Var> subject_of(const Var& p) const {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      if (it->first == p) return it->second;
    return std::nullopt;
  }

  bool subject_bound(const Var& s) const {
    for (auto& [_, sb] : binders)
      if (sb == s) return true;
    return false;
  }

  bool go(const Term& p, const Term& s) {
    // p, s eta-normal except for virtual expansion below
    if (p.kind() == TermKind::Abs) {
      if (s.kind() == TermKind::Abs) {
        if (p.binder().type != s.binder().type) return false;
        binders.emplace_back(p.binder(), s.binder());
        bool ok = go(p.body(), eta_normal_form(s.body()));
        binders.pop_back();
        return ok;
      }
      // virtual eta-expansion of the subject
      if (!s.type().is_arrow() || s.type().domain() != p.binder().type)
        return false;
      std::set<std::string> avoid = all_var_names(s);
      for (auto& [_, sb] : binders) avoid.insert(sb.name);
      Var y = fresh_var(p.binder().name, p.binder().type, avoid);
      binders.emplace_back(p.binder(), y);
      bool ok = go(p.body(), Term::app(s, Term::var(y)));
      binders.pop_back();
      return ok;
    }
    Term ph = p.head();
    std::vector<Term> pargs = p.spine_args();
    if (ph.kind() == TermKind::Var && pattern_free.count(ph.var())) {
      // flexible leaf: arguments eta-reduce to distinct bound variables
      std::vector<Var> ys;
      for (const Term& a : pargs) {
        Term nf = eta_normal_form(a);
        if (nf.kind() != TermKind::Var) return false;
        auto sv = subject_of(nf.var());
        if (!sv) return false;
        ys.push_back(*sv);
      }
      std::set<Var> distinct(ys.begin(), ys.end());
      if (distinct.size() != ys.size()) return false;
      // image: abstract the subject over the matched binders
      std::set<std::string> avoid = all_var_names(s);
      for (auto& [_, sb] : binders) avoid.insert(sb.name);
      Substitution rename;
      std::vector<Var> fresh;
      for (const Var& y : ys) {
        Var z = fresh_var("z", y.type, avoid);
        avoid.insert(z.name);
        fresh.push_back(z);
        rename.bind(y, Term::var(z));
      }
      Term body = substitute(s, rename);
      // remaining subject binders must not escape
      for (auto& [_, sb] : binders)
        if (body.has_free(sb)) return false;
      Term img = body;
      for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
        img = Term::abs(*it, img);
      auto prev = raw.find(ph.var());
      if (prev != raw.end()) return eta_eq(prev->second, img);
      raw.emplace(ph.var(), img);
      auto ar = leaf_arity.find(ph.var());
      if (ar == leaf_arity.end() || ar->second < pargs.size())
        leaf_arity[ph.var()] = pargs.size();
      return true;
    }
    // rigid head: symbol or bound variable
    Term sh = s.head();
    std::vector<Term> sargs = s.spine_args();
    if (ph.kind() == TermKind::Sym) {
      if (sh.kind() != TermKind::Sym || sh.sym_name() != ph.sym_name() ||
          sh.sym_type() != ph.sym_type())
        return false;
    } else if (ph.kind() == TermKind::Var) {
      auto sv = subject_of(ph.var());
      if (sv) {
        if (sh.kind() != TermKind::Var || !(sh.var() == *sv)) return false;
      } else {
        // rigid free variable of the pattern context
        if (sh.kind() != TermKind::Var || !(sh.var() == ph.var()) ||
            subject_bound(sh.var()))
          return false;
      }
    } else {
      return false;  // beta-redex in the pattern
    }
    if (pargs.size() != sargs.size()) return false;
    for (size_t i = 0; i < pargs.size(); ++i)
      if (!go(eta_normal_form(pargs[i]), eta_normal_form(sargs[i])))
        return false;
    return true;
  }
};

// record the leaf arities required by the original (un-normalized) pattern
void collect_leaf_arities(const Term& t, std::map<Var, size_t>& out) {
  for (const Position& p : leaf_positions(t)) {
    Term leaf = subterm_at(t, p);
    Term h = leaf.head();
    if (h.kind() != TermKind::Var) continue;
    size_t n = leaf.spine_args().size();
    auto it = out.find(h.var());
    if (it == out.end() || it->second < n) out[h.var()] = n;
  }
}

}  // namespace

std::optional<Substitution> match_modulo_betaeta(const Term& pattern,
                                                 const Term& subject) {
  PatternCheck pc = is_pattern(pattern);
  if (!pc.is_pattern)
    throw NotAPattern("left-hand side is not a pattern (offending position " +
                      pc.witness + ")");
  if (!pattern.well_typed() || !subject.well_typed()) return std::nullopt;
  if (pattern.type() != subject.type()) return std::nullopt;
  HopmMatcher m;
  for (const Var& v : pattern.free_vars()) m.pattern_free.insert(v);
  if (!m.go(eta_normal_form(pattern), eta_normal_form(subject)))
    return std::nullopt;
  std::map<Var, size_t> arities;
  collect_leaf_arities(pattern, arities);
  Substitution sigma;
  for (auto& [x, img] : m.raw) {
    size_t need = 0;
    auto it = arities.find(x);
    if (it != arities.end()) need = it->second;
    Term final_img = img;
    if (need > 0) final_img = eta_expand_prefix(img, static_cast<int>(need));
    sigma.bind(x, final_img);
  }
  // unconstrained pattern variables (possible after eta-normalization erased
  // a leaf) keep themselves, but must still carry the needed prefix
  for (auto& [x, need] : arities) {
    if (sigma.lookup(x)) continue;
    if (need > 0) return std::nullopt;
  }
  if (!subst_valid_wrt(sigma, pattern)) return std::nullopt;
  if (!eta_eq(subject, valuation(sigma, pattern))) return std::nullopt;
  return sigma;
}

std::vector<TraceStep> rewrite_reducts_hopm(const RewriteSystem& system,
                                            const Term& t) {
  std::vector<TraceStep> out;
  for (const Position& p : positions(t)) {
    Term sub = subterm_at(t, p);
    if (!sub.well_typed()) continue;
    for (const Rule& r : system.rules) {
      if (!r.lhs.type_opt() || *r.lhs.type_opt() != sub.type()) continue;
      if (auto sigma = match_modulo_betaeta(r.lhs, sub)) {
        Term rhs = substitute(r.rhs, *sigma);
        out.push_back(
            TraceStep{ReductionKind::Rule, r.id, p, replace_at(t, p, rhs)});
      }
    }
  }
  return out;
}

std::vector<Term> one_step_hopm(const RewriteSystem& system, const Term& t) {
  std::vector<Term> out;
  for (auto& [p, r] : beta_reducts(t)) out.push_back(r);
  for (auto& s : rewrite_reducts_hopm(system, t)) out.push_back(s.result);
  return out;
}

}  // namespace hocc
