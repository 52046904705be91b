#include "hocc/closure.hpp"

#include <algorithm>
#include <deque>

namespace hocc {

std::string to_string(Interp i) {
  return i == Interp::Basic ? "basic" : "acc";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Plain: return "plain";
    case Mode::Modulo: return "modulo";
    case Mode::HopmBetaEta: return "hopm";
  }
  return "?";
}

std::string to_string(Verdict v) {
  return v == Verdict::Yes ? "YES" : "MAYBE";
}

// ---------------------------------------------------------------- analyses ---

Analyses Analyses::build(const RewriteSystem& system, const Mode mode) {
  Analyses an;
  bool include_eq = mode == Mode::Modulo;
  BaseOrderResult base = infer_base_order(system);
  an.base = base.order ? *base.order
                       : BaseOrder::discrete(system.type_constants);
  an.standard_inductive = is_standard_inductive(system, an.base);
  an.defined = defined_symbols(system, include_eq);
  an.matched = matched_symbols(system, an.base, include_eq);
  an.acc_symbols = an.matched;
  for (auto& [name, _] : system.symbols)
    if (!an.defined.count(name)) an.acc_symbols.insert(name);
  for (auto& [name, _] : system.symbols)
    an.arity[name] = arity_sup(system, name, include_eq);
  for (auto& c : system.type_constants)
    an.basic[c] = is_basic_class(system, an.base, c, include_eq);
  return an;
}

bool Analyses::is_basic(const std::string& constant) const {
  auto it = basic.find(constant);
  return it != basic.end() && it->second;
}

// ------------------------------------------------------------ rec decrease ---

namespace {

std::vector<Term> reachable(const OneStepFn& step, const Term& t, int fuel,
                            bool include_start) {
  std::vector<Term> out;
  std::set<std::string> seen;
  std::deque<std::pair<Term, int>> frontier{{t, 0}};
  seen.insert(alpha_key(t));
  if (include_start) out.push_back(t);
  while (!frontier.empty()) {
    auto [cur, d] = frontier.front();
    frontier.pop_front();
    if (d >= fuel) continue;
    for (const Term& n : step(cur)) {
      if (!seen.insert(alpha_key(n)).second) continue;
      out.push_back(n);
      frontier.push_back({n, d + 1});
      if (out.size() > 400) return out;  // comparison search cap
    }
  }
  return out;
}

OneStepFn mode_one_step(const RewriteSystem& system,
                        const CheckerConfig& config) {
  switch (config.mode) {
    case Mode::Plain:
      return [&system](const Term& t) { return one_step_beta_r(system, t); };
    case Mode::HopmBetaEta:
      return [&system](const Term& t) { return one_step_hopm(system, t); };
    case Mode::Modulo: {
      int bound = config.eq_member_bound;
      return [&system, bound](const Term& t) {
        std::vector<Term> out;
        for (auto& [p, r] : beta_reducts(t)) out.push_back(r);
        for (const Term& r : class_rewrite_reducts(system, t, bound))
          out.push_back(r);
        return out;
      };
    }
  }
  return {};
}

// base comparator for (->* >=ss)-style quasi-orderings; strict_test decides
// the subterm-like strict step at the end of the reduction prefix
TermCmp make_reach_cmp(const OneStepFn& step, int fuel,
                       const std::function<bool(const Term&, const Term&)>&
                           strict_test) {
  return [step, fuel, strict_test](const Term& a, const Term& b) {
    if (alpha_eq(a, b)) return Cmp::Equivalent;
    if (strict_test(a, b)) return Cmp::Greater;
    for (const Term& r : reachable(step, a, fuel, false)) {
      if (alpha_eq(r, b)) return Cmp::Greater;  // a ->+ b
      if (strict_test(r, b)) return Cmp::Greater;
    }
    return Cmp::NotGE;
  };
}

std::vector<Term> pad_to_maximal(const Call& c, std::set<std::string>& avoid) {
  std::vector<Term> pads;
  Type t = c.result_type();
  while (t.is_arrow()) {
    Var w = fresh_var("w", t.domain(), avoid);
    avoid.insert(w.name);
    pads.push_back(Term::var(w));
    t = t.codomain();
  }
  return pads;
}

}  // namespace

bool rec_decrease(const RewriteSystem& system, const Analyses& an,
                  const CheckerConfig& config, const std::set<Var>& lhs_fvs,
                  const Call& c1, const Call& c2) {
  const OrderingConfig& ord = config.ordering;
  if (ord.family == OrderFamily::Aliens) {
    return aliens_cmp(system, ord.precedence, c1, c2,
                      config.eq_member_bound) == Cmp::Greater;
  }
  // pad both calls to maximal application with fresh variables; sound as
  // long as the filters never select a padded position
  auto a1 = an.arity.find(c1.head);
  auto a2 = an.arity.find(c2.head);
  int ar1 = a1 == an.arity.end() ? 0 : a1->second;
  int ar2 = a2 == an.arity.end() ? 0 : a2->second;
  if (ord.filter_for(c1.head, ar1).norm() > static_cast<int>(c1.args.size()))
    return false;
  if (ord.filter_for(c2.head, ar2).norm() > static_cast<int>(c2.args.size()))
    return false;
  std::set<std::string> avoid;
  for (const Term& t : c1.args)
    for (auto& n : all_var_names(t)) avoid.insert(n);
  for (const Term& t : c2.args)
    for (auto& n : all_var_names(t)) avoid.insert(n);
  for (const Var& v : lhs_fvs) avoid.insert(v.name);
  Call p1 = c1, p2 = c2;
  for (const Term& w : pad_to_maximal(c1, avoid)) p1.args.push_back(w);
  for (const Term& w : pad_to_maximal(c2, avoid)) p2.args.push_back(w);

  OneStepFn step = mode_one_step(system, config);
  TermCmp base;
  if (ord.family == OrderFamily::StructStat) {
    base = make_reach_cmp(step, config.reach_fuel,
                          [&](const Term& x, const Term& y) {
                            return struct_gt(system, an.base, an.acc_symbols,
                                             lhs_fvs, x, y);
                          });
  } else {
    base = make_reach_cmp(step, config.reach_fuel,
                          [](const Term& x, const Term& y) {
                            return stable_subterm_gt(x, y);
                          });
  }
  OrderingConfig eff = ord;
  // default filters must cover at most the rule-arity positions
  for (auto& [f, _] : system.symbols) {
    if (eff.filters.count(f)) continue;
    Filter id;
    auto it = an.arity.find(f);
    int n = it == an.arity.end() ? 0 : it->second;
    for (int i = 1; i <= n; ++i) id.word.push_back(i);
    eff.filters[f] = id;
  }
  return status_cmp(eff, base, p1, p2) == Cmp::Greater;
}

namespace {

bool calls_equivalent(const RewriteSystem& system, const Analyses& an,
                      const CheckerConfig& config, const Call& c1,
                      const Call& c2) {
  if (config.ordering.family == OrderFamily::Aliens)
    return aliens_cmp(system, config.ordering.precedence, c1, c2,
                      config.eq_member_bound) == Cmp::Equivalent;
  return false;
}

}  // namespace

// ----------------------------------------------------------------- checker ---

ClosureChecker::ClosureChecker(const RewriteSystem& system,
                               const CheckerConfig& config)
    : system_(system), config_(config), an_(Analyses::build(system, config.mode)) {}

std::vector<Term> ClosureChecker::one_step(const Term& t) const {
  return mode_one_step(system_, config_)(t);
}

const ClosureChecker::KEntry* ClosureChecker::find_known(const Term& t) const {
  auto it = known_index_.find(alpha_key(t));
  if (it != known_index_.end()) return &known_[it->second];
  return nullptr;
}

void ClosureChecker::add_known(Term t, DerivNode d) {
  std::string key = alpha_key(t);
  if (known_index_.count(key)) return;
  known_index_[key] = known_.size();
  if (config_.mode == Mode::HopmBetaEta) {
    std::string ekey = alpha_key(eta_normal_form(t));
    known_eta_.emplace(ekey, known_.size());
  }
  known_.push_back(KEntry{std::move(t), std::move(d)});
}

void ClosureChecker::seed_known() {
  known_.clear();
  known_index_.clear();
  known_eta_.clear();
  for (size_t i = 0; i < lhs_args_.size(); ++i) {
    DerivNode n{"arg", lhs_args_[i], ordered_json::object(), {}};
    n.params["index"] = i + 1;
    add_known(lhs_args_[i], n);
  }
  bool accessible = config_.interpretation == Interp::Accessible;
  // forward closure: accessible destructuring, pattern destructuring,
  // equational classes, bounded reduction
  std::map<std::string, int> red_depth;
  std::set<std::string> mod_done;
  size_t next = 0;
  const size_t cap = 2000;
  while (next < known_.size() && known_.size() < cap) {
    KEntry e = known_[next++];
    std::string ekey = alpha_key(e.term);
    // (subterm-acc)
    if (accessible) {
      Term h = e.term.head();
      if (h.kind() == TermKind::Sym && an_.acc_symbols.count(h.sym_name()) &&
          e.term.well_typed() && e.term.type().is_constant()) {
        const Type& ft = system_.symbol_type(h.sym_name());
        std::vector<Term> args = e.term.spine_args();
        if (static_cast<int>(args.size()) == ft.arity()) {
          for (int i : accessible_args(ft, an_.base)) {
            DerivNode n{"subterm-acc", args[i - 1], ordered_json::object(),
                        {e.deriv}};
            n.params["index"] = i;
            add_known(args[i - 1], std::move(n));
          }
        }
      }
    }
    if (config_.mode == Mode::HopmBetaEta) {
      // (eta): eta-normal form
      Term nf = eta_normal_form(e.term);
      if (!alpha_eq(nf, e.term))
        add_known(nf, DerivNode{"eta", nf, ordered_json::object(), {e.deriv}});
      // (subterm-abs)
      if (e.term.kind() == TermKind::Abs) {
        Var x = e.term.binder();
        Term body = e.term.body();
        if (lhs_fvs_.count(x)) {
          std::set<std::string> avoid = all_var_names(e.term);
          for (const Var& v : lhs_fvs_) avoid.insert(v.name);
          Var x2 = fresh_var(x.name, x.type, avoid);
          body = substitute(body, Substitution::single(x, Term::var(x2)));
          Term renamed = Term::abs(x2, body);
          DerivNode sub{"subterm-abs", body, ordered_json::object(),
                        {DerivNode{e.deriv.op, renamed, e.deriv.params,
                                   e.deriv.children}}};
          add_known(body, std::move(sub));
        } else {
          add_known(body, DerivNode{"subterm-abs", body,
                                    ordered_json::object(), {e.deriv}});
        }
      }
      // (subterm-app)
      if (e.term.kind() == TermKind::App &&
          e.term.arg().kind() == TermKind::Var) {
        const Var& x = e.term.arg().var();
        if (!lhs_fvs_.count(x) && !e.term.fun().has_free(x))
          add_known(e.term.fun(),
                    DerivNode{"subterm-app", e.term.fun(),
                              ordered_json::object(), {e.deriv}});
      }
    }
    if (config_.mode == Mode::Modulo && !mod_done.count(ekey)) {
      mod_done.insert(ekey);
      EqClassResult cls =
          eq_class(system_, e.term, config_.eq_member_bound, 0);
      for (const Term& m : cls.members) {
        if (alpha_eq(m, e.term)) continue;
        mod_done.insert(alpha_key(m));
        add_known(m, DerivNode{"mod", m, ordered_json::object(), {e.deriv}});
      }
    }
    // (red)
    int d = red_depth.count(ekey) ? red_depth[ekey] : 0;
    if (d < config_.red_fuel) {
      for (const Term& r : one_step(e.term)) {
        std::string rk = alpha_key(r);
        if (known_index_.count(rk)) continue;
        red_depth[rk] = d + 1;
        add_known(r, DerivNode{"red", r, ordered_json::object(), {e.deriv}});
      }
    }
  }
}

std::variant<DerivNode, GoalFailure> ClosureChecker::in_closure(
    const std::string& head, const std::vector<Term>& lhs_args,
    const Term& target) {
  head_ = head;
  lhs_args_ = lhs_args;
  lhs_fvs_.clear();
  for (const Term& l : lhs_args)
    for (const Var& v : l.free_vars()) lhs_fvs_.insert(v);
  memo_.clear();
  in_progress_.clear();
  frontier_.clear();
  depth_exceeded_ = false;
  seed_known();
  auto res = prove(target, 0);
  if (res) return *res;
  GoalFailure f;
  f.frontier = frontier_;
  f.depth_exceeded = depth_exceeded_;
  return f;
}

std::optional<DerivNode> ClosureChecker::prove(const Term& goal, int depth) {
  std::string key = alpha_key(goal);
  auto mit = memo_.find(key);
  if (mit != memo_.end()) return mit->second;
  if (in_progress_.count(key)) return std::nullopt;
  if (depth > config_.max_depth) {
    depth_exceeded_ = true;
    return std::nullopt;
  }
  in_progress_.insert(key);
  auto done = [&](std::optional<DerivNode> r) {
    in_progress_.erase(key);
    if (!r) {
      bool dup = false;
      for (const Term& t : frontier_)
        if (alpha_eq(t, goal)) dup = true;
      if (!dup) frontier_.push_back(goal);
    }
    memo_[key] = r;
    return r;
  };

  // known set, alpha then (hopm) modulo eta
  if (const KEntry* e = find_known(goal)) return done(e->deriv);
  if (config_.mode == Mode::HopmBetaEta) {
    auto it = known_eta_.find(alpha_key(eta_normal_form(goal)));
    if (it != known_eta_.end()) {
      const KEntry& e = known_[it->second];
      if (goal.type() == e.term.type())
        return done(DerivNode{"eta", goal, ordered_json::object(), {e.deriv}});
    }
  }
  // (var)
  if (goal.kind() == TermKind::Var && !lhs_fvs_.count(goal.var()))
    return done(DerivNode{"var", goal, ordered_json::object(), {}});
  // (subterm-basic)
  if (goal.well_typed() && goal.type().is_constant()) {
    bool basic_ok = config_.interpretation == Interp::Basic ||
                    an_.is_basic(goal.type().constant_name());
    if (basic_ok) {
      for (const KEntry& e : known_) {
        if (stable_subterm_gt(e.term, goal))
          return done(DerivNode{"subterm-basic", goal, ordered_json::object(),
                                {e.deriv}});
      }
    }
  }
  // (abs)
  if (goal.kind() == TermKind::Abs) {
    Var x = goal.binder();
    Term body = goal.body();
    Term stored = goal;
    if (lhs_fvs_.count(x)) {
      std::set<std::string> avoid = all_var_names(goal);
      for (const Var& v : lhs_fvs_) avoid.insert(v.name);
      Var x2 = fresh_var(x.name, x.type, avoid);
      body = substitute(body, Substitution::single(x, Term::var(x2)));
      stored = Term::abs(x2, body);
    }
    if (auto sub = prove(body, depth + 1))
      return done(DerivNode{"abs", stored, ordered_json::object(), {*sub}});
    return done(std::nullopt);
  }

  Term h = goal.head();
  std::vector<Term> args = goal.spine_args();
  bool sym_head = h.kind() == TermKind::Sym;
  bool defined_head = sym_head && an_.defined.count(h.sym_name()) > 0;

  auto try_rec = [&]() -> std::optional<DerivNode> {
    if (!sym_head) return std::nullopt;
    Call caller{head_, system_.symbol_type(head_), lhs_args_};
    Call callee{h.sym_name(), h.sym_type(), args};
    if (!rec_decrease(system_, an_, config_, lhs_fvs_, caller, callee))
      return std::nullopt;
    std::vector<DerivNode> children;
    for (const Term& m : args) {
      auto sub = prove(m, depth + 1);
      if (!sub) return std::nullopt;
      children.push_back(*sub);
    }
    return DerivNode{"rec", goal, ordered_json::object(),
                     std::move(children)};
  };
  auto try_undef = [&]() -> std::optional<DerivNode> {
    if (!sym_head || !args.empty() || an_.defined.count(h.sym_name()))
      return std::nullopt;
    if (config_.interpretation == Interp::Accessible && an_.standard_inductive)
      return DerivNode{"undef", goal, ordered_json::object(), {}};
    return std::nullopt;
  };
  auto try_undef_basic = [&]() -> std::optional<DerivNode> {
    if (!sym_head || !args.empty() || an_.defined.count(h.sym_name()))
      return std::nullopt;
    std::string b = h.sym_type().final_codomain().constant_name();
    bool basic_ok =
        config_.interpretation == Interp::Basic || an_.is_basic(b);
    if (basic_ok)
      return DerivNode{"undef-basic", goal, ordered_json::object(), {}};
    return std::nullopt;
  };
  auto try_app = [&]() -> std::optional<DerivNode> {
    if (goal.kind() != TermKind::App) return std::nullopt;
    auto f = prove(goal.fun(), depth + 1);
    if (!f) return std::nullopt;
    auto a = prove(goal.arg(), depth + 1);
    if (!a) return std::nullopt;
    return DerivNode{"app", goal, ordered_json::object(), {*f, *a}};
  };

  if (defined_head && !args.empty()) {
    if (auto r = try_rec()) return done(r);
    if (auto r = try_app()) return done(r);
  } else if (sym_head && args.empty()) {
    if (auto r = try_undef()) return done(r);
    if (auto r = try_undef_basic()) return done(r);
    if (auto r = try_rec()) return done(r);
  } else {
    if (auto r = try_app()) return done(r);
    if (auto r = try_rec()) return done(r);
  }
  return done(std::nullopt);
}

// ------------------------------------------------------------ check_system ---

namespace {

void collect_ops(const DerivNode& n, std::vector<std::string>& out) {
  if (std::find(out.begin(), out.end(), n.op) == out.end()) out.push_back(n.op);
  for (const DerivNode& c : n.children) collect_ops(c, out);
}

struct ConfigCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
  CheckerConfig config;
};

ConfigCheck validate_config(const RewriteSystem& system, const Analyses& an,
                            const CheckerConfig& config) {
  ConfigCheck out;
  out.config = config;
  if (config.interpretation == Interp::Accessible && !an.standard_inductive) {
    auto v = standard_inductive_violation(system, an.base);
    std::string why =
        v ? " (constructor " + v->constructor + ", argument " +
                std::to_string(v->arg) + ")"
          : "";
    out.diagnostics.push_back(
        "config: accessible interpretation unavailable, the signature is "
        "not a standard inductive system" + why);
    out.ok = false;
  }
  if (config.ordering.family == OrderFamily::StructStat &&
      config.interpretation != Interp::Accessible) {
    out.diagnostics.push_back(
        "config: struct-stat requires the accessible interpretation");
    out.ok = false;
  }
  if (config.mode == Mode::Modulo && !system.equations.empty() &&
      config.ordering.family != OrderFamily::Aliens) {
    out.diagnostics.push_back(
        "config: rewriting modulo equations requires the aliens ordering");
    out.ok = false;
  }
  for (const ConfigViolation& v :
       check_config(system, an.base, config.ordering)) {
    out.diagnostics.push_back("config: " + v.symbol + ": " + v.clause);
    out.ok = false;
  }
  return out;
}

}  // namespace

Report check_system(const RewriteSystem& system, const CheckerConfig& given) {
  Report report;
  auto errors = validate(system);
  if (!errors.empty()) {
    for (auto& e : errors)
      report.diagnostics.push_back("invalid system: " + e.where + ": " +
                                   e.code + ": " + e.message);
    return report;
  }
  CheckerConfig config = given;
  // matching modulo beta-eta relies on the accessible type interpretation
  if (config.mode == Mode::HopmBetaEta)
    config.interpretation = Interp::Accessible;
  Analyses an = Analyses::build(system, config.mode);
  ConfigCheck cc = validate_config(system, an, config);
  report.diagnostics = cc.diagnostics;
  if (!cc.ok) return report;

  bool blocked = false;

  if (config.mode == Mode::HopmBetaEta) {
    for (const Rule& r : system.rules) {
      for (const Term& arg : r.lhs.spine_args()) {
        PatternCheck pc = is_pattern(arg);
        if (!pc.is_pattern) {
          report.diagnostics.push_back("hopm: rule " + r.id +
                                       ": lhs argument is not a pattern: " +
                                       to_string(arg));
          blocked = true;
        }
        std::set<std::string> syms;
        for (const Position& p : positions(arg)) {
          Term s = subterm_at(arg, p);
          if (s.kind() == TermKind::Sym && an.defined.count(s.sym_name())) {
            report.diagnostics.push_back(
                "hopm: rule " + r.id + ": lhs argument contains the defined "
                "symbol " + s.sym_name() + " at position " + p);
            blocked = true;
          }
        }
      }
    }
    if (!is_beta_complete(system)) {
      report.diagnostics.push_back(
          "hopm: rule set is not beta-complete (run with --complete)");
      blocked = true;
    }
    if (!is_eta_complete(system)) {
      report.diagnostics.push_back(
          "hopm: rule set is not eta-complete (run with --complete)");
      blocked = true;
    }
  }

  if (config.mode == Mode::Modulo) {
    report.admissibility = admissibility(system, an.base);
    const AdmissibilityReport& adm = *report.admissibility;
    if (!adm.regular || !adm.non_collapsing || !adm.neutral) {
      for (const auto& d : adm.per_equation) {
        if (!d.regular)
          report.diagnostics.push_back("equation " + d.id + " is not regular");
        if (!d.non_collapsing)
          report.diagnostics.push_back("equation " + d.id + " is collapsing");
        if (!d.neutral)
          report.diagnostics.push_back("equation " + d.id +
                                       " is not neutral: " + d.note);
      }
      blocked = true;
    }
    if (adm.commutes_with_beta == CommutationStatus::Unknown) {
      if (config.assume_commutation) {
        report.diagnostics.push_back(
            "commutation with beta assumed (--assume-commutation)");
      } else {
        report.conditional_on_commutation = true;
        report.diagnostics.push_back(
            "CONDITIONAL: the syntactic commutation criterion does not "
            "apply; rerun with --assume-commutation if =E is known to "
            "commute with beta");
      }
    }
  }

  ClosureChecker checker(system, config);
  bool all_ok = true;
  for (const Rule& r : system.rules) {
    RuleReport rr;
    rr.id = r.id;
    auto res = checker.in_closure(r.lhs.head().sym_name(), r.lhs.spine_args(),
                                  r.rhs);
    if (auto* d = std::get_if<DerivNode>(&res)) {
      rr.in_closure = true;
      rr.derivation = *d;
      collect_ops(*d, rr.ops_used);
    } else {
      all_ok = false;
      for (const Term& g : std::get<GoalFailure>(res).frontier)
        rr.failed_goals.push_back(to_string(g));
    }
    report.rules.push_back(std::move(rr));
  }

  if (config.mode == Mode::Modulo) {
    bool compatible =
        aliens_compatible(system, config.ordering.precedence);
    for (const Equation& e : system.equations) {
      EquationReport er;
      er.id = e.id;
      er.ok = true;
      auto prove_side = [&](const Term& from, const Term& to,
                            std::vector<DerivNode>& out) {
        std::vector<Term> largs = from.spine_args();
        for (const Term& m : to.spine_args()) {
          auto res =
              checker.in_closure(from.head().sym_name(), largs, m);
          if (auto* d = std::get_if<DerivNode>(&res)) {
            out.push_back(*d);
          } else {
            er.ok = false;
            for (const Term& g : std::get<GoalFailure>(res).frontier)
              er.failed_goals.push_back(to_string(g));
          }
        }
      };
      prove_side(e.lhs, e.rhs, er.forward);
      prove_side(e.rhs, e.lhs, er.backward);
      if (compatible) {
        er.calls_equivalent = true;
      } else {
        Call c1{e.lhs.head().sym_name(), e.lhs.head().sym_type(),
                e.lhs.spine_args()};
        Call c2{e.rhs.head().sym_name(), e.rhs.head().sym_type(),
                e.rhs.spine_args()};
        er.calls_equivalent =
            calls_equivalent(system, checker.analyses(), config, c1, c2);
      }
      if (!er.calls_equivalent) {
        er.ok = false;
        report.diagnostics.push_back(
            "equation " + e.id +
            ": the two sides are not equivalent in the call ordering");
      }
      all_ok = all_ok && er.ok;
      report.equations.push_back(std::move(er));
    }
  }

  if (all_ok && !blocked && !report.conditional_on_commutation)
    report.verdict = Verdict::Yes;
  return report;
}

// ------------------------------------------------------------- auto search ---

namespace {

Precedence call_graph_precedence(const RewriteSystem& system) {
  // f >= g when g occurs in the right-hand side of an f-rule; equivalence on
  // the strongly connected components; equation heads identified
  std::set<std::string> defined = defined_symbols(system, true);
  std::map<std::string, std::set<std::string>> edges;
  for (const Rule& r : system.rules) {
    std::string f = r.lhs.head().sym_name();
    std::set<std::string> syms;
    std::function<void(const Term&)> collect = [&](const Term& t) {
      switch (t.kind()) {
        case TermKind::Sym:
          syms.insert(t.sym_name());
          break;
        case TermKind::Abs:
          collect(t.body());
          break;
        case TermKind::App:
          collect(t.fun());
          collect(t.arg());
          break;
        default:
          break;
      }
    };
    collect(r.rhs);
    for (auto& g : syms) edges[f].insert(g);
  }
  for (const Equation& e : system.equations) {
    if (e.lhs.head().kind() == TermKind::Sym &&
        e.rhs.head().kind() == TermKind::Sym) {
      edges[e.lhs.head().sym_name()].insert(e.rhs.head().sym_name());
      edges[e.rhs.head().sym_name()].insert(e.lhs.head().sym_name());
    }
  }
  // reachability
  std::set<std::string> nodes;
  for (auto& [name, _] : system.symbols) nodes.insert(name);
  std::map<std::string, std::set<std::string>> reach;
  for (auto& n : nodes) {
    std::deque<std::string> q{n};
    while (!q.empty()) {
      std::string cur = q.front();
      q.pop_front();
      for (auto& m : edges[cur])
        if (reach[n].insert(m).second) q.push_back(m);
    }
  }
  Precedence prec;
  for (auto& a : nodes)
    for (auto& b : nodes) {
      if (a == b) continue;
      bool ab = reach[a].count(b) > 0, ba = reach[b].count(a) > 0;
      if (ab && ba)
        prec.declare_equiv(a, b);
      else if (ab)
        prec.declare_greater(a, b);
    }
  prec.close();
  return prec;
}

}  // namespace

AutoResult auto_search(const RewriteSystem& system, Mode mode,
                       const OrderingConfig& hint, bool assume_commutation) {
  AutoResult result;
  Analyses an = Analyses::build(system, mode);

  std::vector<Interp> interps;
  if (an.standard_inductive) interps.push_back(Interp::Accessible);
  if (mode != Mode::HopmBetaEta) interps.push_back(Interp::Basic);

  std::vector<OrderFamily> families;
  if (mode == Mode::Modulo && !system.equations.empty()) {
    families = {OrderFamily::Aliens};
  } else {
    families = {OrderFamily::SubtermStat, OrderFamily::SubtermMul};
    if (an.standard_inductive) families.push_back(OrderFamily::StructStat);
  }

  std::vector<Precedence> precs;
  if (!hint.precedence.greater_pairs().empty() ||
      !hint.precedence.equiv_pairs().empty())
    precs.push_back(hint.precedence);
  precs.push_back(call_graph_precedence(system));

  // per-equivalence-class filter/status candidates over defined symbols
  std::set<std::string> defined = defined_symbols(system, mode == Mode::Modulo);

  Report last;
  for (Interp interp : interps) {
    for (OrderFamily family : families) {
      if (family == OrderFamily::StructStat && interp != Interp::Accessible)
        continue;
      for (const Precedence& prec : precs) {
        std::vector<std::set<std::string>> classes = prec.classes(defined);
        // candidate (filter, status) list per class
        std::vector<std::vector<std::pair<Filter, Status>>> cands;
        for (auto& cls : classes) {
          int minar = 1 << 20;
          for (auto& f : cls) minar = std::min(minar, an.arity[f]);
          if (minar == (1 << 20)) minar = 0;
          std::vector<std::pair<Filter, Status>> cand;
          bool hinted = false;
          for (auto& f : cls)
            if (hint.filters.count(f) || hint.statuses.count(f)) hinted = true;
          if (hinted) {
            const std::string& rep = *cls.begin();
            cand.push_back({hint.filter_for(rep, an.arity[rep]),
                            hint.status_for(rep)});
          } else {
            auto push = [&](std::vector<int> w, Status s) {
              Filter f{std::move(w)};
              if (f.norm() <= minar) cand.push_back({f, s});
            };
            push({1}, Status::Lex);
            if (minar >= 2) {
              push({1, 2}, Status::Lex);
              push({1, 2}, Status::Mul);
              push({2, 1}, Status::Lex);
              push({2}, Status::Lex);
            }
            if (minar >= 3) push({1, 2, 3}, Status::Lex);
            if (minar == 0 || cand.empty())
              cand.push_back({Filter{{}}, Status::Lex});
          }
          cands.push_back(cand);
        }
        // bounded cartesian product
        std::vector<size_t> idx(cands.size(), 0);
        long total = 1;
        for (auto& c : cands) total *= static_cast<long>(c.size());
        if (total > 2048) total = 2048;
        for (long step = 0; step < total; ++step) {
          CheckerConfig config;
          config.mode = mode;
          config.interpretation = interp;
          config.assume_commutation = assume_commutation;
          config.ordering.family = family;
          config.ordering.precedence = prec;
          for (size_t c = 0; c < classes.size(); ++c) {
            auto& [filt, st] = cands[c][idx[c]];
            for (auto& f : classes[c]) {
              config.ordering.filters[f] = filt;
              config.ordering.statuses[f] = st;
            }
          }
          if (check_config(system, an.base, config.ordering).empty()) {
            Report rep = check_system(system, config);
            if (rep.verdict == Verdict::Yes) {
              result.config = config;
              result.report = std::move(rep);
              return result;
            }
            last = std::move(rep);
          }
          // advance indices
          for (size_t c = 0; c < idx.size(); ++c) {
            if (++idx[c] < cands[c].size()) break;
            idx[c] = 0;
          }
        }
      }
    }
  }
  result.report = std::move(last);
  if (result.report.rules.empty() && !system.rules.empty()) {
    CheckerConfig config;
    config.mode = mode;
    config.assume_commutation = assume_commutation;
    config.ordering.family =
        mode == Mode::Modulo ? OrderFamily::Aliens : OrderFamily::SubtermStat;
    config.ordering.precedence = call_graph_precedence(system);
    result.report = check_system(system, config);
  }
  result.report.verdict = Verdict::Maybe;
  return result;
}

}  // namespace hocc
