#include <functional>

#include "hocc/closure.hpp"

namespace hocc {

// ------------------------------------------------------------- term <-> json

namespace {

// minimal type parser for certificate payloads: IDENT | (T) | T -> T
struct TypeParser {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  Type atom() {
    skip();
    if (eat("(")) {
      Type t = type();
      if (!eat(")")) throw std::runtime_error("type: expected ')'");
      return t;
    }
    size_t start = i;
    while (i < s.size() &&
           (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
            s[i] == '\''))
      ++i;
    if (start == i) throw std::runtime_error("type: expected identifier");
    return Type::constant(s.substr(start, i - start));
  }
  Type type() {
    Type lhs = atom();
    skip();
    if (eat("->")) return Type::arrow(lhs, type());
    return lhs;
  }
};

Type parse_type(const RewriteSystem& system, const std::string& str) {
  TypeParser p{str};
  Type t = p.type();
  p.skip();
  if (p.i != str.size())
    throw std::runtime_error("type: trailing input in '" + str + "'");
  for (auto& c : t.constants())
    if (!system.type_constants.count(c))
      throw std::runtime_error("certificate mentions unknown sort " + c);
  return t;
}

}  // namespace

ordered_json term_to_json(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
      return ordered_json::array({"v", t.var().name, t.var().type.str()});
    case TermKind::Sym:
      return ordered_json::array({"s", t.sym_name()});
    case TermKind::Abs:
      return ordered_json::array({"l", t.binder().name, t.binder().type.str(),
                                  term_to_json(t.body())});
    case TermKind::App:
      return ordered_json::array(
          {"a", term_to_json(t.fun()), term_to_json(t.arg())});
  }
  return {};
}

Term term_from_json(const RewriteSystem& system, const ordered_json& j) {
  if (!j.is_array() || j.empty())
    throw std::runtime_error("certificate: malformed term");
  std::string tag = j.at(0).get<std::string>();
  if (tag == "v")
    return Term::var(Var{j.at(1).get<std::string>(),
                         parse_type(system, j.at(2).get<std::string>())});
  if (tag == "s") {
    std::string name = j.at(1).get<std::string>();
    if (!system.has_symbol(name))
      throw std::runtime_error("certificate mentions unknown symbol " + name);
    return Term::sym(name, system.symbol_type(name));
  }
  if (tag == "l")
    return Term::abs(Var{j.at(1).get<std::string>(),
                         parse_type(system, j.at(2).get<std::string>())},
                     term_from_json(system, j.at(3)));
  if (tag == "a")
    return Term::app(term_from_json(system, j.at(1)),
                     term_from_json(system, j.at(2)));
  throw std::runtime_error("certificate: unknown term tag " + tag);
}

// ----------------------------------------------------------- config <-> json

ordered_json config_to_json(const CheckerConfig& config) {
  ordered_json j = ordered_json::object();
  j["interpretation"] = to_string(config.interpretation);
  j["mode"] = to_string(config.mode);
  j["family"] = to_string(config.ordering.family);
  ordered_json prec = ordered_json::object();
  prec["greater"] = ordered_json::array();
  for (auto& [a, b] : config.ordering.precedence.greater_pairs())
    prec["greater"].push_back(ordered_json::array({a, b}));
  prec["equiv"] = ordered_json::array();
  for (auto& [a, b] : config.ordering.precedence.equiv_pairs())
    prec["equiv"].push_back(ordered_json::array({a, b}));
  j["precedence"] = prec;
  ordered_json filters = ordered_json::object();
  for (auto& [f, filt] : config.ordering.filters)
    filters[f] = filt.word;
  j["filters"] = filters;
  ordered_json statuses = ordered_json::object();
  for (auto& [f, st] : config.ordering.statuses)
    statuses[f] = st == Status::Lex ? "lex" : "mul";
  j["statuses"] = statuses;
  j["max_depth"] = config.max_depth;
  j["red_fuel"] = config.red_fuel;
  j["reach_fuel"] = config.reach_fuel;
  j["eq_member_bound"] = config.eq_member_bound;
  j["assume_commutation"] = config.assume_commutation;
  return j;
}

CheckerConfig config_from_json(const RewriteSystem& system,
                               const ordered_json& j) {
  CheckerConfig config;
  std::string interp = j.at("interpretation").get<std::string>();
  config.interpretation = interp == "acc" ? Interp::Accessible : Interp::Basic;
  std::string mode = j.at("mode").get<std::string>();
  config.mode = mode == "modulo" ? Mode::Modulo
               : mode == "hopm" ? Mode::HopmBetaEta
                                : Mode::Plain;
  auto fam = order_family_from_string(j.at("family").get<std::string>());
  if (!fam) throw std::runtime_error("certificate: unknown ordering family");
  config.ordering.family = *fam;
  for (auto& p : j.at("precedence").at("greater"))
    config.ordering.precedence.declare_greater(p.at(0).get<std::string>(),
                                               p.at(1).get<std::string>());
  for (auto& p : j.at("precedence").at("equiv"))
    config.ordering.precedence.declare_equiv(p.at(0).get<std::string>(),
                                             p.at(1).get<std::string>());
  config.ordering.precedence.close();
  for (auto& [f, w] : j.at("filters").items()) {
    Filter filt;
    for (auto& k : w) filt.word.push_back(k.get<int>());
    config.ordering.filters[f] = filt;
  }
  for (auto& [f, s] : j.at("statuses").items())
    config.ordering.statuses[f] =
        s.get<std::string>() == "mul" ? Status::Mul : Status::Lex;
  config.max_depth = j.at("max_depth").get<int>();
  config.red_fuel = j.at("red_fuel").get<int>();
  config.reach_fuel = j.at("reach_fuel").get<int>();
  config.eq_member_bound = j.at("eq_member_bound").get<int>();
  config.assume_commutation = j.at("assume_commutation").get<bool>();
  (void)system;
  return config;
}

ordered_json deriv_to_json(const DerivNode& n) {
  ordered_json j = ordered_json::object();
  j["op"] = n.op;
  j["goal"] = term_to_json(n.goal);
  j["show"] = to_string(n.goal);
  if (!n.params.empty()) j["params"] = n.params;
  ordered_json kids = ordered_json::array();
  for (const DerivNode& c : n.children) kids.push_back(deriv_to_json(c));
  j["children"] = kids;
  return j;
}

DerivNode deriv_from_json(const RewriteSystem& system, const ordered_json& j) {
  DerivNode n;
  n.op = j.at("op").get<std::string>();
  n.goal = term_from_json(system, j.at("goal"));
  if (j.contains("params")) n.params = j.at("params");
  for (auto& c : j.at("children"))
    n.children.push_back(deriv_from_json(system, c));
  return n;
}

ordered_json certificate_json(const RewriteSystem& system,
                              const CheckerConfig& config,
                              const Report& report) {
  ordered_json j = ordered_json::object();
  j["format"] = "hocc-cert-1";
  j["verdict"] = to_string(report.verdict);
  j["config"] = config_to_json(config);
  ordered_json rules = ordered_json::array();
  for (const RuleReport& rr : report.rules) {
    const Rule* rule = nullptr;
    for (const Rule& r : system.rules)
      if (r.id == rr.id) rule = &r;
    ordered_json rj = ordered_json::object();
    rj["id"] = rr.id;
    if (rule) {
      rj["lhs"] = term_to_json(rule->lhs);
      rj["rhs"] = term_to_json(rule->rhs);
    }
    rj["in_closure"] = rr.in_closure;
    if (rr.derivation) rj["derivation"] = deriv_to_json(*rr.derivation);
    rules.push_back(rj);
  }
  j["rules"] = rules;
  ordered_json eqs = ordered_json::array();
  for (const EquationReport& er : report.equations) {
    const Equation* eq = nullptr;
    for (const Equation& e : system.equations)
      if (e.id == er.id) eq = &e;
    ordered_json ej = ordered_json::object();
    ej["id"] = er.id;
    if (eq) {
      ej["lhs"] = term_to_json(eq->lhs);
      ej["rhs"] = term_to_json(eq->rhs);
    }
    ej["ok"] = er.ok;
    ej["calls_equivalent"] = er.calls_equivalent;
    ordered_json fwd = ordered_json::array();
    for (const DerivNode& d : er.forward) fwd.push_back(deriv_to_json(d));
    ej["forward"] = fwd;
    ordered_json bwd = ordered_json::array();
    for (const DerivNode& d : er.backward) bwd.push_back(deriv_to_json(d));
    ej["backward"] = bwd;
    eqs.push_back(ej);
  }
  j["equations"] = eqs;
  return j;
}

// -------------------------------------------------------------- verification

namespace {

struct NodeVerifier {
  const RewriteSystem& system;
  CheckerConfig config;
  const Analyses an;
  std::string head;
  std::vector<Term> lhs_args;
  std::set<Var> lhs_fvs;
  std::string failure;

  NodeVerifier(const RewriteSystem& sys, const CheckerConfig& cfg)
      : system(sys), config(cfg), an(Analyses::build(sys, cfg.mode)) {
    if (config.mode == Mode::HopmBetaEta)
      config.interpretation = Interp::Accessible;
  }

  void set_context(const std::string& h, const std::vector<Term>& args) {
    head = h;
    lhs_args = args;
    lhs_fvs.clear();
    for (const Term& l : args)
      for (const Var& v : l.free_vars()) lhs_fvs.insert(v);
  }

  bool fail(const DerivNode& n, const std::string& why) {
    failure = "node (" + n.op + ") for goal '" + to_string(n.goal) +
              "': " + why;
    return false;
  }

  bool basic_ok(const std::string& constant) {
    return config.interpretation == Interp::Basic || an.is_basic(constant);
  }

  bool check(const DerivNode& n) {
    if (!n.goal.well_typed()) return fail(n, "goal is not well typed");
    const std::string& op = n.op;
    auto need_children = [&](size_t k) {
      if (n.children.size() != k) {
        fail(n, "expected " + std::to_string(k) + " premises");
        return false;
      }
      return true;
    };
    bool hopm = config.mode == Mode::HopmBetaEta;
    bool modulo = config.mode == Mode::Modulo;
    bool accessible = config.interpretation == Interp::Accessible;
    if (op == "arg") {
      if (!need_children(0)) return false;
      for (const Term& l : lhs_args)
        if (alpha_eq(l, n.goal)) return true;
      return fail(n, "goal is not a left-hand-side argument");
    }
    if (op == "var") {
      if (!need_children(0)) return false;
      if (n.goal.kind() != TermKind::Var) return fail(n, "goal not a variable");
      if (lhs_fvs.count(n.goal.var()))
        return fail(n, "variable occurs in the left-hand side");
      return true;
    }
    if (op == "abs") {
      if (!need_children(1)) return false;
      if (n.goal.kind() != TermKind::Abs)
        return fail(n, "goal not an abstraction");
      if (lhs_fvs.count(n.goal.binder()))
        return fail(n, "binder occurs in the left-hand side");
      if (!alpha_eq(n.children[0].goal, n.goal.body()))
        return fail(n, "premise is not the body");
      return check(n.children[0]);
    }
    if (op == "app") {
      if (!need_children(2)) return false;
      if (n.goal.kind() != TermKind::App)
        return fail(n, "goal not an application");
      if (!alpha_eq(n.children[0].goal, n.goal.fun()) ||
          !alpha_eq(n.children[1].goal, n.goal.arg()))
        return fail(n, "premises do not split the application");
      return check(n.children[0]) && check(n.children[1]);
    }
    if (op == "red") {
      if (!need_children(1)) return false;
      OneStepFn step;
      if (config.mode == Mode::Plain)
        step = [this](const Term& t) { return one_step_beta_r(system, t); };
      else if (config.mode == Mode::HopmBetaEta)
        step = [this](const Term& t) { return one_step_hopm(system, t); };
      else
        step = [this](const Term& t) {
          std::vector<Term> out;
          for (auto& [p, r] : beta_reducts(t)) out.push_back(r);
          for (const Term& r :
               class_rewrite_reducts(system, t, config.eq_member_bound))
            out.push_back(r);
          return out;
        };
      bool found = false;
      for (const Term& r : step(n.children[0].goal))
        if (alpha_eq(r, n.goal)) found = true;
      if (!found) return fail(n, "goal is not a one-step reduct");
      return check(n.children[0]);
    }
    if (op == "mod") {
      if (!modulo) return fail(n, "(mod) outside modulo mode");
      if (!need_children(1)) return false;
      if (!eq_equal(system, n.children[0].goal, n.goal,
                    config.eq_member_bound))
        return fail(n, "terms are not equal modulo the equations");
      return check(n.children[0]);
    }
    if (op == "eta") {
      if (!hopm) return fail(n, "(eta) outside hopm mode");
      if (!need_children(1)) return false;
      if (!eta_eq(n.children[0].goal, n.goal))
        return fail(n, "terms are not eta-equivalent");
      return check(n.children[0]);
    }
    if (op == "undef") {
      if (!need_children(0)) return false;
      if (!accessible || !an.standard_inductive)
        return fail(n, "(undef) needs the accessible interpretation");
      if (n.goal.kind() != TermKind::Sym ||
          an.defined.count(n.goal.sym_name()))
        return fail(n, "goal is not an undefined symbol");
      return true;
    }
    if (op == "undef-basic") {
      if (!need_children(0)) return false;
      if (n.goal.kind() != TermKind::Sym ||
          an.defined.count(n.goal.sym_name()))
        return fail(n, "goal is not an undefined symbol");
      if (!basic_ok(n.goal.sym_type().final_codomain().constant_name()))
        return fail(n, "codomain is not a basic type");
      return true;
    }
    if (op == "subterm-basic") {
      if (!need_children(1)) return false;
      if (!n.goal.type().is_constant() ||
          !basic_ok(n.goal.type().constant_name()))
        return fail(n, "goal type is not a basic constant");
      if (!stable_subterm_gt(n.children[0].goal, n.goal))
        return fail(n, "goal is not a proper stable subterm of the premise");
      return check(n.children[0]);
    }
    if (op == "subterm-acc") {
      if (!accessible) return fail(n, "(subterm-acc) needs interp=acc");
      if (!need_children(1)) return false;
      const Term& src = n.children[0].goal;
      Term h = src.head();
      if (h.kind() != TermKind::Sym || !an.acc_symbols.count(h.sym_name()))
        return fail(n, "premise head is not matched or undefined");
      if (!src.type().is_constant())
        return fail(n, "premise is not of base type");
      auto args = src.spine_args();
      const Type& ft = system.symbol_type(h.sym_name());
      if (static_cast<int>(args.size()) != ft.arity())
        return fail(n, "premise head is not maximally applied");
      int idx = n.params.contains("index") ? n.params["index"].get<int>() : 0;
      auto acc = accessible_args(ft, an.base);
      if (std::find(acc.begin(), acc.end(), idx) == acc.end())
        return fail(n, "argument index is not accessible");
      if (!alpha_eq(args[idx - 1], n.goal))
        return fail(n, "goal is not the indexed argument");
      return check(n.children[0]);
    }
    if (op == "rec") {
      Term h = n.goal.head();
      if (h.kind() != TermKind::Sym) return fail(n, "goal head not a symbol");
      auto args = n.goal.spine_args();
      if (n.children.size() != args.size())
        return fail(n, "premises do not cover the arguments");
      for (size_t i = 0; i < args.size(); ++i)
        if (!alpha_eq(n.children[i].goal, args[i]))
          return fail(n, "premise " + std::to_string(i + 1) +
                             " is not the matching argument");
      Call caller{head, system.symbol_type(head), lhs_args};
      Call callee{h.sym_name(), h.sym_type(), args};
      if (!rec_decrease(system, an, config, lhs_fvs, caller, callee))
        return fail(n, "call does not decrease in the configured ordering");
      for (const DerivNode& c : n.children)
        if (!check(c)) return false;
      return true;
    }
    if (op == "subterm-abs") {
      if (!hopm) return fail(n, "(subterm-abs) outside hopm mode");
      if (!need_children(1)) return false;
      const Term& src = n.children[0].goal;
      if (src.kind() != TermKind::Abs)
        return fail(n, "premise is not an abstraction");
      if (lhs_fvs.count(src.binder()))
        return fail(n, "binder occurs in the left-hand side");
      if (!alpha_eq(n.goal, src.body()))
        return fail(n, "goal is not the body of the premise");
      return check(n.children[0]);
    }
    if (op == "subterm-app") {
      if (!hopm) return fail(n, "(subterm-app) outside hopm mode");
      if (!need_children(1)) return false;
      const Term& src = n.children[0].goal;
      if (src.kind() != TermKind::App || src.arg().kind() != TermKind::Var)
        return fail(n, "premise is not an application to a variable");
      const Var& x = src.arg().var();
      if (lhs_fvs.count(x) || src.fun().has_free(x))
        return fail(n, "applied variable is not fresh");
      if (!alpha_eq(n.goal, src.fun()))
        return fail(n, "goal is not the function part of the premise");
      return check(n.children[0]);
    }
    return fail(n, "unknown operation");
  }
};

}  // namespace

VerifyResult verify_derivation(const RewriteSystem& system,
                               const CheckerConfig& config,
                               const std::string& head,
                               const std::vector<Term>& lhs_args,
                               const Term& expected_goal, const DerivNode& d) {
  VerifyResult res;
  NodeVerifier v(system, config);
  v.set_context(head, lhs_args);
  if (!alpha_eq(d.goal, expected_goal)) {
    res.ok = false;
    res.failure = "root goal differs from the expected term";
    return res;
  }
  if (!v.check(d)) {
    res.ok = false;
    res.failure = v.failure;
  }
  return res;
}

VerifyResult verify_certificate(const RewriteSystem& system,
                                const CheckerConfig& config,
                                const ordered_json& cert) {
  VerifyResult res;
  try {
    for (const auto& rj : cert.at("rules")) {
      std::string id = rj.at("id").get<std::string>();
      const Rule* rule = nullptr;
      for (const Rule& r : system.rules)
        if (r.id == id) rule = &r;
      if (!rule) {
        res.ok = false;
        res.failure = "certificate mentions unknown rule " + id;
        return res;
      }
      if (!rj.at("in_closure").get<bool>()) {
        res.ok = false;
        res.failure = "rule " + id + " carries no derivation";
        return res;
      }
      DerivNode d = deriv_from_json(system, rj.at("derivation"));
      VerifyResult sub = verify_derivation(
          system, config, rule->lhs.head().sym_name(), rule->lhs.spine_args(),
          rule->rhs, d);
      if (!sub.ok) {
        sub.failure = "rule " + id + ": " + sub.failure;
        return sub;
      }
    }
    for (const auto& ej : cert.at("equations")) {
      std::string id = ej.at("id").get<std::string>();
      const Equation* eq = nullptr;
      for (const Equation& e : system.equations)
        if (e.id == id) eq = &e;
      if (!eq) {
        res.ok = false;
        res.failure = "certificate mentions unknown equation " + id;
        return res;
      }
      auto side = [&](const Term& from, const Term& to,
                      const ordered_json& derivs,
                      const std::string& dir) -> VerifyResult {
        VerifyResult out;
        auto targets = to.spine_args();
        if (derivs.size() != targets.size()) {
          out.ok = false;
          out.failure = "equation " + id + ": " + dir +
                        ": derivation count mismatch";
          return out;
        }
        for (size_t i = 0; i < targets.size(); ++i) {
          DerivNode d = deriv_from_json(system, derivs.at(i));
          VerifyResult sub = verify_derivation(
              system, config, from.head().sym_name(), from.spine_args(),
              targets[i], d);
          if (!sub.ok) {
            sub.failure = "equation " + id + ": " + dir + ": " + sub.failure;
            return sub;
          }
        }
        return out;
      };
      VerifyResult f = side(eq->lhs, eq->rhs, ej.at("forward"), "forward");
      if (!f.ok) return f;
      VerifyResult b = side(eq->rhs, eq->lhs, ej.at("backward"), "backward");
      if (!b.ok) return b;
      // the calls-equivalent obligation
      Analyses an = Analyses::build(system, config.mode);
      if (!aliens_compatible(system, config.ordering.precedence)) {
        Call c1{eq->lhs.head().sym_name(), eq->lhs.head().sym_type(),
                eq->lhs.spine_args()};
        Call c2{eq->rhs.head().sym_name(), eq->rhs.head().sym_type(),
                eq->rhs.spine_args()};
        if (aliens_cmp(system, config.ordering.precedence, c1, c2,
                       config.eq_member_bound) != Cmp::Equivalent) {
          res.ok = false;
          res.failure = "equation " + id + ": sides not equivalent";
          return res;
        }
      }
    }
  } catch (const std::exception& e) {
    res.ok = false;
    res.failure = std::string("malformed certificate: ") + e.what();
  }
  return res;
}

VerifyResult verify_certificate(const RewriteSystem& system,
                                const ordered_json& cert) {
  try {
    CheckerConfig config = config_from_json(system, cert.at("config"));
    return verify_certificate(system, config, cert);
  } catch (const std::exception& e) {
    VerifyResult res;
    res.ok = false;
    res.failure = std::string("malformed certificate: ") + e.what();
    return res;
  }
}

DerivNode substitute_derivation(const DerivNode& d, const Substitution& sigma) {
  DerivNode out;
  out.op = d.op;
  out.goal = substitute(d.goal, sigma);
  out.params = d.params;
  for (const DerivNode& c : d.children)
    out.children.push_back(substitute_derivation(c, sigma));
  return out;
}

}  // namespace hocc
