#include "hocc/orderings.hpp"

#include <algorithm>

namespace hocc {

std::string to_string(Cmp c) {
  switch (c) {
    case Cmp::Greater: return "greater";
    case Cmp::Equivalent: return "equivalent";
    case Cmp::NotGE: return "not-ge";
  }
  return "?";
}

TermCmp alpha_cmp() {
  return [](const Term& a, const Term& b) {
    return alpha_eq(a, b) ? Cmp::Equivalent : Cmp::NotGE;
  };
}

TermCmp subterm_cmp() {
  return [](const Term& a, const Term& b) {
    if (alpha_eq(a, b)) return Cmp::Equivalent;
    if (stable_subterm_gt(a, b)) return Cmp::Greater;
    return Cmp::NotGE;
  };
}

// ----------------------------------------------------- multiset extension ---

Cmp multiset_cmp(const TermCmp& base, const std::vector<Term>& m,
                 const std::vector<Term>& n) {
  // cancel one equivalent pair at a time; the associated equivalence of a
  // quasi-ordering is transitive, so greedy cancellation is safe
  std::vector<Term> rm = m, rn = n;
  for (size_t i = 0; i < rn.size();) {
    bool cancelled = false;
    for (size_t j = 0; j < rm.size(); ++j) {
      if (base(rm[j], rn[i]) == Cmp::Equivalent) {
        rm.erase(rm.begin() + j);
        rn.erase(rn.begin() + i);
        cancelled = true;
        break;
      }
    }
    if (!cancelled) ++i;
  }
  if (rm.empty() && rn.empty()) return Cmp::Equivalent;
  if (rm.empty()) return Cmp::NotGE;
  for (const Term& y : rn) {
    bool covered = false;
    for (const Term& x : rm)
      if (base(x, y) == Cmp::Greater) {
        covered = true;
        break;
      }
    if (!covered) return Cmp::NotGE;
  }
  return Cmp::Greater;
}

Cmp lex_cmp(const TermCmp& base, const std::vector<Term>& xs,
            const std::vector<Term>& ys) {
  if (xs.size() != ys.size()) return Cmp::NotGE;
  for (size_t i = 0; i < xs.size(); ++i) {
    Cmp c = base(xs[i], ys[i]);
    if (c == Cmp::Greater) return Cmp::Greater;
    if (c == Cmp::NotGE) return Cmp::NotGE;
  }
  return Cmp::Equivalent;
}

Cmp product_cmp(const TermCmp& base, const std::vector<Term>& xs,
                const std::vector<Term>& ys) {
  if (xs.size() != ys.size()) return Cmp::NotGE;
  bool some_strict = false;
  for (size_t i = 0; i < xs.size(); ++i) {
    Cmp c = base(xs[i], ys[i]);
    if (c == Cmp::NotGE) return Cmp::NotGE;
    if (c == Cmp::Greater) some_strict = true;
  }
  return some_strict ? Cmp::Greater : Cmp::Equivalent;
}

// ------------------------------------------------------------------ filter ---

int Filter::norm() const {
  int m = 0;
  for (int k : word) m = std::max(m, k);
  return m;
}

std::vector<Term> Filter::apply(const std::vector<Term>& args) const {
  std::vector<Term> out;
  for (int k : word) out.push_back(args.at(static_cast<size_t>(k) - 1));
  return out;
}

std::vector<Type> Filter::apply_types(const std::vector<Type>& types) const {
  std::vector<Type> out;
  for (int k : word) out.push_back(types.at(static_cast<size_t>(k) - 1));
  return out;
}

// -------------------------------------------------------------- precedence ---

void Precedence::declare_equiv(const std::string& a, const std::string& b) {
  eq_decl_.emplace_back(a, b);
  closed_ = false;
}

void Precedence::declare_greater(const std::string& a, const std::string& b) {
  gt_decl_.emplace_back(a, b);
  closed_ = false;
}

int Precedence::cls_of(const std::string& s) const {
  auto it = cls_.find(s);
  return it == cls_.end() ? -1 : it->second;
}

void Precedence::close() {
  cls_.clear();
  strict_.clear();
  next_cls_ = 0;
  // union-find over equivalence declarations
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find =
      [&](const std::string& x) -> std::string {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) {
      parent[x] = x;
      return x;
    }
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    parent[find(a)] = find(b);
  };
  for (auto& [a, b] : eq_decl_) unite(a, b);
  for (auto& [a, b] : gt_decl_) {
    find(a);
    find(b);
  }
  std::map<std::string, int> root_cls;
  for (auto& [x, _] : parent) {
    std::string r = find(x);
    if (!root_cls.count(r)) root_cls[r] = next_cls_++;
    cls_[x] = root_cls[r];
  }
  std::set<std::pair<int, int>> rel;
  for (auto& [a, b] : gt_decl_) rel.insert({cls_[a], cls_[b]});
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> cur(rel.begin(), rel.end());
    for (auto& p : cur)
      for (auto& q : cur)
        if (p.second == q.first && rel.insert({p.first, q.second}).second)
          changed = true;
  }
  for (auto& p : rel)
    if (p.first == p.second)
      throw std::runtime_error("precedence: strict part is cyclic");
  strict_ = rel;
  closed_ = true;
}

bool Precedence::equiv(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  int ca = cls_of(a), cb = cls_of(b);
  return ca >= 0 && ca == cb;
}

bool Precedence::greater(const std::string& a, const std::string& b) const {
  int ca = cls_of(a), cb = cls_of(b);
  if (ca < 0 || cb < 0) return false;
  return strict_.count({ca, cb}) > 0;
}

std::vector<std::set<std::string>> Precedence::classes(
    const std::set<std::string>& universe) const {
  std::map<int, std::set<std::string>> by_cls;
  std::vector<std::set<std::string>> out;
  for (auto& s : universe) {
    int c = cls_of(s);
    if (c < 0)
      out.push_back({s});
    else
      by_cls[c].insert(s);
  }
  for (auto& [_, members] : by_cls) out.push_back(members);
  return out;
}

// ----------------------------------------------------------------- config ---

std::string to_string(OrderFamily f) {
  switch (f) {
    case OrderFamily::SubtermMul: return "subterm-mul";
    case OrderFamily::SubtermStat: return "subterm-stat";
    case OrderFamily::StructStat: return "struct-stat";
    case OrderFamily::Aliens: return "aliens";
  }
  return "?";
}

std::optional<OrderFamily> order_family_from_string(const std::string& s) {
  if (s == "subterm-mul") return OrderFamily::SubtermMul;
  if (s == "subterm-stat") return OrderFamily::SubtermStat;
  if (s == "struct-stat") return OrderFamily::StructStat;
  if (s == "aliens") return OrderFamily::Aliens;
  return std::nullopt;
}

Filter OrderingConfig::filter_for(const std::string& f,
                                  int arity_bound) const {
  auto it = filters.find(f);
  if (it != filters.end()) return it->second;
  Filter id;
  for (int i = 1; i <= arity_bound; ++i) id.word.push_back(i);
  return id;
}

Status OrderingConfig::status_for(const std::string& f) const {
  auto it = statuses.find(f);
  if (it != statuses.end()) return it->second;
  return family == OrderFamily::SubtermMul ? Status::Mul : Status::Lex;
}

Type Call::result_type() const {
  Type t = head_type;
  for (size_t i = 0; i < args.size(); ++i) {
    if (!t.is_arrow())
      throw std::runtime_error("call with too many arguments: " + head);
    t = t.codomain();
  }
  return t;
}

bool Call::maximal() const { return result_type().is_constant(); }

Cmp status_cmp(const OrderingConfig& config, const TermCmp& base,
               const Call& c1, const Call& c2) {
  if (!c1.maximal() || !c2.maximal()) return Cmp::NotGE;
  if (config.precedence.greater(c1.head, c2.head)) return Cmp::Greater;
  if (!config.precedence.equiv(c1.head, c2.head)) return Cmp::NotGE;
  Filter f1 = config.filter_for(c1.head, static_cast<int>(c1.args.size()));
  Filter f2 = config.filter_for(c2.head, static_cast<int>(c2.args.size()));
  if (f1.norm() > static_cast<int>(c1.args.size()) ||
      f2.norm() > static_cast<int>(c2.args.size()))
    return Cmp::NotGE;  // filter out of range
  std::vector<Term> a1 = f1.apply(c1.args), a2 = f2.apply(c2.args);
  Status st = config.status_for(c1.head);
  if (st == Status::Mul) return multiset_cmp(base, a1, a2);
  return lex_cmp(base, a1, a2);
}

// -------------------------------------------------------- structural order ---

namespace {

// i-th argument of c : T1 -> ... -> Tn -> B is strictly positive when
// Ti = U1 -> ... -> Uk -> C with C ~ B and every constant of the Uj below B.
bool strictly_positive_arg(const Type& sym_type, int i,
                           const BaseOrder& base) {
  std::string b = sym_type.final_codomain().constant_name();
  Type ti = sym_type.domains().at(static_cast<size_t>(i) - 1);
  Type c = ti.final_codomain();
  if (!base.equiv(c.constant_name(), b)) return false;
  for (const Type& u : ti.domains())
    for (auto& d : u.constants())
      if (!base.less(d, b)) return false;
  return true;
}

// all terms reachable from t by >= 1 steps of strictly-positive argument
// extraction through acc_symbols
void acc_reachable(const RewriteSystem& system, const BaseOrder& base,
                   const std::set<std::string>& acc_symbols, const Term& t,
                   std::vector<Term>& out) {
  Term h = t.head();
  if (h.kind() != TermKind::Sym) return;
  if (!acc_symbols.count(h.sym_name())) return;
  const Type& ft = system.symbol_type(h.sym_name());
  auto args = t.spine_args();
  if (static_cast<int>(args.size()) != ft.arity()) return;  // need t : B
  for (size_t i = 0; i < args.size(); ++i) {
    if (!strictly_positive_arg(ft, static_cast<int>(i) + 1, base)) continue;
    out.push_back(args[i]);
    acc_reachable(system, base, acc_symbols, args[i], out);
  }
}

}  // namespace

bool struct_gt(const RewriteSystem& system, const BaseOrder& base,
               const std::set<std::string>& acc_symbols,
               const std::set<Var>& lhs_free_vars, const Term& t,
               const Term& u) {
  if (!t.well_typed() || !u.well_typed()) return false;
  if (!t.type().is_constant() || !u.type().is_constant()) return false;
  if (!base.equiv(t.type().constant_name(), u.type().constant_name()))
    return false;
  std::vector<Term> vs;
  acc_reachable(system, base, acc_symbols, t, vs);
  // u = v x1...xk with the xi variables outside FV(l)
  Term w = u;
  std::vector<Term> trail;
  while (true) {
    for (const Term& v : vs)
      if (alpha_eq(v, w)) return true;
    if (w.kind() != TermKind::App) break;
    if (w.arg().kind() != TermKind::Var) break;
    if (lhs_free_vars.count(w.arg().var())) break;
    w = w.fun();
  }
  return false;
}

// ------------------------------------------------------------ config check ---

std::vector<ConfigViolation> check_config(const RewriteSystem& system,
                                          const BaseOrder& base,
                                          const OrderingConfig& config) {
  std::vector<ConfigViolation> out;
  // filters and statuses belong to the symbols defined by rules or equations
  std::set<std::string> universe = defined_symbols(system, true);
  auto rule_arity = [&](const std::string& f) {
    return arity_sup(system, f, true);
  };
  for (auto& [f, filt] : config.filters) {
    if (!system.has_symbol(f)) {
      out.push_back({f, "filter for undeclared symbol"});
      continue;
    }
    int maxar = system.symbol_type(f).arity();
    if (filt.norm() > maxar)
      out.push_back({f, "filter position exceeds symbol arity"});
    for (int k : filt.word)
      if (k <= 0) out.push_back({f, "filter positions must be positive"});
  }
  for (auto& cls : config.precedence.classes(universe)) {
    // status and filters constant on equivalence classes
    const std::string& rep = *cls.begin();
    Status st = config.status_for(rep);
    for (auto& f : cls) {
      if (config.status_for(f) != st)
        out.push_back({f, "status differs inside equivalence class"});
    }
    if (st == Status::Lex) {
      size_t len = config.filter_for(rep, rule_arity(rep)).word.size();
      for (auto& f : cls)
        if (config.filter_for(f, rule_arity(f)).word.size() != len)
          out.push_back({f, "lex class with filters of different lengths"});
    }
    if (config.family == OrderFamily::StructStat) {
      // rank compatibility: a single constant type per multiset class, a
      // fixed constant-type sequence per lex class
      std::optional<std::vector<Type>> expected;
      for (auto& f : cls) {
        const Type& ft = system.symbol_type(f);
        Filter filt = config.filter_for(f, rule_arity(f));
        if (filt.norm() > ft.arity()) continue;  // reported above
        std::vector<Type> picked = filt.apply_types(ft.domains());
        for (const Type& t : picked)
          if (!t.is_constant())
            out.push_back({f, "filtered position of non-constant type"});
        if (st == Status::Mul) {
          for (const Type& t : picked)
            if (t.is_constant() && picked[0].is_constant() &&
                !base.equiv(t.constant_name(), picked[0].constant_name()))
              out.push_back({f, "multiset class mixes base types"});
          if (!picked.empty()) {
            if (!expected)
              expected = std::vector<Type>{picked[0]};
            else if (picked[0].is_constant() && (*expected)[0].is_constant() &&
                     !base.equiv(picked[0].constant_name(),
                                 (*expected)[0].constant_name()))
              out.push_back({f, "multiset class mixes base types"});
          }
        } else {
          if (!expected) {
            expected = picked;
          } else if (expected->size() == picked.size()) {
            for (size_t i = 0; i < picked.size(); ++i)
              if (picked[i].is_constant() && (*expected)[i].is_constant() &&
                  !base.equiv(picked[i].constant_name(),
                              (*expected)[i].constant_name()))
                out.push_back({f, "lex class mixes base type sequences"});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace hocc
