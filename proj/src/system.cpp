#include "hocc/system.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hocc {

const Type& RewriteSystem::symbol_type(const std::string& name) const {
  auto it = symbols.find(name);
  if (it == symbols.end())
    throw std::runtime_error("unknown symbol: " + name);
  return it->second;
}

// --------------------------------------------------------------- validate ---

namespace {

void collect_symbols(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Sym:
      out.insert(t.sym_name());
      break;
    case TermKind::Abs:
      collect_symbols(t.body(), out);
      break;
    case TermKind::App:
      collect_symbols(t.fun(), out);
      collect_symbols(t.arg(), out);
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<ValidationError> validate(const RewriteSystem& system) {
  std::vector<ValidationError> errors;
  auto check_declared = [&](const Term& t, const std::string& where) {
    std::set<std::string> syms;
    collect_symbols(t, syms);
    for (auto& s : syms)
      if (!system.has_symbol(s))
        errors.push_back({"UndeclaredSymbol", where, "undeclared symbol " + s});
  };
  auto check_pair = [&](const std::string& where, const Term& lhs,
                        const Term& rhs, bool is_rule) {
    check_declared(lhs, where);
    check_declared(rhs, where);
    if (!lhs.well_typed() || !rhs.well_typed()) {
      errors.push_back({"IllTyped", where, "side is not well typed"});
      return;
    }
    if (lhs.type() != rhs.type()) {
      errors.push_back({"IllTyped", where,
                        "types differ: " + lhs.type().str() + " vs " +
                            rhs.type().str()});
      return;
    }
    if (is_rule) {
      if (lhs.head().kind() != TermKind::Sym) {
        errors.push_back(
            {"BadLhsShape", where, "lhs must be a symbol applied to arguments"});
        return;
      }
      for (const Var& v : rhs.free_vars())
        if (!lhs.has_free(v))
          errors.push_back({"FreeVarEscape", where,
                            "variable " + v.name + " free in rhs only"});
    } else {
      if (lhs.head().kind() != TermKind::Sym ||
          rhs.head().kind() != TermKind::Sym)
        errors.push_back({"BadEquationShape", where,
                          "both sides must be symbol-headed"});
    }
  };
  for (const Rule& r : system.rules) check_pair(r.id, r.lhs, r.rhs, true);
  for (const Equation& e : system.equations)
    check_pair(e.id, e.lhs, e.rhs, false);

  std::set<std::string> defined = defined_symbols(system, false);
  for (auto& c : system.constructor_hints) {
    if (!system.has_symbol(c))
      errors.push_back({"UndeclaredSymbol", c, "constructor hint undeclared"});
    else if (defined.count(c))
      errors.push_back(
          {"ConstructorDefined", c, "hinted constructor heads a rule"});
  }
  for (auto& [name, type] : system.symbols)
    for (auto& c : type.constants())
      if (!system.type_constants.count(c))
        errors.push_back({"UndeclaredSymbol", name, "unknown sort " + c});
  return errors;
}

std::set<std::string> defined_symbols(const RewriteSystem& system,
                                      bool include_equations) {
  std::set<std::string> out;
  for (const Rule& r : system.rules) out.insert(r.lhs.head().sym_name());
  if (include_equations)
    for (const Equation& e : system.equations) {
      if (e.lhs.head().kind() == TermKind::Sym)
        out.insert(e.lhs.head().sym_name());
      if (e.rhs.head().kind() == TermKind::Sym)
        out.insert(e.rhs.head().sym_name());
    }
  return out;
}

int arity_sup(const RewriteSystem& system, const std::string& f,
              bool include_equations) {
  int sup = 0;
  auto consider = [&](const Term& lhs) {
    if (lhs.head().kind() == TermKind::Sym && lhs.head().sym_name() == f)
      sup = std::max(sup, static_cast<int>(lhs.spine_args().size()));
  };
  for (const Rule& r : system.rules) consider(r.lhs);
  if (include_equations)
    for (const Equation& e : system.equations) {
      consider(e.lhs);
      consider(e.rhs);
    }
  return sup;
}

// -------------------------------------------------------------- base order ---

BaseOrder BaseOrder::discrete(const std::set<std::string>& constants) {
  std::vector<std::set<std::string>> classes;
  for (auto& c : constants) classes.push_back({c});
  return make(classes, {});
}

BaseOrder BaseOrder::make(const std::vector<std::set<std::string>>& classes,
                          const std::vector<std::pair<int, int>>& strict) {
  BaseOrder b;
  b.cls_ = classes;
  for (size_t i = 0; i < classes.size(); ++i)
    for (auto& c : classes[i]) b.idx_[c] = static_cast<int>(i);
  // transitive closure
  std::set<std::pair<int, int>> rel(strict.begin(), strict.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& p : std::vector<std::pair<int, int>>(rel.begin(), rel.end()))
      for (auto& q : std::vector<std::pair<int, int>>(rel.begin(), rel.end()))
        if (p.second == q.first && rel.insert({p.first, q.second}).second)
          changed = true;
  }
  for (auto& p : rel)
    if (p.first == p.second)
      throw std::runtime_error("base order: strict part is cyclic");
  b.strict_ = rel;
  return b;
}

int BaseOrder::class_of(const std::string& c) const {
  auto it = idx_.find(c);
  if (it == idx_.end()) return -1;
  return it->second;
}

bool BaseOrder::equiv(const std::string& a, const std::string& b) const {
  int ca = class_of(a), cb = class_of(b);
  return ca >= 0 && ca == cb;
}

bool BaseOrder::less(const std::string& a, const std::string& b) const {
  int ca = class_of(a), cb = class_of(b);
  if (ca < 0 || cb < 0) return false;
  return strict_.count({ca, cb}) > 0;
}

bool BaseOrder::leq(const std::string& a, const std::string& b) const {
  return equiv(a, b) || less(a, b);
}

std::string BaseOrder::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < cls_.size(); ++i) {
    if (i) os << "; ";
    bool first = true;
    for (auto& c : cls_[i]) {
      if (!first) os << " ~ ";
      os << c;
      first = false;
    }
  }
  std::vector<std::pair<int, int>> covers(strict_.begin(), strict_.end());
  for (auto& [a, b] : covers) {
    os << "; " << *cls_[a].begin() << " < " << *cls_[b].begin();
  }
  return os.str();
}

// -------------------------------------------------------------- positivity ---

namespace {

void pos_rec(const Type& t, const Position& cur, bool positive,
             std::set<Position>& out) {
  if (t.is_constant()) {
    if (positive) out.insert(cur);
    return;
  }
  pos_rec(t.domain(), cur + "0", !positive, out);
  pos_rec(t.codomain(), cur + "1", positive, out);
}

}  // namespace

std::set<Position> positive_positions(const Type& t) {
  std::set<Position> out;
  pos_rec(t, "", true, out);
  return out;
}

std::set<Position> negative_positions(const Type& t) {
  std::set<Position> out;
  pos_rec(t, "", false, out);
  return out;
}

std::set<Position> const_positions(const std::string& constant,
                                   const Type& t) {
  std::set<Position> out;
  std::function<void(const Type&, const Position&)> rec =
      [&](const Type& ty, const Position& cur) {
        if (ty.is_constant()) {
          if (ty.constant_name() == constant) out.insert(cur);
          return;
        }
        rec(ty.domain(), cur + "0");
        rec(ty.codomain(), cur + "1");
      };
  rec(t, "");
  return out;
}

std::vector<int> accessible_args(const Type& symbol_type,
                                 const BaseOrder& base) {
  std::vector<int> out;
  std::string b = symbol_type.final_codomain().constant_name();
  auto doms = symbol_type.domains();
  for (size_t i = 0; i < doms.size(); ++i) {
    bool ok = true;
    std::set<Position> pos = positive_positions(doms[i]);
    for (auto& c : doms[i].constants()) {
      if (base.less(c, b)) continue;
      if (base.equiv(c, b)) {
        std::set<Position> occ = const_positions(c, doms[i]);
        if (std::includes(pos.begin(), pos.end(), occ.begin(), occ.end()))
          continue;
      }
      ok = false;
      break;
    }
    if (ok) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

// ---------------------------------------------------------- matched symbols ---

std::set<std::string> matched_symbols(const RewriteSystem& system,
                                      const BaseOrder& base,
                                      bool include_equations) {
  std::set<std::string> occurring;
  auto consider = [&](const Term& lhs) {
    for (const Term& arg : lhs.spine_args()) collect_symbols(arg, occurring);
  };
  for (const Rule& r : system.rules) consider(r.lhs);
  if (include_equations)
    for (const Equation& e : system.equations) {
      consider(e.lhs);
      consider(e.rhs);
    }
  std::set<std::string> out;
  for (auto& f : occurring)
    if (!accessible_args(system.symbol_type(f), base).empty()) out.insert(f);
  return out;
}

// ------------------------------------------------------ standard inductive ---

std::optional<StdIndViolation> standard_inductive_violation(
    const RewriteSystem& system, const BaseOrder& base) {
  std::set<std::string> defined = defined_symbols(system, false);
  for (auto& [name, type] : system.symbols) {
    if (defined.count(name)) continue;
    auto doms = type.domains();
    auto acc = accessible_args(type, base);
    for (size_t i = 0; i < doms.size(); ++i)
      if (std::find(acc.begin(), acc.end(), static_cast<int>(i) + 1) ==
          acc.end())
        return StdIndViolation{name, static_cast<int>(i) + 1};
  }
  return std::nullopt;
}

bool is_standard_inductive(const RewriteSystem& system,
                           const BaseOrder& base) {
  return !standard_inductive_violation(system, base).has_value();
}

namespace {

// Strongly connected components of the constant dependency graph, by simple
// reachability (constant sets are tiny).
BaseOrder scc_base_order(const RewriteSystem& system) {
  std::vector<std::string> consts(system.type_constants.begin(),
                                  system.type_constants.end());
  std::map<std::string, int> id;
  for (size_t i = 0; i < consts.size(); ++i) id[consts[i]] = (int)i;
  size_t n = consts.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  std::set<std::string> defined = defined_symbols(system, false);
  for (auto& [name, type] : system.symbols) {
    if (defined.count(name)) continue;
    std::string b = type.final_codomain().constant_name();
    if (!id.count(b)) continue;
    for (auto& dom : type.domains())
      for (auto& c : dom.constants())
        if (id.count(c)) reach[id[b]][id[c]] = true;
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  // classes: mutual reachability (or identity)
  std::vector<int> cls(n, -1);
  std::vector<std::set<std::string>> classes;
  for (size_t i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    int c = static_cast<int>(classes.size());
    classes.push_back({consts[i]});
    cls[i] = c;
    for (size_t j = i + 1; j < n; ++j)
      if (cls[j] < 0 && reach[i][j] && reach[j][i]) {
        cls[j] = c;
        classes[c].insert(consts[j]);
      }
  }
  std::vector<std::pair<int, int>> strict;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (reach[i][j] && cls[i] != cls[j]) strict.push_back({cls[j], cls[i]});
  return BaseOrder::make(classes, strict);
}

// All partitions of [0..n) as class index vectors, in a stable order.
void partitions_rec(size_t i, size_t n, int max_cls, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (int c = 0; c <= max_cls; ++c) {
    cur[i] = c;
    partitions_rec(i + 1, n, c == max_cls ? max_cls + 1 : max_cls, cur, out);
  }
}

}  // namespace

BaseOrderResult infer_base_order(const RewriteSystem& system) {
  BaseOrderResult res;
  BaseOrder scc = scc_base_order(system);
  auto viol = standard_inductive_violation(system, scc);
  if (!viol) {
    res.order = scc;
    return res;
  }
  res.violation = viol;
  // exhaustive fallback over partitions and linear orders of classes
  std::vector<std::string> consts(system.type_constants.begin(),
                                  system.type_constants.end());
  size_t n = consts.size();
  if (n > 6) return res;
  std::vector<std::vector<int>> parts;
  std::vector<int> cur(n, 0);
  if (n > 0) partitions_rec(0, n, 0, cur, parts);
  for (auto& part : parts) {
    int k = 1 + *std::max_element(part.begin(), part.end());
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    do {
      // perm gives a linear order on classes: perm[0] smallest
      std::vector<std::set<std::string>> classes(k);
      for (size_t i = 0; i < n; ++i) classes[part[i]].insert(consts[i]);
      std::vector<std::pair<int, int>> strict;
      std::vector<int> rank(k);
      for (int i = 0; i < k; ++i) rank[perm[i]] = i;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          if (rank[a] < rank[b]) strict.push_back({a, b});
      BaseOrder cand = BaseOrder::make(classes, strict);
      if (is_standard_inductive(system, cand)) {
        res.order = cand;
        res.violation.reset();
        return res;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return res;
}

// ------------------------------------------------------------- basic types ---

bool is_basic_class(const RewriteSystem& system, const BaseOrder& base,
                    const std::string& constant, bool include_equations) {
  std::set<std::string> matched =
      matched_symbols(system, base, include_equations);
  // memo per class index; recursion is well-founded along the strict order
  std::map<int, int> memo;  // -1 in progress, 0 false, 1 true
  std::function<bool(int)> basic = [&](int cls) -> bool {
    auto it = memo.find(cls);
    if (it != memo.end()) return it->second == 1;
    memo[cls] = -1;
    bool ok = true;
    const auto& members = base.classes()[cls];
    for (auto& b : members) {
      if (!ok) break;
      for (auto& f : matched) {
        const Type& ft = system.symbol_type(f);
        if (ft.final_codomain().constant_name() != b) continue;
        auto doms = ft.domains();
        for (int i : accessible_args(ft, base)) {
          const Type& ti = doms[i - 1];
          if (!ti.is_constant()) {
            ok = false;
            break;
          }
          const std::string& c = ti.constant_name();
          if (members.count(c)) continue;
          if (base.less(c, b) && basic(base.class_of(c))) continue;
          ok = false;
          break;
        }
        if (!ok) break;
      }
    }
    memo[cls] = ok ? 1 : 0;
    return ok;
  };
  int cls = base.class_of(constant);
  if (cls < 0) return false;
  return basic(cls);
}

}  // namespace hocc
