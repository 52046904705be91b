#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hocc/term.hpp"

namespace hocc {

struct Rule {
  std::string id;
  Term lhs, rhs;
};

struct Equation {
  std::string id;
  Term lhs, rhs;
};

struct RewriteSystem {
  std::set<std::string> type_constants;
  std::map<std::string, Type> symbols;
  std::set<std::string> constructor_hints;
  std::map<std::string, Type> declared_vars;
  std::vector<Rule> rules;
  std::vector<Equation> equations;

  bool has_symbol(const std::string& name) const {
    return symbols.count(name) > 0;
  }
  const Type& symbol_type(const std::string& name) const;
};

struct ValidationError {
  std::string code;  // IllTyped | BadLhsShape | FreeVarEscape |
                     // UndeclaredSymbol | ConstructorDefined | TypeMismatch
  std::string where;
  std::string message;
};

std::vector<ValidationError> validate(const RewriteSystem& system);

// D(R), optionally over R + E + E^-1.
std::set<std::string> defined_symbols(const RewriteSystem& system,
                                      bool include_equations);
// sup of lhs argument counts for f; 0 when f heads no rule.
int arity_sup(const RewriteSystem& system, const std::string& f,
              bool include_equations);

// Well-founded quasi-ordering on type constants: equivalence classes plus a
// strict order between classes (transitively closed).
class BaseOrder {
 public:
  static BaseOrder discrete(const std::set<std::string>& constants);
  // classes: partition; strict: pairs (a, b) meaning a < b, closed
  // transitively by the constructor.
  static BaseOrder make(const std::vector<std::set<std::string>>& classes,
                        const std::vector<std::pair<int, int>>& strict);

  bool equiv(const std::string& a, const std::string& b) const;
  bool less(const std::string& a, const std::string& b) const;  // a < b
  bool leq(const std::string& a, const std::string& b) const;
  int class_of(const std::string& c) const;
  const std::vector<std::set<std::string>>& classes() const { return cls_; }
  std::string str() const;

 private:
  std::vector<std::set<std::string>> cls_;
  std::map<std::string, int> idx_;
  std::set<std::pair<int, int>> strict_;  // class-level, transitive
};

// Symbols occurring inside an argument of some left-hand side (equations
// count in both directions when included) whose accessible-argument set is
// non-empty.
std::set<std::string> matched_symbols(const RewriteSystem& system,
                                      const BaseOrder& base,
                                      bool include_equations);

std::set<Position> positive_positions(const Type& t);
std::set<Position> negative_positions(const Type& t);
std::set<Position> const_positions(const std::string& constant, const Type& t);

// Acc(f) for f : T1 -> ... -> Tn -> B (maximal uncurrying): the 1-based
// indices i such that every constant C of Ti has C < B, or C ~ B and C occurs
// only positively in Ti.
std::vector<int> accessible_args(const Type& symbol_type,
                                 const BaseOrder& base);

struct StdIndViolation {
  std::string constructor;
  int arg = 0;  // 1-based
};

// Checks Def. of standard inductive systems over all undefined symbols.
std::optional<StdIndViolation> standard_inductive_violation(
    const RewriteSystem& system, const BaseOrder& base);
bool is_standard_inductive(const RewriteSystem& system, const BaseOrder& base);

struct BaseOrderResult {
  std::optional<BaseOrder> order;
  std::optional<StdIndViolation> violation;  // set when no order exists
};

// Infers a base order making the system standard inductive: SCCs of the type
// dependency graph first, full search over small constant sets as fallback.
BaseOrderResult infer_base_order(const RewriteSystem& system);

bool is_basic_class(const RewriteSystem& system, const BaseOrder& base,
                    const std::string& constant, bool include_equations);

}  // namespace hocc
