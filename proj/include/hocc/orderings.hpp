#pragma once

#include <functional>

#include "hocc/system.hpp"
#include "hocc/term.hpp"

namespace hocc {

// Three-valued comparison result of a quasi-ordering: NotGE covers both
// "strictly smaller" and "incomparable".
enum class Cmp { Greater, Equivalent, NotGE };

std::string to_string(Cmp c);

using TermCmp = std::function<Cmp(const Term&, const Term&)>;

TermCmp alpha_cmp();                 // Equivalent iff alpha-equal
TermCmp subterm_cmp();               // strict part: proper stable subterm

Cmp multiset_cmp(const TermCmp& base, const std::vector<Term>& m,
                 const std::vector<Term>& n);
Cmp lex_cmp(const TermCmp& base, const std::vector<Term>& xs,
            const std::vector<Term>& ys);
Cmp product_cmp(const TermCmp& base, const std::vector<Term>& xs,
                const std::vector<Term>& ys);

// Argument filter: a word of 1-based argument positions.
struct Filter {
  std::vector<int> word;
  int norm() const;  // ||phi|| = max(0, word...)
  std::vector<Term> apply(const std::vector<Term>& args) const;
  std::vector<Type> apply_types(const std::vector<Type>& types) const;
};

enum class Status { Lex, Mul };

// Quasi-ordering on function symbols; strict part acyclic.
class Precedence {
 public:
  void declare_equiv(const std::string& a, const std::string& b);
  void declare_greater(const std::string& a, const std::string& b);  // a > b
  // Rebuilds classes and checks acyclicity; throws on a cycle.
  void close();
  bool equiv(const std::string& a, const std::string& b) const;
  bool greater(const std::string& a, const std::string& b) const;
  std::vector<std::set<std::string>> classes(
      const std::set<std::string>& universe) const;
  const std::vector<std::pair<std::string, std::string>>& greater_pairs()
      const {
    return gt_decl_;
  }
  const std::vector<std::pair<std::string, std::string>>& equiv_pairs() const {
    return eq_decl_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> eq_decl_, gt_decl_;
  std::map<std::string, int> cls_;
  std::set<std::pair<int, int>> strict_;
  int cls_of(const std::string& s) const;
  int next_cls_ = 0;
  bool closed_ = false;
};

enum class OrderFamily { SubtermMul, SubtermStat, StructStat, Aliens };

std::string to_string(OrderFamily f);
std::optional<OrderFamily> order_family_from_string(const std::string& s);

struct OrderingConfig {
  OrderFamily family = OrderFamily::SubtermStat;
  Precedence precedence;
  std::map<std::string, Filter> filters;
  std::map<std::string, Status> statuses;

  // Defaults: identity filter up to the arity bound, lexicographic status.
  Filter filter_for(const std::string& f, int arity_bound) const;
  Status status_for(const std::string& f) const;
};

// A function call (f, args); comparisons only relate maximally applied calls.
struct Call {
  std::string head;
  Type head_type;
  std::vector<Term> args;

  Type result_type() const;
  bool maximal() const;  // result type is a constant
};

// Status DLQO: precedence first, then filtered arguments by the class status.
// Non-maximal calls compare NotGE. Throws nothing; a filter out of range
// yields NotGE.
Cmp status_cmp(const OrderingConfig& config, const TermCmp& base,
               const Call& c1, const Call& c2);

// Structural subterm ordering t >ss^{f l} u: descent through strictly
// positive arguments of symbols in acc_symbols, then application to
// variables outside FV(l).
bool struct_gt(const RewriteSystem& system, const BaseOrder& base,
               const std::set<std::string>& acc_symbols,
               const std::set<Var>& lhs_free_vars, const Term& t,
               const Term& u);

struct ConfigViolation {
  std::string symbol;
  std::string clause;
};

std::vector<ConfigViolation> check_config(const RewriteSystem& system,
                                          const BaseOrder& base,
                                          const OrderingConfig& config);

}  // namespace hocc
