#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hocc {

// Simple types: constants and arrows. Immutable, shared, structural equality.
class Type {
 public:
  Type() = default;  // null type, only valid as a placeholder
  static Type constant(std::string name);
  static Type arrow(Type dom, Type cod);
  static Type arrow(const std::vector<Type>& doms, Type cod);

  bool null() const { return !n_; }
  bool is_constant() const;
  bool is_arrow() const;
  const std::string& constant_name() const;
  const Type& domain() const;
  const Type& codomain() const;

  // Maximal uncurrying T1 -> ... -> Tn -> B.
  std::vector<Type> domains() const;
  Type final_codomain() const;
  int arity() const { return static_cast<int>(domains().size()); }
  void collect_constants(std::set<std::string>& out) const;
  std::set<std::string> constants() const;

  bool operator==(const Type& o) const { return compare(o) == 0; }
  bool operator!=(const Type& o) const { return compare(o) != 0; }
  bool operator<(const Type& o) const { return compare(o) < 0; }
  int compare(const Type& o) const;

  std::string str() const;  // "N -> N -> O", left arrows parenthesized

 private:
  struct Node;
  std::shared_ptr<const Node> n_;
};

// A variable is a name together with its fixed simple type; two variables
// are the same iff both coincide.
struct Var {
  std::string name;
  Type type;

  bool operator==(const Var& o) const {
    return name == o.name && type == o.type;
  }
  bool operator!=(const Var& o) const { return !(*this == o); }
  bool operator<(const Var& o) const {
    if (name != o.name) return name < o.name;
    return type < o.type;
  }
};

using Position = std::string;  // word over '0'/'1'; "" is the root

struct IllTypedError : std::runtime_error {
  Position position;
  explicit IllTypedError(Position pos)
      : std::runtime_error("ill-typed application at position '" + pos + "'"),
        position(std::move(pos)) {}
};

struct BadPositionError : std::runtime_error {
  explicit BadPositionError(const Position& pos)
      : std::runtime_error("no subterm at position '" + pos + "'") {}
};

enum class TermKind { Var, Sym, Abs, App };

// Simply typed lambda-terms over a signature of typed symbols, with named
// binders. Observational identity is alpha-equivalence: every exported
// operation is alpha-invariant, position-based ones act on the stored
// representative.
class Term {
 public:
  Term() = default;  // null
  static Term var(Var v);
  static Term sym(std::string name, Type type);
  static Term abs(Var binder, Term body);
  static Term app(Term fun, Term arg);
  static Term app(Term fun, const std::vector<Term>& args);

  bool null() const { return !n_; }
  TermKind kind() const;
  const Var& var() const;
  const std::string& sym_name() const;
  const Type& sym_type() const;
  const Var& binder() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  bool well_typed() const;
  Type type() const;  // throws IllTypedError on the first bad application
  std::optional<Type> type_opt() const;
  int size() const;

  const std::vector<Var>& free_vars() const;  // sorted, cached
  bool has_free(const Var& v) const;
  std::vector<Var> bound_vars() const;  // binders of the representative

  // Application spine: head and arguments of t = h a1 ... an.
  Term head() const;
  std::vector<Term> spine_args() const;

 private:
  struct Node;
  std::shared_ptr<const Node> n_;
};

bool alpha_eq(const Term& t, const Term& u);
// Canonical serialization, identical exactly for alpha-equivalent terms.
std::string alpha_key(const Term& t);

std::string to_string(const Term& t);
std::string to_string(const Var& v);

std::vector<Position> positions(const Term& t);  // lexicographic order
Term subterm_at(const Term& t, const Position& p);
// Raw replacement at p on the stored representative: binders above p are
// kept, so free occurrences in u of variables bound above p refer to those
// binders (context filling as in rewriting). Throws IllTypedError if the
// result is not well typed, BadPositionError if p is not a position of t.
Term replace_at(const Term& t, const Position& p, const Term& u);
std::set<Var> binders_above(const Term& t, const Position& p);

// Type-preserving finite map from variables to terms.
class Substitution {
 public:
  Substitution() = default;
  static Substitution single(const Var& x, Term t);
  void bind(const Var& x, Term t);  // throws if type(t) != x.type
  const Term* lookup(const Var& x) const;
  bool empty() const { return m_.empty(); }
  const std::map<Var, Term>& map() const { return m_; }
  std::vector<Var> domain() const;
  std::set<Var> image_free_vars() const;
  bool away_from(const std::set<Var>& xs) const;

 private:
  std::map<Var, Term> m_;
};

// Capture-avoiding instantiation; bound variables are renamed
// deterministically (smallest unused numeric suffix) when needed.
Term substitute(const Term& t, const Substitution& s);

// Stable subterm ordering: t >=ss u iff u is a sub-raw-term of some
// representative of t and FV(u) is included in FV(t).
bool stable_subterm_ge(const Term& t, const Term& u);
bool stable_subterm_gt(const Term& t, const Term& u);

bool is_linear(const Term& t);
bool is_algebraic(const Term& t);
bool is_eta_long(const Term& t);

// Deterministic fresh variable: first of base, base1, base2, ... whose name
// avoids the given set.
Var fresh_var(const std::string& base, const Type& type,
              const std::set<std::string>& avoid);
std::set<std::string> all_var_names(const Term& t);

}  // namespace hocc
