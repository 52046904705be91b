#pragma once

#include <functional>
#include <optional>

#include "hocc/system.hpp"
#include "hocc/term.hpp"

namespace hocc {

enum class ReductionKind { Beta, Eta, Beta0, Rule };

struct TraceStep {
  ReductionKind kind;
  std::string rule_id;  // for Rule steps
  Position position;
  Term result;
};

std::string to_string(const TraceStep& s);

// One-step beta reducts with their redex positions, lexicographic by position.
std::vector<std::pair<Position, Term>> beta_reducts(const Term& t);
// Beta steps whose argument is a variable of the binder's type.
std::vector<std::pair<Position, Term>> beta0_reducts(const Term& t);
std::vector<std::pair<Position, Term>> eta_reducts(const Term& t);

Term beta_contract(const Term& redex);  // (\x. a) b  ->  a[x := b]

Term eta_normal_form(const Term& t);
bool eta_eq(const Term& t, const Term& u);
// eta-expand to at least n leading abstractions (type permitting)
Term eta_expand_prefix(const Term& t, int n);

// Syntactic matching modulo alpha: sigma with dom(sigma) in
// FV(pattern) \ protected_vars and pattern.sigma alpha-equal to subject.
// Variables in protected_vars are rigid, and no binding image may mention a
// variable bound inside the pattern.
std::optional<Substitution> match_alpha(const Term& pattern,
                                        const Term& subject,
                                        const std::set<Var>& protected_vars);

// All one-step rewrite reducts by matching modulo alpha, positions
// lexicographic, rules in declaration order.
std::vector<TraceStep> rewrite_reducts(const RewriteSystem& system,
                                       const Term& t);

enum class Strategy { Leftmost, Full };

struct NormalizeResult {
  Term result;  // null when fuel ran out
  bool fuel_exhausted = false;
  std::vector<TraceStep> trace;
};

// Normal form of t under beta plus the system rules, within fuel steps.
NormalizeResult normalize(const RewriteSystem& system, const Term& t, int fuel,
                          Strategy strategy);

using OneStepFn = std::function<std::vector<Term>(const Term&)>;

// beta + R one-step reducts (used as the default reduction relation)
std::vector<Term> one_step_beta_r(const RewriteSystem& system, const Term& t);

}  // namespace hocc
