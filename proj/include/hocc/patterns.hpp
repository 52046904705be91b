#pragma once

#include "hocc/reduction.hpp"
#include "hocc/system.hpp"

namespace hocc {

struct PatternCheck {
  bool is_pattern = false;
  Position witness;  // failing position when not a pattern
};

// Miller-style patterns (this variant): free-variable heads applied to terms
// eta-reducing to pairwise distinct variables bound above the occurrence;
// bound-variable heads are never applied.
PatternCheck is_pattern(const Term& t);

struct InvalidValuation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Leaf positions: maximal positions under the symbol/abstraction skeleton.
std::vector<Position> leaf_positions(const Term& t);

// sigma is valid wrt t when each leaf x t1...tn has sigma(x) an n-fold
// abstraction with pairwise distinct binders.
bool subst_valid_wrt(const Substitution& sigma, const Term& t);

// The valuation beta-develops exactly the leaf applications of t.
Term valuation(const Substitution& sigma, const Term& t);

struct CompletionResult {
  std::vector<Rule> added;
  bool fixpoint_reached = true;
};

CompletionResult beta_complete(const RewriteSystem& system);
bool is_beta_complete(const RewriteSystem& system);
CompletionResult eta_complete(const RewriteSystem& system);
bool is_eta_complete(const RewriteSystem& system);
// Saturate under both completions (to the joint fixpoint).
RewriteSystem complete_beta_eta(const RewriteSystem& system);

struct NotAPattern : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matching modulo beta-eta for pattern left-hand sides: on success sigma is
// valid wrt l and eta_eq(subject, valuation(sigma, l)) holds.
std::optional<Substitution> match_modulo_betaeta(const Term& pattern,
                                                 const Term& subject);

// One-step rewriting with pattern matching modulo beta-eta.
std::vector<TraceStep> rewrite_reducts_hopm(const RewriteSystem& system,
                                            const Term& t);
std::vector<Term> one_step_hopm(const RewriteSystem& system, const Term& t);

}  // namespace hocc
