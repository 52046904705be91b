#pragma once

#include "hocc/orderings.hpp"
#include "hocc/reduction.hpp"
#include "hocc/system.hpp"

namespace hocc {

enum class CommutationStatus { ProvedBySyntacticCriterion, Unknown };

struct EquationDiagnostic {
  std::string id;
  bool regular = false;
  bool non_collapsing = false;
  bool neutral = false;
  std::string note;
};

struct AdmissibilityReport {
  bool regular = false;
  bool non_collapsing = false;
  bool neutral = false;
  CommutationStatus commutes_with_beta = CommutationStatus::Unknown;
  std::vector<EquationDiagnostic> per_equation;

  bool admissible() const {
    return regular && non_collapsing && neutral &&
           commutes_with_beta == CommutationStatus::ProvedBySyntacticCriterion;
  }
};

bool check_regular(const Equation& e);
bool check_collapsing(const Equation& e);

// Per-equation neutrality over R + E + E^-1: both sides symbol-headed and
// applied to at least the arity bound of their head, and the two heads agree
// on matched-symbol membership (so the set of neutral terms is stable under
// the equational congruence).
std::vector<EquationDiagnostic> check_neutral(const RewriteSystem& system,
                                              const BaseOrder& base);

// Linear + regular + algebraic equations commute with beta.
bool check_commutation_criterion(const std::vector<Equation>& equations);

AdmissibilityReport admissibility(const RewriteSystem& system,
                                  const BaseOrder& base);

struct EqClassResult {
  std::vector<Term> members;  // includes the start term
  bool bound_exceeded = false;
};

// All terms reachable by equational steps both ways, bounded in member count
// and per-term size.
EqClassResult eq_class(const RewriteSystem& system, const Term& t,
                       int member_bound, int size_cap);
EqClassResult eq_class(const RewriteSystem& system, const Term& t);

bool eq_equal(const RewriteSystem& system, const Term& a, const Term& b,
              int member_bound = 1000);

// Class rewriting t -> u: some t' with t =E t' and t' ->R u.
std::vector<Term> class_rewrite_reducts(const RewriteSystem& system,
                                        const Term& t, int member_bound = 1000,
                                        int size_cap = 0);

// E-alien subterms of a multiset of terms, for E a set of symbols.
std::vector<Term> aliens(const std::set<std::string>& eq_symbols,
                         const std::vector<Term>& m);

// Every equation f l = g m has f ~F g and equal alien multisets (up to alpha).
bool aliens_compatible(const RewriteSystem& system, const Precedence& prec);

// DLQO over calls: heads by precedence equivalence, then multiset comparison
// of the aliens of the arguments under (=E followed by spine-argument
// descent).
Cmp aliens_cmp(const RewriteSystem& system, const Precedence& prec,
               const Call& c1, const Call& c2, int member_bound = 1000);

}  // namespace hocc
