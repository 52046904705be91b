#pragma once

#include <variant>

#include "hocc/equational.hpp"
#include "hocc/orderings.hpp"
#include "hocc/patterns.hpp"
#include "hocc/reduction.hpp"
#include "hocc/system.hpp"

#include "json.hpp"

namespace hocc {

using ordered_json = nlohmann::ordered_json;

enum class Interp { Basic, Accessible };
enum class Mode { Plain, Modulo, HopmBetaEta };

std::string to_string(Interp i);
std::string to_string(Mode m);

struct CheckerConfig {
  Interp interpretation = Interp::Basic;
  Mode mode = Mode::Plain;
  OrderingConfig ordering;
  int max_depth = 64;
  int red_fuel = 3;       // forward (red)/(mod) closure depth
  int reach_fuel = 8;     // ->* approximation inside ordering comparisons
  int eq_member_bound = 1000;
  bool assume_commutation = false;
};

// One derivation node; children prove the premises of the named operation.
struct DerivNode {
  std::string op;
  Term goal;
  ordered_json params;  // operation-specific instantiation data
  std::vector<DerivNode> children;
};

struct GoalFailure {
  std::vector<Term> frontier;
  bool depth_exceeded = false;
};

enum class Verdict { Yes, Maybe };
std::string to_string(Verdict v);

struct RuleReport {
  std::string id;
  bool in_closure = false;
  std::optional<DerivNode> derivation;
  std::vector<std::string> failed_goals;
  std::vector<std::string> ops_used;
};

struct EquationReport {
  std::string id;
  bool ok = false;
  // derivations for every m_i in CC_f(l) and every l_i in CC_g(m)
  std::vector<DerivNode> forward, backward;
  bool calls_equivalent = false;
  std::vector<std::string> failed_goals;
};

struct Report {
  Verdict verdict = Verdict::Maybe;
  std::vector<RuleReport> rules;
  std::vector<EquationReport> equations;
  std::vector<std::string> diagnostics;
  std::optional<AdmissibilityReport> admissibility;
  bool conditional_on_commutation = false;
};

// Shared per-system analysis context for the engine and the verifier.
struct Analyses {
  BaseOrder base;
  bool standard_inductive = false;
  std::set<std::string> defined;           // D over rules + equations
  std::set<std::string> matched;           // M over rules + equations
  std::set<std::string> acc_symbols;       // matched + undefined
  std::map<std::string, int> arity;        // over rules + equations
  std::map<std::string, bool> basic;       // per type constant

  static Analyses build(const RewriteSystem& system, const Mode mode);
  bool is_basic(const std::string& constant) const;
};

// Strict decrease of calls in rule (rec) under the configured family.
bool rec_decrease(const RewriteSystem& system, const Analyses& an,
                  const CheckerConfig& config, const std::set<Var>& lhs_fvs,
                  const Call& c1, const Call& c2);

class ClosureChecker {
 public:
  ClosureChecker(const RewriteSystem& system, const CheckerConfig& config);

  const Analyses& analyses() const { return an_; }

  // r in CC_f(l)? Search over the closure operations enabled by the config.
  std::variant<DerivNode, GoalFailure> in_closure(const std::string& head,
                                                  const std::vector<Term>& lhs_args,
                                                  const Term& target);

 private:
  struct KEntry {
    Term term;
    DerivNode deriv;
  };

  const RewriteSystem& system_;
  CheckerConfig config_;
  Analyses an_;
  // per-goal-context state
  std::vector<Term> lhs_args_;
  std::string head_;
  std::set<Var> lhs_fvs_;
  std::vector<KEntry> known_;
  std::map<std::string, size_t> known_index_;   // alpha key -> entry
  std::map<std::string, size_t> known_eta_;     // eta-nf alpha key -> entry
  std::map<std::string, std::optional<DerivNode>> memo_;
  std::set<std::string> in_progress_;
  bool depth_exceeded_ = false;
  std::vector<Term> frontier_;

  void seed_known();
  void add_known(Term t, DerivNode d);
  const KEntry* find_known(const Term& t) const;
  std::vector<Term> one_step(const Term& t) const;
  std::optional<DerivNode> prove(const Term& goal, int depth);
};

Report check_system(const RewriteSystem& system, const CheckerConfig& config);

struct AutoResult {
  std::optional<CheckerConfig> config;
  Report report;
};

AutoResult auto_search(const RewriteSystem& system, Mode mode,
                       const OrderingConfig& hint, bool assume_commutation);

// ----------------------------------------------------------- certificates ---

ordered_json term_to_json(const Term& t);
Term term_from_json(const RewriteSystem& system, const ordered_json& j);
ordered_json config_to_json(const CheckerConfig& config);
CheckerConfig config_from_json(const RewriteSystem& system,
                               const ordered_json& j);
ordered_json deriv_to_json(const DerivNode& n);
DerivNode deriv_from_json(const RewriteSystem& system, const ordered_json& j);

ordered_json certificate_json(const RewriteSystem& system,
                              const CheckerConfig& config,
                              const Report& report);

struct VerifyResult {
  bool ok = true;
  std::string failure;  // description of the first failing node
};

// Re-checks every node's side conditions from scratch.
VerifyResult verify_certificate(const RewriteSystem& system,
                                const ordered_json& cert);
VerifyResult verify_certificate(const RewriteSystem& system,
                                const CheckerConfig& config,
                                const ordered_json& cert);

// Verify one derivation in context (f, lhs_args); used for stability checks.
VerifyResult verify_derivation(const RewriteSystem& system,
                               const CheckerConfig& config,
                               const std::string& head,
                               const std::vector<Term>& lhs_args,
                               const Term& expected_goal, const DerivNode& d);

DerivNode substitute_derivation(const DerivNode& d, const Substitution& sigma);

}  // namespace hocc
