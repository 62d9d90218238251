#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "privaudit/errors.hpp"
#include "privaudit/membership.hpp"

namespace privaudit {

/// The consensus rule set the decision engine implements. The summaries are
/// surfaced in reports and error messages so a decision is always traceable
/// to the rule behind it.
struct PolicyRule {
  const char* id;
  const char* summary;
};

inline constexpr PolicyRule kPolicyRules[] = {
    {"R1", "compute disclosure metrics over quasi-identifiers ascertained by the "
           "data controller, searching their subset combinations"},
    {"R2", "report metrics for individual synthetic datasets and aggregated "
           "across several datasets from the same generator"},
    {"R3", "compute vulnerability over all records, never a pre-selected "
           "'vulnerable' subset"},
    {"R4", "stand-alone similarity metrics should not be used to report privacy "
           "in synthetic data"},
    {"R5", "membership audits assume targets drawn from the same population as "
           "the training data; refuse other narratives"},
    {"R6", "membership vulnerability is reported relative to a naive guess at "
           "the modeled member prevalence"},
    {"R7", "relative membership score anchor 0.2: a suggested anchor, not a "
           "validated threshold; adjust only with justification"},
    {"R8", "attribute disclosure applies to members; accurate prediction on "
           "non-members is knowledge generation"},
    {"R9", "attribute disclosure is measured against a non-member (holdout) "
           "baseline"},
    {"R10", "relative attribute vulnerability is high only when absolute member "
            "accuracy is also high"},
    {"R11", "a privacy budget not close to zero is not an adequate vulnerability "
            "metric; run the empirical audits regardless"},
};

inline const PolicyRule& policy_rule(const std::string& id) {
  for (const auto& r : kPolicyRules)
    if (id == r.id) return r;
  throw ConfigError("unknown policy rule: " + id);
}

/// Signed threshold delta; rejected without a justification (anchors invite
/// uncritical reliance, so every move away from a default is documented).
struct ThresholdAdjustment {
  std::string target; // f_rel_anchor | a_rel | a_abs | epsilon_near_zero
  double delta = 0;
  std::string justification;
};

struct Thresholds {
  double f_rel_anchor = 0.2;     // suggested anchor, not a validated threshold
  double a_rel = 0.15;
  double a_abs = 0.6;
  double epsilon_near_zero = 0.1;
  std::vector<ThresholdAdjustment> adjustments;

  /// Applies the adjustments; validates justifications and the [0,1] range.
  Thresholds effective() const {
    Thresholds out = *this;
    out.adjustments.clear();
    for (const auto& adj : adjustments) {
      if (adj.justification.empty())
        throw ConfigError("threshold adjustment for " + adj.target +
                          " rejected: a nonempty justification is required (rule R7)");
      double* slot = nullptr;
      if (adj.target == "f_rel_anchor") slot = &out.f_rel_anchor;
      else if (adj.target == "a_rel") slot = &out.a_rel;
      else if (adj.target == "a_abs") slot = &out.a_abs;
      else if (adj.target == "epsilon_near_zero") slot = &out.epsilon_near_zero;
      else throw ConfigError("unknown threshold adjustment target: " + adj.target);
      *slot += adj.delta;
      if (*slot < 0.0 || *slot > 1.0)
        throw ConfigError("adjusted threshold " + adj.target + " leaves [0,1]");
    }
    return out;
  }
};

enum class MembershipOutcome { acceptable, high, not_evaluable };

inline const char* to_string(MembershipOutcome o) {
  switch (o) {
    case MembershipOutcome::acceptable: return "acceptable";
    case MembershipOutcome::high: return "high";
    default: return "not-evaluable";
  }
}

struct MembershipDecision {
  MembershipOutcome outcome = MembershipOutcome::not_evaluable;
  double anchor = 0.2;
  std::string note;
};

/// Acceptable iff F_rel <= anchor (boundary inclusive). An undefined F_rel
/// (naive guess saturated) cannot be decided by the anchor; the note carries
/// the reason.
inline MembershipDecision decide_membership(const Score& f_rel_score,
                                            const Thresholds& thresholds) {
  Thresholds eff = thresholds.effective();
  MembershipDecision d;
  d.anchor = eff.f_rel_anchor;
  if (!f_rel_score.defined) {
    d.outcome = MembershipOutcome::not_evaluable;
    d.note = "F_rel undefined (" + f_rel_score.flag +
             "); membership vulnerability is saturated by the naive guess and "
             "is independent of the data release";
    return d;
  }
  d.outcome = f_rel_score.value <= eff.f_rel_anchor ? MembershipOutcome::acceptable
                                                    : MembershipOutcome::high;
  return d;
}

inline MembershipDecision decide_membership(double f_rel_value,
                                            const Thresholds& thresholds) {
  return decide_membership(Score{f_rel_value, true, false, ""}, thresholds);
}

/// Budgets beyond every "acceptable" value cited in applied work get an extra
/// large-budget flag on top of requiring empirical evaluation.
inline constexpr double kLargeEpsilon = 10.0;

struct EpsilonReport {
  double epsilon = 0;
  double gain = 1;               // e^epsilon
  bool interpretable = false;    // epsilon <= near-zero bound
  bool large_budget = false;     // epsilon > kLargeEpsilon
  std::string classification;    // "interpretable" | "requires-empirical-evaluation"
  std::string note;
};

/// gain = e^eps. Classification is monotone in eps: interpretable up to the
/// configured near-zero bound, empirical evaluation required above it.
inline EpsilonReport epsilon_check(double eps, const Thresholds& thresholds = {}) {
  if (eps < 0) throw ConfigError("epsilon must be non-negative");
  Thresholds eff = thresholds.effective();
  EpsilonReport r;
  r.epsilon = eps;
  r.gain = std::exp(eps);
  r.interpretable = eps <= eff.epsilon_near_zero;
  r.large_budget = eps > kLargeEpsilon;
  r.classification = r.interpretable ? "interpretable" : "requires-empirical-evaluation";
  if (!r.interpretable)
    r.note = "privacy budget is not close to zero; the budget alone is not an "
             "adequate vulnerability metric. Evaluate the released data with "
             "the membership and attribute audits (rule R11)";
  return r;
}

/// pr(disclosure, attempt) = pr(disclosure | attempt) * pr(attempt).
/// Composes user-supplied numbers only; estimating pr(attempt) is out of scope.
inline double overall_risk(double vulnerability, double attempt) {
  if (vulnerability < 0 || vulnerability > 1)
    throw ConfigError("vulnerability must be in [0,1]");
  if (attempt < 0 || attempt > 1) throw ConfigError("attempt probability must be in [0,1]");
  return vulnerability * attempt;
}

} // namespace privaudit
