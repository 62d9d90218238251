#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "privaudit/matcher.hpp"
#include "privaudit/membership.hpp"

namespace privaudit {

struct MembershipConfig {
  std::vector<double> betas{0.5, 1.0, 2.0};
  std::optional<double> t;        // explicit member prevalence, or ...
  std::optional<size_t> n;        // ... modeled as t = n/N
  std::optional<size_t> N;
  size_t attack_size = 0;         // 0 -> min(|train| + |holdout|, 10000)
  uint64_t seed = 0;
  size_t subset_min = 1;
  size_t subset_max = 0;          // 0 -> |qis|
  MatchConfig::Distance distance = MatchConfig::Distance::exact;
  int threshold = 0;
  bool scenario_b = false;        // caller asserts a cross-population narrative
  int parallelism = 0;
  size_t subset_cap = 20;
  bool allow_replacement = false;
};

struct MembershipBetaResult {
  double beta = 1;
  Score f;            // worst-case F_beta over QI subsets
  double naive = 0;   // F_naive at the modeled prevalence
  Score rel;          // (F_beta - F_naive) / (1 - F_naive)
  WorstCaseResult search;
};

struct MembershipReport {
  double t = 0;
  size_t training_size = 0;
  std::optional<size_t> population_size;
  size_t attack_size = 0;
  uint64_t seed = 0;
  std::vector<MembershipBetaResult> per_beta;
  double headline_f_rel = 0; // max F_rel across betas
  bool headline_defined = false;
  bool naive_alone_high = false; // F_naive(beta=1) >= 0.5: vulnerability
                                 // present independent of the data release
  std::vector<std::string> notes;
};

/// Membership disclosure via the partitioning method: attack set at explicit
/// prevalence t, worst-case subset search, F_beta / F_naive / F_rel per
/// configured beta weight.
inline MembershipReport membership_audit(const Dataset& train, const Dataset& holdout,
                                         const Dataset& synthetic,
                                         const std::vector<std::string>& qis,
                                         const MembershipConfig& cfg) {
  if (cfg.scenario_b)
    throw PolicyRefusal(
        "R5",
        "membership audit refused: the configured narrative has targets drawn "
        "from a different population than the training data "
        "(population-defining information). The partitioning metrics assume "
        "targets come from the training data's own population (rule R5); use "
        "the two-population simulation to explore that scenario instead");
  if (cfg.betas.empty()) throw ConfigError("membership audit: beta set is empty");
  if (qis.empty())
    throw ConfigError("membership audit: no quasi-identifiers declared (rule R1)");

  double t;
  size_t n_train = train.rows();
  std::optional<size_t> n_pop;
  if (cfg.t) {
    t = *cfg.t;
  } else if (cfg.n && cfg.N) {
    if (*cfg.N == 0 || *cfg.n > *cfg.N) throw ConfigError("need 0 < n <= N");
    t = static_cast<double>(*cfg.n) / static_cast<double>(*cfg.N);
    n_train = *cfg.n;
    n_pop = *cfg.N;
  } else {
    throw ConfigError(
        "member prevalence t must be supplied explicitly (t or n/N); the "
        "conventional t = 0.5 is not assumed because it rarely matches the "
        "sampling fraction (rule R6)");
  }

  size_t attack_size = cfg.attack_size;
  if (attack_size == 0) {
    // Default size, clamped to what the prevalence allows without replacement.
    attack_size = std::min<size_t>(train.rows() + holdout.rows(), 10000);
    if (!cfg.allow_replacement) {
      auto feasible = [&](size_t size) {
        const size_t members =
            static_cast<size_t>(std::llround(t * static_cast<double>(size)));
        return members <= train.rows() && size - members <= holdout.rows();
      };
      while (attack_size > 1 && !feasible(attack_size)) --attack_size;
    }
  }

  AttackSet attack =
      build_attack_set(train, holdout, t, attack_size, cfg.seed, cfg.allow_replacement);
  attack.training_size = n_train;
  attack.population_size = n_pop;

  SearchOptions opt;
  opt.parallelism = cfg.parallelism;
  opt.cap = cfg.subset_cap;
  opt.min_size = cfg.subset_min;
  opt.max_size = cfg.subset_max;
  opt.distance = cfg.distance;
  opt.threshold = cfg.threshold;

  // One confusion sweep serves every beta weight.
  ConfusionSweep sweep = sweep_confusions(attack, synthetic, qis, opt);

  MembershipReport report;
  report.t = t;
  report.training_size = n_train;
  report.population_size = n_pop;
  report.attack_size = attack_size;
  report.seed = cfg.seed;

  for (double beta : cfg.betas) {
    MembershipBetaResult r;
    r.beta = beta;
    r.search = reduce_sweep(sweep, beta);
    r.f = r.search.best;
    r.naive = f_naive(t, beta);
    r.rel = f_rel(r.f.value, r.naive);
    if (!r.rel.defined) report.notes.push_back("beta " + std::to_string(beta) + ": " + r.rel.flag);
    report.per_beta.push_back(std::move(r));
  }

  for (const auto& r : report.per_beta) {
    if (!r.rel.defined) continue;
    if (!report.headline_defined || r.rel.value > report.headline_f_rel) {
      report.headline_f_rel = r.rel.value;
      report.headline_defined = true;
    }
  }
  report.naive_alone_high = f_naive(t, 1.0) >= 0.5;
  if (report.naive_alone_high)
    report.notes.push_back(
        "F_naive alone is high: guessing membership already succeeds at this "
        "sampling fraction, independent of the data release");
  report.notes.push_back("generalizations not searched");
  return report;
}

} // namespace privaudit
