#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "privaudit/equivalence.hpp"
#include "privaudit/membership.hpp"
#include "privaudit/sampling.hpp"

namespace privaudit {

/// What happens to an attack record with no exact key match in the synthetic
/// data: count as accuracy 0, leave undefined, or iteratively drop the last
/// key until a match pool exists.
enum class NonMatchPolicy { zero, undefined, key_drop };

enum class MeasurementKind { exact, auroc, numeric_tolerance };

inline const char* to_string(NonMatchPolicy p) {
  switch (p) {
    case NonMatchPolicy::zero: return "zero";
    case NonMatchPolicy::undefined: return "undefined";
    default: return "key-drop";
  }
}

inline const char* to_string(MeasurementKind k) {
  switch (k) {
    case MeasurementKind::exact: return "exact";
    case MeasurementKind::auroc: return "auroc";
    default: return "numeric-tolerance";
  }
}

struct Measurement {
  MeasurementKind kind = MeasurementKind::exact;
  double tolerance = 0;        // numeric_tolerance: absolute tolerance on the target
  std::string positive_label;  // auroc: the positive class
};

struct PredictionOutcome {
  std::vector<double> correctness;       // in [0,1] where defined
  std::vector<uint8_t> defined;
  std::vector<size_t> match_count;
  std::vector<size_t> keys_used;         // after key-drop; == |keys| otherwise
  std::vector<double> positive_fraction; // auroc only: score per record
};

/// Nearest-neighbor prediction by exact match on `keys`: the pool of matching
/// synthetic records predicts the target. With several matches, correctness
/// is the fraction of the pool agreeing with the truth (per-record CAP form).
inline PredictionOutcome nn_predict(const Dataset& synthetic,
                                    const std::vector<std::string>& keys,
                                    const std::string& target, const Dataset& attack,
                                    NonMatchPolicy policy,
                                    const Measurement& meas = {}) {
  if (synthetic.rows() == 0) throw ConfigError("nn_predict: synthetic dataset is empty");
  if (keys.empty()) throw ConfigError("nn_predict: key attribute list is empty");
  for (const auto& k : keys) {
    if (k == target) throw ConfigError("nn_predict: target cannot also be a key");
    synthetic.require_attr(k);
    attack.require_attr(k);
  }
  const size_t synth_target = static_cast<size_t>(synthetic.require_attr(target));
  const size_t attack_target = static_cast<size_t>(attack.require_attr(target));

  const bool numeric = meas.kind == MeasurementKind::numeric_tolerance;
  if (numeric) {
    synthetic.continuous(synth_target);
    attack.continuous(attack_target);
  }

  // Shared target encoding for categorical targets.
  std::vector<int32_t> synth_tgt, attack_tgt;
  int32_t positive_code = -1;
  if (!numeric) {
    detail::SharedEncoder tenc({target});
    synth_tgt = tenc.encode(synthetic)[0];
    attack_tgt = tenc.encode(attack)[0];
    if (meas.kind == MeasurementKind::auroc) {
      if (meas.positive_label.empty())
        throw ConfigError("auroc measurement requires a positive label");
      // Locate the shared code of the positive label via any row carrying it.
      for (size_t r = 0; r < synthetic.rows() && positive_code < 0; ++r)
        if (synthetic.categorical(synth_target).label_at(r) == meas.positive_label)
          positive_code = synth_tgt[r];
      for (size_t r = 0; r < attack.rows() && positive_code < 0; ++r)
        if (attack.categorical(attack_target).label_at(r) == meas.positive_label)
          positive_code = attack_tgt[r];
      if (positive_code < 0)
        throw ConfigError("positive label \"" + meas.positive_label +
                          "\" not present in the target attribute");
    }
  }

  // Key groups per drop level, built lazily. Level L uses the first L keys.
  detail::SharedEncoder kenc(keys);
  auto synth_keys = kenc.encode(synthetic);
  auto attack_keys = kenc.encode(attack);
  std::vector<std::optional<detail::GroupMap>> level_groups(keys.size() + 1);
  auto groups_at = [&](size_t level) -> const detail::GroupMap& {
    if (!level_groups[level]) {
      detail::GroupMap g;
      std::vector<int32_t> key(level);
      for (size_t r = 0; r < synthetic.rows(); ++r) {
        for (size_t a = 0; a < level; ++a) key[a] = synth_keys[a][r];
        g[key].push_back(r);
      }
      level_groups[level] = std::move(g);
    }
    return *level_groups[level];
  };

  PredictionOutcome out;
  const size_t n = attack.rows();
  out.correctness.assign(n, 0.0);
  out.defined.assign(n, 1);
  out.match_count.assign(n, 0);
  out.keys_used.assign(n, keys.size());
  if (meas.kind == MeasurementKind::auroc) out.positive_fraction.assign(n, 0.0);

  for (size_t r = 0; r < n; ++r) {
    const std::vector<size_t>* pool = nullptr;
    size_t level = keys.size();
    while (true) {
      std::vector<int32_t> key(level);
      for (size_t a = 0; a < level; ++a) key[a] = attack_keys[a][r];
      const auto& g = groups_at(level);
      auto it = g.find(key);
      if (it != g.end() && !it->second.empty()) {
        pool = &it->second;
        break;
      }
      if (policy != NonMatchPolicy::key_drop || level == 0) break;
      --level; // drop the last key and retry
    }
    out.keys_used[r] = level;

    if (!pool) {
      if (policy == NonMatchPolicy::undefined) {
        out.defined[r] = 0;
      } else { // zero (key_drop with level 0 always matches the whole table)
        out.correctness[r] = 0.0;
        if (meas.kind == MeasurementKind::auroc) out.positive_fraction[r] = 0.0;
      }
      continue;
    }

    out.match_count[r] = pool->size();
    size_t agree = 0, positive = 0;
    if (numeric) {
      const auto& sv = synthetic.continuous(synth_target);
      const auto& av = attack.continuous(attack_target);
      if (av.missing[r]) {
        out.defined[r] = 0;
        continue;
      }
      for (size_t s : *pool) {
        if (sv.missing[s]) continue;
        if (std::abs(sv.values[s] - av.values[r]) <= meas.tolerance) ++agree;
      }
    } else {
      for (size_t s : *pool) {
        agree += synth_tgt[s] == attack_tgt[r];
        if (meas.kind == MeasurementKind::auroc) positive += synth_tgt[s] == positive_code;
      }
    }
    out.correctness[r] = static_cast<double>(agree) / static_cast<double>(pool->size());
    if (meas.kind == MeasurementKind::auroc)
      out.positive_fraction[r] =
          static_cast<double>(positive) / static_cast<double>(pool->size());
  }
  return out;
}

struct CapResult {
  std::optional<double> average; // empty iff no defined records
  std::vector<double> per_record;
  std::vector<uint8_t> defined;
  size_t defined_count = 0;
};

/// Correct attribution probability: mean per-record correctness. Under the
/// `undefined` policy the mean runs over defined records only and the defined
/// count is reported alongside.
inline CapResult cap(const Dataset& attack, const Dataset& synthetic,
                     const std::vector<std::string>& keys, const std::string& target,
                     NonMatchPolicy policy, const Measurement& meas = {}) {
  auto outcome = nn_predict(synthetic, keys, target, attack, policy, meas);
  CapResult res;
  res.per_record = outcome.correctness;
  res.defined = outcome.defined;
  double sum = 0;
  for (size_t i = 0; i < outcome.correctness.size(); ++i) {
    if (!outcome.defined[i]) continue;
    sum += outcome.correctness[i];
    ++res.defined_count;
  }
  if (res.defined_count > 0)
    res.average = sum / static_cast<double>(res.defined_count);
  return res;
}

/// Rank-based AUROC with midrank tie handling. Undefined when only one class
/// is present.
inline Score auroc(const std::vector<double>& scores, const std::vector<uint8_t>& labels) {
  if (scores.size() != labels.size())
    throw ConfigError("auroc: scores and labels differ in length");
  size_t pos = 0;
  for (uint8_t l : labels) pos += l ? 1 : 0;
  const size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) return {0.0, false, false, "single-class-labels"};

  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });

  double rank_sum_pos = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k)
      if (labels[order[k]]) rank_sum_pos += midrank;
    i = j;
  }
  const double p = static_cast<double>(pos);
  const double value = (rank_sum_pos - p * (p + 1) / 2.0) / (p * static_cast<double>(neg));
  return {value, true, false, ""};
}

struct AttackStrength {
  double s = 0;
  bool weak = false; // naive guessing matches or beats the member attack
};

/// S = A_members - A_naive; S <= 0 flags the audit invalid ("weak attack").
inline AttackStrength attack_strength(double a_members, double a_naive) {
  if (a_members < 0 || a_members > 1 || a_naive < 0 || a_naive > 1)
    throw ConfigError("attack_strength inputs must be in [0,1]");
  AttackStrength out;
  out.s = a_members - a_naive;
  out.weak = out.s <= 0;
  return out;
}

/// R = (A_members - A_non_members) / (1 - A_non_members); the ratio form that
/// penalizes high non-member baselines, reported for comparison.
inline Score r_ratio(double a_members, double a_non_members) {
  if (a_members < 0 || a_members > 1 || a_non_members < 0 || a_non_members > 1)
    throw ConfigError("r_ratio inputs must be in [0,1]");
  if (a_non_members >= 1.0) return {0.0, false, false, "baseline-saturated"};
  return {(a_members - a_non_members) / (1.0 - a_non_members), true, false, ""};
}

struct AttributeThresholds {
  double abs = 0.6;  // on A_members
  double rel = 0.15; // on A_rel
};

struct AttributeDecision {
  bool high = false;
  bool rel_exceeds = false;
  bool abs_exceeds = false;
};

/// High vulnerability iff the relative vulnerability exceeds its threshold
/// AND the absolute member accuracy exceeds its threshold (rule R10); the
/// other three quadrants are acceptable.
inline AttributeDecision decide_attribute(double a_members, double a_rel,
                                          const AttributeThresholds& th = {}) {
  AttributeDecision d;
  d.rel_exceeds = a_rel > th.rel;
  d.abs_exceeds = a_members > th.abs;
  d.high = d.rel_exceeds && d.abs_exceeds;
  return d;
}

struct AttributeConfig {
  NonMatchPolicy policy = NonMatchPolicy::zero;
  MeasurementKind measurement = MeasurementKind::exact;
  double tolerance_fraction = 0.1; // numeric targets: fraction of training range
  std::string positive_label;     // auroc: default = minority class in training
  AttributeThresholds thresholds;
  size_t record_cap = 10000;
  uint64_t seed = 0;
};

struct AttributeReport {
  double a_members = 0;
  double a_non_members = 0;
  double a_rel = 0;
  Score r;
  double s = 0;
  double a_naive = 0;
  bool weak_attack = false;
  bool valid = true;
  MeasurementKind measurement = MeasurementKind::exact;
  NonMatchPolicy policy = NonMatchPolicy::zero;
  AttributeDecision decision;
  AttributeThresholds thresholds;
  std::vector<std::string> keys;
  std::string target;
  size_t records_per_side = 0;
  size_t defined_members = 0;
  size_t defined_non_members = 0;
  double tolerance = 0;        // numeric measurement only
  std::string positive_label;  // auroc only
  std::vector<std::string> notes;
};

namespace detail {

/// Expected accuracy of a guess drawn uniformly from the target's domain,
/// computed analytically instead of sampling so the audit stays a pure
/// function of (datasets, config).
inline double naive_accuracy(const Dataset& train, const std::string& target,
                             const Dataset& member_attack, const Measurement& meas) {
  const size_t tcol = static_cast<size_t>(train.require_attr(target));
  if (meas.kind == MeasurementKind::auroc) return 0.5;
  if (meas.kind == MeasurementKind::numeric_tolerance) {
    const auto& tv = train.continuous(tcol);
    double lo = 0, hi = 0;
    bool any = false;
    for (size_t r = 0; r < tv.values.size(); ++r) {
      if (tv.missing[r]) continue;
      if (!any) {
        lo = hi = tv.values[r];
        any = true;
      } else {
        lo = std::min(lo, tv.values[r]);
        hi = std::max(hi, tv.values[r]);
      }
    }
    if (!any || hi <= lo) return 1.0; // degenerate domain: any guess is correct
    const auto& av =
        member_attack.continuous(static_cast<size_t>(member_attack.require_attr(target)));
    double sum = 0;
    size_t n = 0;
    for (size_t r = 0; r < av.values.size(); ++r) {
      if (av.missing[r]) continue;
      const double a = std::max(lo, av.values[r] - meas.tolerance);
      const double b = std::min(hi, av.values[r] + meas.tolerance);
      sum += std::max(0.0, b - a) / (hi - lo);
      ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
  }
  // exact: uniform over the distinct non-missing training values
  const auto& cat = train.categorical(tcol);
  std::unordered_set<int32_t> distinct;
  for (int32_t c : cat.codes) distinct.insert(c);
  auto miss = cat.index.find(kMissingLabel);
  if (miss != cat.index.end()) distinct.erase(miss->second);
  return distinct.empty() ? 0.0 : 1.0 / static_cast<double>(distinct.size());
}

inline std::string minority_label(const Dataset& train, const std::string& target) {
  const auto& cat = train.categorical(static_cast<size_t>(train.require_attr(target)));
  std::unordered_map<int32_t, size_t> counts;
  for (int32_t c : cat.codes) counts[c]++;
  std::string best;
  size_t best_count = 0;
  bool have = false;
  for (const auto& [code, count] : counts) {
    const std::string& label = cat.labels[static_cast<size_t>(code)];
    if (label == kMissingLabel) continue;
    if (!have || count < best_count || (count == best_count && label < best)) {
      best = label;
      best_count = count;
      have = true;
    }
  }
  if (!have) throw ConfigError("target " + target + " has no observed values");
  return best;
}

} // namespace detail

/// Attribute disclosure with non-member baseline (the Fig.-7-style pipeline):
/// equal-sized member and non-member attack sets, one synthetic-trained
/// nearest-neighbor predictor for both, identical measurement, A_rel as the
/// pure difference, plus the R ratio and attack strength for context.
inline AttributeReport attribute_audit(const Dataset& train, const Dataset& holdout,
                                       const Dataset& synthetic,
                                       const std::vector<std::string>& keys,
                                       const std::string& target,
                                       const AttributeConfig& cfg = {}) {
  if (holdout.rows() == 0)
    throw ConfigError("attribute audit requires a non-empty holdout dataset "
                      "for the non-member baseline (rule R9)");
  if (train.rows() == 0) throw ConfigError("attribute audit: empty training dataset");

  AttributeReport rep;
  rep.measurement = cfg.measurement;
  rep.policy = cfg.policy;
  rep.thresholds = cfg.thresholds;
  rep.keys = keys;
  rep.target = target;

  Measurement meas;
  meas.kind = cfg.measurement;
  if (cfg.measurement == MeasurementKind::numeric_tolerance) {
    const auto& tv = train.continuous(static_cast<size_t>(train.require_attr(target)));
    double lo = 0, hi = 0;
    bool any = false;
    for (size_t r = 0; r < tv.values.size(); ++r) {
      if (tv.missing[r]) continue;
      if (!any) {
        lo = hi = tv.values[r];
        any = true;
      } else {
        lo = std::min(lo, tv.values[r]);
        hi = std::max(hi, tv.values[r]);
      }
    }
    if (!any) throw ConfigError("target " + target + " has no observed values");
    meas.tolerance = cfg.tolerance_fraction * (hi - lo);
    rep.tolerance = meas.tolerance;
  } else if (cfg.measurement == MeasurementKind::auroc) {
    meas.positive_label = cfg.positive_label.empty()
                              ? detail::minority_label(train, target)
                              : cfg.positive_label;
    rep.positive_label = meas.positive_label;
  }

  // All records up to the explicit cap, never a "vulnerable" pre-selection.
  const size_t per_side = std::min({train.rows(), holdout.rows(), cfg.record_cap});
  rep.records_per_side = per_side;
  Dataset members = per_side == train.rows()
                        ? train
                        : sample(train, per_side, derive_seed(cfg.seed, 11));
  Dataset non_members = per_side == holdout.rows()
                            ? holdout
                            : sample(holdout, per_side, derive_seed(cfg.seed, 12));

  auto member_outcome = nn_predict(synthetic, keys, target, members, cfg.policy, meas);
  auto non_member_outcome = nn_predict(synthetic, keys, target, non_members, cfg.policy, meas);

  auto aggregate = [&](const PredictionOutcome& o, const Dataset& attack,
                       size_t& defined_count) -> std::optional<double> {
    if (cfg.measurement == MeasurementKind::auroc) {
      std::vector<double> scores;
      std::vector<uint8_t> labels;
      const size_t tcol = static_cast<size_t>(attack.require_attr(target));
      const auto& cat = attack.categorical(tcol);
      for (size_t i = 0; i < attack.rows(); ++i) {
        if (!o.defined[i]) continue;
        scores.push_back(o.positive_fraction[i]);
        labels.push_back(cat.label_at(i) == meas.positive_label ? 1 : 0);
      }
      defined_count = scores.size();
      Score a = auroc(scores, labels);
      if (!a.defined) return std::nullopt;
      return a.value;
    }
    double sum = 0;
    defined_count = 0;
    for (size_t i = 0; i < o.correctness.size(); ++i) {
      if (!o.defined[i]) continue;
      sum += o.correctness[i];
      ++defined_count;
    }
    if (defined_count == 0) return std::nullopt;
    return sum / static_cast<double>(defined_count);
  };

  auto am = aggregate(member_outcome, members, rep.defined_members);
  auto an = aggregate(non_member_outcome, non_members, rep.defined_non_members);
  if (!am || !an) {
    rep.valid = false;
    rep.notes.push_back(!am ? "member accuracy undefined (no defined records "
                              "or single-class labels)"
                            : "non-member accuracy undefined");
    return rep;
  }
  rep.a_members = *am;
  rep.a_non_members = *an;
  rep.a_rel = rep.a_members - rep.a_non_members;
  rep.r = r_ratio(rep.a_members, rep.a_non_members);
  rep.a_naive = detail::naive_accuracy(train, target, members, meas);
  auto strength = attack_strength(rep.a_members, rep.a_naive);
  rep.s = strength.s;
  rep.weak_attack = strength.weak;
  if (rep.weak_attack) {
    rep.valid = false;
    rep.notes.push_back(
        "weak attack: the member attack does not beat a uniform naive guess; "
        "results are not a valid vulnerability estimate");
  }
  rep.decision = decide_attribute(rep.a_members, rep.a_rel, cfg.thresholds);
  if (cfg.measurement != MeasurementKind::auroc)
    rep.notes.push_back(
        "thresholds 0.6/0.15 are AUROC-derived defaults applied to a "
        "non-AUROC measurement; interpret with care");
  rep.notes.push_back(
      "predictor: synthetic-trained exact nearest neighbor for both sides; "
      "the training-data-trained non-member variant is not implemented");
  return rep;
}

} // namespace privaudit
