#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "privaudit/core.hpp"
#include "privaudit/rng.hpp"
#include "privaudit/sampling.hpp"

namespace privaudit {

/// Labeled attack records with explicit member prevalence t. Members are
/// drawn from the training dataset, non-members from the holdout.
struct AttackSet {
  Dataset records;
  std::vector<uint8_t> member;
  double t = 0;
  size_t training_size = 0;
  std::optional<size_t> population_size;
  uint64_t seed = 0;

  size_t member_count() const {
    size_t m = 0;
    for (uint8_t b : member) m += b;
    return m;
  }
};

namespace detail {

inline Dataset concat_rows(const Dataset& a, const Dataset& b) {
  if (a.schema.size() != b.schema.size())
    throw SchemaError("cannot concatenate datasets with different schemas");
  for (size_t i = 0; i < a.schema.size(); ++i) {
    if (a.schema[i].name != b.schema[i].name || a.schema[i].kind != b.schema[i].kind)
      throw SchemaError("cannot concatenate: attribute mismatch at " + a.schema[i].name);
  }
  Dataset out = a;
  out.ids.insert(out.ids.end(), b.ids.begin(), b.ids.end());
  for (size_t c = 0; c < out.columns.size(); ++c) {
    if (auto* cat = std::get_if<CategoricalColumn>(&out.columns[c])) {
      const auto& src = b.categorical(c);
      for (size_t r = 0; r < b.rows(); ++r)
        cat->codes.push_back(cat->intern(src.label_at(r)));
    } else {
      auto& num = std::get<ContinuousColumn>(out.columns[c]);
      const auto& src = b.continuous(c);
      num.values.insert(num.values.end(), src.values.begin(), src.values.end());
      num.missing.insert(num.missing.end(), src.missing.begin(), src.missing.end());
    }
  }
  return out;
}

} // namespace detail

/// Builds an attack set of `size` records at member prevalence `t`:
/// round(t*size) members from `train`, the rest from `holdout`, without
/// replacement by default. There is deliberately no default for t; when the
/// population size N is known use the (n, N) overload for t = n/N.
inline AttackSet build_attack_set(const Dataset& train, const Dataset& holdout,
                                  double t, size_t size, uint64_t seed,
                                  bool replacement = false,
                                  bool allow_extreme_t = false) {
  if (!allow_extreme_t && !(t > 0.0 && t < 1.0))
    throw ConfigError("member prevalence t must be in (0,1)");
  if (t < 0.0 || t > 1.0) throw ConfigError("member prevalence t out of [0,1]");
  if (size == 0) throw ConfigError("attack set size must be positive");
  const size_t members = static_cast<size_t>(std::llround(t * static_cast<double>(size)));
  const size_t non_members = size - members;
  if (!replacement && members > train.rows())
    throw ConfigError("attack set needs " + std::to_string(members) +
                      " distinct members but training has " +
                      std::to_string(train.rows()));
  if (!replacement && non_members > holdout.rows())
    throw ConfigError("attack set needs " + std::to_string(non_members) +
                      " distinct non-members but holdout has " +
                      std::to_string(holdout.rows()));

  Dataset member_part = sample(train, members, derive_seed(seed, 1), replacement);
  Dataset non_member_part = sample(holdout, non_members, derive_seed(seed, 2), replacement);

  AttackSet out;
  out.records = detail::concat_rows(member_part, non_member_part);
  out.member.assign(size, 0);
  for (size_t i = 0; i < members; ++i) out.member[i] = 1;
  out.t = t;
  out.training_size = train.rows();
  out.seed = seed;
  return out;
}

/// t modeled as the training sampling fraction n/N.
inline AttackSet build_attack_set(const Dataset& train, const Dataset& holdout,
                                  size_t n, size_t N, size_t size, uint64_t seed,
                                  bool replacement = false) {
  if (N == 0 || n > N) throw ConfigError("need 0 < n <= N for t = n/N");
  AttackSet a = build_attack_set(train, holdout,
                                 static_cast<double>(n) / static_cast<double>(N),
                                 size, seed, replacement);
  a.training_size = n;
  a.population_size = N;
  return a;
}

// ---------------------------------------------------------------------------
// Confusion accounting and the F-score family.

struct ConfusionStats {
  size_t tp = 0, fp = 0, tn = 0, fn = 0;

  size_t total() const { return tp + fp + tn + fn; }

  std::optional<double> precision() const {
    if (tp + fp == 0) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fp);
  }

  std::optional<double> recall() const {
    if (tp + fn == 0) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
};

/// matched + member -> tp, matched + non-member -> fp,
/// unmatched + non-member -> tn, unmatched + member -> fn.
inline ConfusionStats confusion(const AttackSet& attack,
                                const std::vector<uint8_t>& matched) {
  if (matched.size() != attack.member.size())
    throw ConfigError("match flags do not cover the attack set");
  ConfusionStats s;
  for (size_t i = 0; i < matched.size(); ++i) {
    if (matched[i])
      attack.member[i] ? ++s.tp : ++s.fp;
    else
      attack.member[i] ? ++s.fn : ++s.tn;
  }
  return s;
}

/// Metric value with degenerate-case bookkeeping. `defined` is false when the
/// inputs cannot support the metric (e.g. no positive guesses); the value is
/// then reported as 0 together with the flag, never silently dropped.
struct Score {
  double value = 0;
  bool defined = true;
  bool degenerate = false;
  std::string flag;
};

/// F_beta from bare precision/recall; caller guarantees p+r > 0.
inline double f_beta_value(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  return (1.0 + b2) * precision * recall / (b2 * precision + recall);
}

inline Score f_beta(const ConfusionStats& stats, double beta) {
  if (!(beta > 0)) throw ConfigError("beta must be positive");
  auto p = stats.precision();
  auto r = stats.recall();
  if (!p) return {0.0, false, false, "no-attack-signal"};
  if (!r) return {0.0, false, false, "no-members"};
  if (*p == 0.0 && *r == 0.0) return {0.0, true, true, "degenerate-zero"};
  return {f_beta_value(*p, *r, beta), true, false, ""};
}

/// Score of an adversary labelling every target a member: (1+b^2)p/(b^2 p+1).
inline double f_naive(double p, double beta) {
  if (!(beta > 0)) throw ConfigError("beta must be positive");
  if (p < 0.0 || p > 1.0) throw ConfigError("prevalence must be in [0,1]");
  const double b2 = beta * beta;
  return (1.0 + b2) * p / (b2 * p + 1.0);
}

/// Incremental vulnerability attributable to the synthetic data. Negative
/// when access to the synthetic data underperforms guessing.
inline Score f_rel(double f, double naive) {
  if (f < 0.0 || f > 1.0 || naive < 0.0 || naive > 1.0)
    throw ConfigError("f_rel inputs must be in [0,1]");
  if (naive >= 1.0)
    return {0.0, false, false, "naive-guess-saturated"};
  return {(f - naive) / (1.0 - naive), true, false, ""};
}

} // namespace privaudit
