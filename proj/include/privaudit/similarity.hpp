#pragma once

#include <limits>
#include <string>
#include <vector>

#include "privaudit/equivalence.hpp"

namespace privaudit {

/// Fixed warning carried by every similarity output. Not user-suppressible:
/// these metrics are retained for comparison with older evaluations only.
inline constexpr const char* kSimilarityDeprecationWarning =
    "deprecated (rule R4): stand-alone similarity metrics should not be used "
    "to report privacy in synthetic data";

enum class DcrDirection {
  synthetic_to_training, // STD
  training_to_synthetic, // TSD
  synthetic_to_holdout,  // SHD
  training_to_training,  // TTD
  training_to_holdout,   // THD
  unspecified
};

inline const char* to_string(DcrDirection d) {
  switch (d) {
    case DcrDirection::synthetic_to_training: return "STD";
    case DcrDirection::training_to_synthetic: return "TSD";
    case DcrDirection::synthetic_to_holdout: return "SHD";
    case DcrDirection::training_to_training: return "TTD";
    case DcrDirection::training_to_holdout: return "THD";
    default: return "DCR";
  }
}

struct DistanceProfile {
  DcrDirection direction = DcrDirection::unspecified;
  std::vector<int> closest; // per from-record Hamming distance to nearest to-record

  bool deprecated() const { return true; }
  const char* deprecation_note() const { return kSimilarityDeprecationWarning; }
};

/// Per from-record minimum Hamming distance over `attrs` to any to-record.
/// With exclude_self, pairs sharing a row id are skipped (TTD semantics: a
/// record's closest *other* record).
inline DistanceProfile dcr(const Dataset& from, const Dataset& to,
                           const std::vector<std::string>& attrs,
                           bool exclude_self = false,
                           DcrDirection direction = DcrDirection::unspecified) {
  if (to.rows() == 0) throw ConfigError("dcr: target dataset is empty");
  if (attrs.empty()) throw ConfigError("dcr: attribute list is empty");
  detail::SharedEncoder enc(attrs);
  auto from_cols = enc.encode(from);
  auto to_cols = enc.encode(to);

  DistanceProfile prof;
  prof.direction = direction;
  prof.closest.assign(from.rows(), std::numeric_limits<int>::max());
  for (size_t r = 0; r < from.rows(); ++r) {
    int best = std::numeric_limits<int>::max();
    for (size_t s = 0; s < to.rows(); ++s) {
      if (exclude_self && from.ids[r] == to.ids[s]) continue;
      int d = 0;
      for (size_t a = 0; a < attrs.size() && d < best; ++a)
        d += from_cols[a][r] != to_cols[a][s];
      if (d < best) {
        best = d;
        if (best == 0) break;
      }
    }
    if (best == std::numeric_limits<int>::max())
      throw ConfigError("dcr: no comparable record (self-exclusion removed all rows)");
    prof.closest[r] = best;
  }
  return prof;
}

enum class VrVariant { tsd_vs_thd, std_vs_shd, tsd_vs_ttd };

inline const char* to_string(VrVariant v) {
  switch (v) {
    case VrVariant::tsd_vs_thd: return "tsd_vs_thd";
    case VrVariant::std_vs_shd: return "std_vs_shd";
    default: return "tsd_vs_ttd";
  }
}

/// Count of records whose attack-side distance is strictly below the
/// baseline distance, record by record.
inline size_t vr_count(VrVariant variant, const DistanceProfile& attack_side,
                       const DistanceProfile& baseline_side) {
  (void)variant; // the variant names the semantics; the arithmetic is shared
  if (attack_side.closest.size() != baseline_side.closest.size())
    throw ConfigError("vr_count: profiles cover different record counts");
  size_t count = 0;
  for (size_t i = 0; i < attack_side.closest.size(); ++i)
    count += attack_side.closest[i] < baseline_side.closest[i];
  return count;
}

/// Count of synthetic records exactly matching some training record and no
/// holdout record (STD = 0 and SHD != 0).
inline size_t exact_match_vr(const Dataset& synthetic, const Dataset& train,
                             const Dataset& holdout,
                             const std::vector<std::string>& attrs) {
  if (attrs.empty()) throw ConfigError("exact_match_vr: attribute list is empty");
  detail::SharedEncoder enc(attrs);
  auto synth_cols = enc.encode(synthetic);
  auto train_cols = enc.encode(train);
  auto holdout_cols = enc.encode(holdout);

  std::unordered_set<std::vector<int32_t>, detail::VecHash> train_keys, holdout_keys;
  for (size_t r = 0; r < train.rows(); ++r) train_keys.insert(detail::row_key(train_cols, r));
  for (size_t r = 0; r < holdout.rows(); ++r)
    holdout_keys.insert(detail::row_key(holdout_cols, r));

  size_t count = 0;
  for (size_t r = 0; r < synthetic.rows(); ++r) {
    auto key = detail::row_key(synth_cols, r);
    if (train_keys.count(key) && !holdout_keys.count(key)) ++count;
  }
  return count;
}

} // namespace privaudit
