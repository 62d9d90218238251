#pragma once

// Independent exhaustive-enumeration oracles. These deliberately avoid the
// library's encoders, hash maps, and subset iterators: everything is computed
// by direct label comparison and bitmask enumeration, so agreement with the
// library is meaningful.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "privaudit/core.hpp"

namespace oracle {

using privaudit::Dataset;

inline std::string label_of(const Dataset& d, const std::string& attr, size_t row) {
  return d.categorical(static_cast<size_t>(d.require_attr(attr))).label_at(row);
}

inline int hamming(const Dataset& a, size_t ra, const Dataset& b, size_t rb,
                   const std::vector<std::string>& attrs) {
  int dist = 0;
  for (const auto& attr : attrs)
    dist += label_of(a, attr, ra) != label_of(b, attr, rb);
  return dist;
}

/// All-pairs matching: record r matches iff some synthetic row is within the
/// threshold.
inline std::vector<std::vector<size_t>> match_rows(const Dataset& attack,
                                                   const Dataset& synthetic,
                                                   const std::vector<std::string>& attrs,
                                                   int threshold) {
  std::vector<std::vector<size_t>> out(attack.rows());
  for (size_t r = 0; r < attack.rows(); ++r)
    for (size_t s = 0; s < synthetic.rows(); ++s)
      if (hamming(attack, r, synthetic, s, attrs) <= threshold) out[r].push_back(s);
  return out;
}

struct Confusion {
  size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

inline Confusion confusion(const std::vector<uint8_t>& member,
                           const std::vector<uint8_t>& matched) {
  Confusion c;
  for (size_t i = 0; i < member.size(); ++i) {
    if (matched[i] && member[i]) ++c.tp;
    else if (matched[i]) ++c.fp;
    else if (member[i]) ++c.fn;
    else ++c.tn;
  }
  return c;
}

/// F_beta straight from the definitions; returns 0 when undefined.
inline double f_beta(const Confusion& c, double beta) {
  if (c.tp + c.fp == 0 || c.tp + c.fn == 0) return 0.0;
  const double p = double(c.tp) / double(c.tp + c.fp);
  const double r = double(c.tp) / double(c.tp + c.fn);
  if (p == 0.0 && r == 0.0) return 0.0;
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (b2 * p + r);
}

struct WorstCase {
  std::vector<std::string> best_subset; // sorted names
  double best_value = -1;
};

/// Bitmask sweep over every subset of the quasi-identifiers.
inline WorstCase worst_case(const Dataset& attack_records,
                            const std::vector<uint8_t>& member, const Dataset& synthetic,
                            const std::vector<std::string>& qis, double beta,
                            int threshold = 0) {
  WorstCase best;
  for (unsigned mask = 1; mask < (1u << qis.size()); ++mask) {
    std::vector<std::string> attrs;
    for (size_t a = 0; a < qis.size(); ++a)
      if (mask & (1u << a)) attrs.push_back(qis[a]);
    auto pools = match_rows(attack_records, synthetic, attrs, threshold);
    std::vector<uint8_t> flags(pools.size());
    for (size_t i = 0; i < pools.size(); ++i) flags[i] = pools[i].empty() ? 0 : 1;
    const double v = f_beta(confusion(member, flags), beta);
    std::vector<std::string> sorted = attrs;
    std::sort(sorted.begin(), sorted.end());
    if (v > best.best_value || (v == best.best_value && sorted < best.best_subset)) {
      best.best_value = v;
      best.best_subset = sorted;
    }
  }
  return best;
}

/// Per-record correct-attribution probability by direct enumeration: among
/// synthetic rows agreeing on every key, the fraction agreeing on the target.
/// Returns -1 for a non-match (caller applies the policy).
inline double cap_record(const Dataset& synthetic, const std::vector<std::string>& keys,
                         const std::string& target, const Dataset& attack, size_t row) {
  size_t denom = 0, numer = 0;
  for (size_t s = 0; s < synthetic.rows(); ++s) {
    bool key_match = true;
    for (const auto& k : keys)
      if (label_of(synthetic, k, s) != label_of(attack, k, row)) {
        key_match = false;
        break;
      }
    if (!key_match) continue;
    ++denom;
    numer += label_of(synthetic, target, s) == label_of(attack, target, row);
  }
  if (denom == 0) return -1.0;
  return double(numer) / double(denom);
}

/// AUROC as the fraction of concordant positive-negative pairs, ties half.
inline double auroc(const std::vector<double>& scores, const std::vector<uint8_t>& labels) {
  double concordant = 0, ties = 0;
  size_t pairs = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) concordant += 1;
      else if (scores[i] == scores[j]) ties += 1;
    }
  }
  return (concordant + 0.5 * ties) / double(pairs);
}

} // namespace oracle
