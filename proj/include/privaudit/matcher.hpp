#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "privaudit/equivalence.hpp"
#include "privaudit/membership.hpp"

namespace privaudit {

struct MatchConfig {
  enum class Distance { exact, hamming };

  std::vector<std::string> attrs;
  Distance distance = Distance::exact;
  int threshold = 0; // hamming only; exact == hamming with threshold 0

  void validate() const {
    if (attrs.empty()) throw ConfigError("match config: attribute list is empty");
    if (threshold < 0) throw ConfigError("match config: negative threshold");
    if (distance == Distance::exact && threshold != 0)
      throw ConfigError("match config: exact distance requires threshold 0");
    if (static_cast<size_t>(threshold) >= attrs.size())
      throw ConfigError("match config: threshold must be < number of attributes");
  }
};

struct MatchResult {
  std::vector<uint8_t> matched;                 // per attack record
  std::vector<std::vector<size_t>> matched_rows; // synthetic row indices
};

namespace detail {

/// Match flags only; the hot path for subset sweeps.
inline std::vector<uint8_t> match_flags(const std::vector<std::vector<int32_t>>& attack_cols,
                                        const std::vector<std::vector<int32_t>>& synth_cols,
                                        size_t attack_rows, size_t synth_rows,
                                        const std::vector<size_t>& attr_pos,
                                        MatchConfig::Distance distance, int threshold) {
  std::vector<uint8_t> out(attack_rows, 0);
  if (distance == MatchConfig::Distance::exact || threshold == 0) {
    std::unordered_set<std::vector<int32_t>, VecHash> keys;
    keys.reserve(synth_rows * 2);
    std::vector<int32_t> key(attr_pos.size());
    for (size_t r = 0; r < synth_rows; ++r) {
      for (size_t a = 0; a < attr_pos.size(); ++a) key[a] = synth_cols[attr_pos[a]][r];
      keys.insert(key);
    }
    for (size_t r = 0; r < attack_rows; ++r) {
      for (size_t a = 0; a < attr_pos.size(); ++a) key[a] = attack_cols[attr_pos[a]][r];
      out[r] = keys.count(key) ? 1 : 0;
    }
    return out;
  }
  for (size_t r = 0; r < attack_rows; ++r) {
    for (size_t s = 0; s < synth_rows; ++s) {
      int mism = 0;
      for (size_t a = 0; a < attr_pos.size() && mism <= threshold; ++a)
        mism += attack_cols[attr_pos[a]][r] != synth_cols[attr_pos[a]][s];
      if (mism <= threshold) {
        out[r] = 1;
        break;
      }
    }
  }
  return out;
}

} // namespace detail

/// An attack record matches iff some synthetic record disagrees on at most
/// `threshold` of cfg.attrs. Both datasets must be categorical over cfg.attrs
/// (pre-discretized with shared edges).
inline MatchResult match_records(const Dataset& attack, const Dataset& synthetic,
                                 const MatchConfig& cfg) {
  cfg.validate();
  detail::SharedEncoder enc(cfg.attrs);
  auto synth_cols = enc.encode(synthetic);
  auto attack_cols = enc.encode(attack);

  MatchResult res;
  res.matched.assign(attack.rows(), 0);
  res.matched_rows.resize(attack.rows());

  if (cfg.distance == MatchConfig::Distance::exact || cfg.threshold == 0) {
    auto groups = detail::group_rows(synth_cols, synthetic.rows());
    for (size_t r = 0; r < attack.rows(); ++r) {
      auto it = groups.find(detail::row_key(attack_cols, r));
      if (it != groups.end()) {
        res.matched[r] = 1;
        res.matched_rows[r] = it->second;
      }
    }
    return res;
  }

  for (size_t r = 0; r < attack.rows(); ++r) {
    for (size_t s = 0; s < synthetic.rows(); ++s) {
      int mism = 0;
      for (size_t a = 0; a < cfg.attrs.size(); ++a) {
        mism += attack_cols[a][r] != synth_cols[a][s];
        if (mism > cfg.threshold) break;
      }
      if (mism <= cfg.threshold) res.matched_rows[r].push_back(s);
    }
    res.matched[r] = res.matched_rows[r].empty() ? 0 : 1;
  }
  return res;
}

inline ConfusionStats confusion(const AttackSet& attack, const MatchResult& matches) {
  return confusion(attack, matches.matched);
}

// ---------------------------------------------------------------------------
// Attribute-subset enumeration.

inline uint64_t count_subsets(size_t n, size_t min_size, size_t max_size) {
  if (min_size < 1 || min_size > max_size || max_size > n)
    throw ConfigError("subset bounds must satisfy 1 <= min <= max <= n");
  uint64_t total = 0;
  for (size_t k = min_size; k <= max_size; ++k) {
    // C(n, k) built incrementally; sizes here stay far below overflow.
    uint64_t c = 1;
    for (size_t j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    total += c;
  }
  return total;
}

/// Visits every subset of `attrs` with size in [min_size, max_size] exactly
/// once: sizes ascending, positions in lexicographic order. `fn` receives the
/// attribute positions of the current subset.
template <typename Fn>
void for_each_subset(size_t n, size_t min_size, size_t max_size, Fn&& fn) {
  if (min_size < 1 || min_size > max_size || max_size > n)
    throw ConfigError("subset bounds must satisfy 1 <= min <= max <= n");
  std::vector<size_t> pos;
  for (size_t k = min_size; k <= max_size; ++k) {
    pos.resize(k);
    for (size_t i = 0; i < k; ++i) pos[i] = i;
    while (true) {
      fn(pos);
      // next combination
      size_t i = k;
      while (i > 0 && pos[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
}

inline std::vector<std::vector<std::string>> enumerate_subsets(
    const std::vector<std::string>& attrs, size_t min_size, size_t max_size) {
  std::vector<std::vector<std::string>> out;
  for_each_subset(attrs.size(), min_size, max_size, [&](const std::vector<size_t>& pos) {
    std::vector<std::string> s;
    s.reserve(pos.size());
    for (size_t p : pos) s.push_back(attrs[p]);
    out.push_back(std::move(s));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Worst-case search over QI subsets.

struct SearchOptions {
  int parallelism = 0;      // 0 = hardware concurrency
  size_t cap = 20;          // hard limit on |qis|; refuse rather than under-search
  size_t min_size = 1;
  size_t max_size = 0;      // 0 = |qis|
  MatchConfig::Distance distance = MatchConfig::Distance::exact;
  int threshold = 0;
};

struct SubsetSizeAggregate {
  size_t size = 0;
  double mean = 0;
  double max = 0;
  double sd = 0;
  uint64_t subsets = 0;
};

struct WorstCaseResult {
  std::vector<std::string> best_subset; // names, sorted
  Score best;                           // worst-case F_beta
  std::vector<SubsetSizeAggregate> curve;
  uint64_t subsets_evaluated = 0;
};

/// Per-subset confusion counts, reusable across beta weights.
struct ConfusionSweep {
  struct Cell {
    std::vector<uint32_t> attr_pos;
    ConfusionStats stats;
  };
  std::vector<Cell> cells;
  std::vector<std::string> qis;
};

inline ConfusionSweep sweep_confusions(const AttackSet& attack, const Dataset& synthetic,
                                       const std::vector<std::string>& qis,
                                       const SearchOptions& opt = {}) {
  if (qis.empty()) throw ConfigError("worst-case search: no quasi-identifiers given");
  if (qis.size() > opt.cap)
    throw ConfigError(
        "worst-case search over " + std::to_string(qis.size()) +
        " attributes exceeds the cap of " + std::to_string(opt.cap) +
        "; restrict the quasi-identifiers to those ascertainable by the "
        "adversary (rule R1) or raise the cap explicitly");
  const size_t max_size = opt.max_size == 0 ? qis.size() : opt.max_size;

  detail::SharedEncoder enc(qis);
  auto synth_cols = enc.encode(synthetic);
  auto attack_cols = enc.encode(attack.records);

  ConfusionSweep sweep;
  sweep.qis = qis;
  sweep.cells.reserve(static_cast<size_t>(count_subsets(qis.size(), opt.min_size, max_size)));
  for_each_subset(qis.size(), opt.min_size, max_size, [&](const std::vector<size_t>& pos) {
    ConfusionSweep::Cell cell;
    cell.attr_pos.assign(pos.begin(), pos.end());
    sweep.cells.push_back(std::move(cell));
  });

  unsigned workers = opt.parallelism > 0
                         ? static_cast<unsigned>(opt.parallelism)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(sweep.cells.size()));
  if (workers == 0) workers = 1;

  auto evaluate_range = [&](size_t begin, size_t end) {
    std::vector<size_t> pos;
    for (size_t i = begin; i < end; ++i) {
      auto& cell = sweep.cells[i];
      pos.assign(cell.attr_pos.begin(), cell.attr_pos.end());
      auto flags = detail::match_flags(attack_cols, synth_cols, attack.records.rows(),
                                       synthetic.rows(), pos, opt.distance, opt.threshold);
      cell.stats = confusion(attack, flags);
    }
  };

  if (workers <= 1) {
    evaluate_range(0, sweep.cells.size());
  } else {
    // Each cell is written by exactly one worker; aggregation happens after
    // the join, so results cannot depend on the worker count.
    std::vector<std::thread> threads;
    const size_t per = (sweep.cells.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      size_t begin = w * per;
      size_t end = std::min(sweep.cells.size(), begin + per);
      if (begin >= end) break;
      threads.emplace_back(evaluate_range, begin, end);
    }
    for (auto& t : threads) t.join();
  }
  return sweep;
}

/// Reduces a confusion sweep to the worst case for one beta weight. Ties on
/// the maximum go to the lexicographically smallest attribute-name tuple.
inline WorstCaseResult reduce_sweep(const ConfusionSweep& sweep, double beta) {
  if (!(beta > 0)) throw ConfigError("beta must be positive");
  WorstCaseResult out;
  out.subsets_evaluated = sweep.cells.size();

  auto names_of = [&](const std::vector<uint32_t>& pos) {
    std::vector<std::string> names;
    names.reserve(pos.size());
    for (uint32_t p : pos) names.push_back(sweep.qis[p]);
    std::sort(names.begin(), names.end());
    return names;
  };

  struct Agg {
    double sum = 0, sumsq = 0, max = 0;
    uint64_t n = 0;
  };
  std::vector<Agg> per_size(sweep.qis.size() + 1);

  bool have_best = false;
  for (const auto& cell : sweep.cells) {
    Score s = f_beta(cell.stats, beta);
    const double v = s.value;
    auto& agg = per_size[cell.attr_pos.size()];
    agg.sum += v;
    agg.sumsq += v * v;
    agg.max = agg.n == 0 ? v : std::max(agg.max, v);
    agg.n++;

    if (!have_best || v > out.best.value ||
        (v == out.best.value && names_of(cell.attr_pos) < out.best_subset)) {
      out.best = s;
      out.best_subset = names_of(cell.attr_pos);
      have_best = true;
    }
  }

  for (size_t sz = 0; sz < per_size.size(); ++sz) {
    const auto& a = per_size[sz];
    if (a.n == 0) continue;
    SubsetSizeAggregate row;
    row.size = sz;
    row.subsets = a.n;
    row.mean = a.sum / static_cast<double>(a.n);
    row.max = a.max;
    const double var = std::max(0.0, a.sumsq / static_cast<double>(a.n) - row.mean * row.mean);
    row.sd = std::sqrt(var);
    out.curve.push_back(row);
  }
  return out;
}

/// Evaluates the membership F_beta for every QI subset and returns the argmax
/// subset, its value, and per-size aggregates. Refuses (rather than silently
/// under-searching) when |qis| exceeds the configured cap.
inline WorstCaseResult worst_case_search(const AttackSet& attack, const Dataset& synthetic,
                                         const std::vector<std::string>& qis, double beta,
                                         const SearchOptions& opt = {}) {
  return reduce_sweep(sweep_confusions(attack, synthetic, qis, opt), beta);
}

} // namespace privaudit
