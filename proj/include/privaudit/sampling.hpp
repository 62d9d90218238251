#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "privaudit/core.hpp"
#include "privaudit/rng.hpp"

namespace privaudit {

struct Partition {
  std::vector<size_t> train_rows;
  std::vector<size_t> holdout_rows;
  double ratio = 0;
  uint64_t seed = 0;
};

namespace detail {

/// Seeded Fisher-Yates over 0..n-1.
inline std::vector<size_t> shuffled_indices(size_t n, uint64_t seed) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  Rng rng(seed);
  for (size_t i = n; i > 1; --i)
    std::swap(idx[i - 1], idx[rng.below(i)]);
  return idx;
}

} // namespace detail

/// Uniform random split without replacement. |train| = round(ratio * n).
inline Partition partition(const Dataset& data, double ratio, uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ConfigError("partition ratio must be in (0,1)");
  if (data.rows() == 0) throw ConfigError("cannot partition an empty dataset");
  auto idx = detail::shuffled_indices(data.rows(), seed);
  const size_t n_train =
      static_cast<size_t>(std::llround(ratio * static_cast<double>(data.rows())));
  Partition p;
  p.ratio = ratio;
  p.seed = seed;
  p.train_rows.assign(idx.begin(), idx.begin() + static_cast<long>(n_train));
  p.holdout_rows.assign(idx.begin() + static_cast<long>(n_train), idx.end());
  std::sort(p.train_rows.begin(), p.train_rows.end());
  std::sort(p.holdout_rows.begin(), p.holdout_rows.end());
  return p;
}

/// Rows drawn uniformly; deterministic in (data, n, seed, replacement).
inline Dataset sample(const Dataset& data, size_t n, uint64_t seed,
                      bool replacement = false) {
  std::vector<size_t> rows;
  rows.reserve(n);
  if (replacement) {
    if (data.rows() == 0 && n > 0)
      throw ConfigError("cannot sample from an empty dataset");
    Rng rng(seed);
    for (size_t i = 0; i < n; ++i)
      rows.push_back(static_cast<size_t>(rng.below(data.rows())));
  } else {
    if (n > data.rows())
      throw ConfigError("sample of " + std::to_string(n) +
                        " without replacement exceeds dataset size " +
                        std::to_string(data.rows()));
    auto idx = detail::shuffled_indices(data.rows(), seed);
    rows.assign(idx.begin(), idx.begin() + static_cast<long>(n));
  }
  return take_rows(data, rows);
}

/// Draws `n` distinct indices out of 0..pool-1 (Floyd's algorithm); cheap for
/// n << pool, used by the simulation loops.
inline std::vector<size_t> sample_indices(size_t pool, size_t n, uint64_t seed) {
  if (n > pool)
    throw ConfigError("cannot draw " + std::to_string(n) + " distinct from " +
                      std::to_string(pool));
  Rng rng(seed);
  std::unordered_set<size_t> chosen;
  std::vector<size_t> out;
  out.reserve(n);
  for (size_t j = pool - n; j < pool; ++j) {
    size_t t = static_cast<size_t>(rng.below(j + 1));
    if (chosen.insert(t).second)
      out.push_back(t);
    else {
      chosen.insert(j);
      out.push_back(j);
    }
  }
  return out;
}

/// Weighted sample without replacement (Efraimidis-Spirakis): keeps the n
/// items with the largest u^(1/w) keys.
inline std::vector<size_t> weighted_sample_indices(const std::vector<double>& weights,
                                                   size_t n, uint64_t seed) {
  if (n > weights.size())
    throw ConfigError("weighted sample larger than pool");
  Rng rng(seed);
  std::vector<std::pair<double, size_t>> keyed(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    double u = rng.unit();
    keyed[i] = {std::pow(u, 1.0 / weights[i]), i};
  }
  std::nth_element(keyed.begin(), keyed.begin() + static_cast<long>(n), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<size_t> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = keyed[i].second;
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace privaudit
