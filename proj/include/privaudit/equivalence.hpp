#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "privaudit/core.hpp"

namespace privaudit {

namespace detail {

struct VecHash {
  size_t operator()(const std::vector<int32_t>& v) const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (int32_t x : v) {
      h ^= static_cast<uint64_t>(static_cast<uint32_t>(x));
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<size_t>(h);
  }
};

/// Encodes the selected attributes of one or more datasets into a shared
/// per-attribute code space so that key tuples compare by label, not by each
/// dataset's private dictionary.
class SharedEncoder {
public:
  explicit SharedEncoder(const std::vector<std::string>& attrs) : attrs_(attrs) {
    dicts_.resize(attrs.size());
  }

  /// Returns column-major codes: one vector per attribute, length rows().
  std::vector<std::vector<int32_t>> encode(const Dataset& d) {
    std::vector<std::vector<int32_t>> cols(attrs_.size());
    for (size_t a = 0; a < attrs_.size(); ++a) {
      size_t ci = static_cast<size_t>(d.require_attr(attrs_[a]));
      const auto& cat = d.categorical(ci);
      // Map the dataset's local codes to shared codes once.
      std::vector<int32_t> local_to_shared(cat.labels.size());
      for (size_t code = 0; code < cat.labels.size(); ++code) {
        auto [it, inserted] = dicts_[a].emplace(
            cat.labels[code], static_cast<int32_t>(dicts_[a].size()));
        local_to_shared[code] = it->second;
      }
      auto& out = cols[a];
      out.resize(d.rows());
      for (size_t r = 0; r < d.rows(); ++r)
        out[r] = local_to_shared[static_cast<size_t>(cat.codes[r])];
    }
    return cols;
  }

  size_t width() const { return attrs_.size(); }

private:
  std::vector<std::string> attrs_;
  std::vector<std::unordered_map<std::string, int32_t>> dicts_;
};

inline std::vector<int32_t> row_key(const std::vector<std::vector<int32_t>>& cols,
                                    size_t row) {
  std::vector<int32_t> key(cols.size());
  for (size_t a = 0; a < cols.size(); ++a) key[a] = cols[a][row];
  return key;
}

using GroupMap = std::unordered_map<std::vector<int32_t>, std::vector<size_t>, VecHash>;

inline GroupMap group_rows(const std::vector<std::vector<int32_t>>& cols, size_t nrows) {
  GroupMap groups;
  for (size_t r = 0; r < nrows; ++r) groups[row_key(cols, r)].push_back(r);
  return groups;
}

} // namespace detail

/// Grouping of records by exact QI value combination; ground truth for
/// identity-disclosure reasoning. Per-record k is the size of the record's
/// own group.
struct EquivalenceIndex {
  std::vector<std::vector<size_t>> groups; // member row indices per group
  std::vector<size_t> k;                   // per record: own group size
  std::vector<size_t> group_of;            // per record: group ordinal

  size_t group_count() const { return groups.size(); }

  /// Mean of 1/k over records; equals group_count / rows.
  double mean_vulnerability() const {
    if (k.empty()) return 0.0;
    double s = 0;
    for (size_t kk : k) s += 1.0 / static_cast<double>(kk);
    return s / static_cast<double>(k.size());
  }

  double max_vulnerability() const {
    double m = 0;
    for (size_t kk : k) m = std::max(m, 1.0 / static_cast<double>(kk));
    return m;
  }
};

/// Groups records by their exact value combination over `attrs`. Attributes
/// must be declared quasi-identifiers and categorical (discretize first).
inline EquivalenceIndex equivalence_classes(const Dataset& data,
                                            const std::vector<std::string>& attrs) {
  if (attrs.empty()) throw ConfigError("equivalence_classes: no attributes given");
  for (const auto& name : attrs) {
    int i = data.require_attr(name);
    if (!data.schema[static_cast<size_t>(i)].is_qi())
      throw ConfigError("attribute " + name +
                        " is not declared a quasi-identifier (rule R1)");
  }
  detail::SharedEncoder enc(attrs);
  auto cols = enc.encode(data);
  auto groups = detail::group_rows(cols, data.rows());

  EquivalenceIndex idx;
  idx.k.resize(data.rows());
  idx.group_of.resize(data.rows());
  idx.groups.reserve(groups.size());
  for (auto& [key, rows] : groups) {
    size_t g = idx.groups.size();
    for (size_t r : rows) {
      idx.k[r] = rows.size();
      idx.group_of[r] = g;
    }
    idx.groups.push_back(std::move(rows));
  }
  return idx;
}

struct KMapResult {
  std::vector<double> vulnerability; // per sample record: 1 / population k
  double max_vulnerability = 0;
  double mean_vulnerability = 0;
  size_t unseen_combinations = 0; // sample combos absent from the population
};

/// k-map: each sample record's vulnerability is 1/k with k its combination's
/// equivalence-class size in the population. Combinations absent from the
/// population fall back to their frequency in the sample, which never
/// understates the vulnerability.
inline KMapResult k_map_vulnerability(const Dataset& sample, const Dataset& population,
                                      const std::vector<std::string>& attrs) {
  if (attrs.empty()) throw ConfigError("k_map_vulnerability: no attributes given");
  for (const auto& name : attrs) {
    sample.require_attr(name);
    population.require_attr(name);
  }
  detail::SharedEncoder enc(attrs);
  auto sample_cols = enc.encode(sample);
  auto pop_cols = enc.encode(population);

  std::unordered_map<std::vector<int32_t>, size_t, detail::VecHash> pop_count;
  for (size_t r = 0; r < population.rows(); ++r) pop_count[detail::row_key(pop_cols, r)]++;
  std::unordered_map<std::vector<int32_t>, size_t, detail::VecHash> sample_count;
  for (size_t r = 0; r < sample.rows(); ++r) sample_count[detail::row_key(sample_cols, r)]++;

  KMapResult out;
  out.vulnerability.resize(sample.rows());
  double sum = 0;
  for (size_t r = 0; r < sample.rows(); ++r) {
    auto key = detail::row_key(sample_cols, r);
    auto it = pop_count.find(key);
    size_t k;
    if (it != pop_count.end()) {
      k = it->second;
    } else {
      k = sample_count[key];
      ++out.unseen_combinations;
    }
    double v = 1.0 / static_cast<double>(k);
    out.vulnerability[r] = v;
    out.max_vulnerability = std::max(out.max_vulnerability, v);
    sum += v;
  }
  if (!out.vulnerability.empty())
    out.mean_vulnerability = sum / static_cast<double>(out.vulnerability.size());
  return out;
}

} // namespace privaudit
