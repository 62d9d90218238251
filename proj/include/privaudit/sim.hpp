#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "privaudit/core.hpp"
#include "privaudit/generators.hpp"
#include "privaudit/matcher.hpp"
#include "privaudit/membership.hpp"
#include "privaudit/rng.hpp"
#include "privaudit/sampling.hpp"
#include "privaudit/similarity.hpp"

#include "json.hpp"

namespace privaudit {

/// Curve output of one simulation scenario: header + string rows, plus the
/// parameter record so a run can be replayed bit-exactly.
struct ScenarioResult {
  std::string scenario;
  nlohmann::ordered_json params;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  size_t iterations = 0;
  uint64_t seed = 0;

  std::string to_csv() const {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
};

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Two-population simulation: precision of a matching adversary whose targets
// come from the training data's own population (scenario A) versus a
// super-population (scenario B).

struct TwoPopulationConfig {
  size_t super_population = 322835;
  size_t sub_population = 2172;
  size_t training = 1000;
  size_t attack = 1000;
  size_t iterations = 1000;
  double male_weight = 3.2; // incidence weighting inside the sub-population
  GeneratorSpec::Kind generator = GeneratorSpec::Kind::swr;
  uint64_t seed = 0;
};

struct TwoPopulationResult {
  double precision_a = 0;
  double precision_b = 0;
  double sd_a = 0;
  double sd_b = 0;
  ScenarioResult scenario;
};

inline TwoPopulationResult sim_two_population(const TwoPopulationConfig& cfg) {
  if (cfg.sub_population > cfg.super_population)
    throw ConfigError("sub-population cannot exceed the super-population");
  if (cfg.training > cfg.sub_population)
    throw ConfigError("training sample cannot exceed the sub-population");
  if (cfg.attack > cfg.sub_population)
    throw ConfigError("attack sample cannot exceed the sub-population");
  if (cfg.iterations == 0) throw ConfigError("iterations must be positive");

  // Super-population demographics: uniform 5-year age bands 20-39, balanced
  // gender. The sub-population is drawn gender-weighted (male incidence ratio).
  const size_t n_super = cfg.super_population;
  std::vector<uint8_t> age(n_super), male(n_super);
  for (size_t i = 0; i < n_super; ++i) {
    Rng rng(derive_seed(cfg.seed, 100, i));
    age[i] = static_cast<uint8_t>(rng.below(4));
    male[i] = static_cast<uint8_t>(rng.below(2));
  }

  std::vector<size_t> sub_index;
  if (cfg.sub_population == n_super) {
    sub_index.resize(n_super);
    for (size_t i = 0; i < n_super; ++i) sub_index[i] = i;
  } else {
    std::vector<double> weights(n_super);
    for (size_t i = 0; i < n_super; ++i) weights[i] = male[i] ? cfg.male_weight : 1.0;
    sub_index = weighted_sample_indices(weights, cfg.sub_population, derive_seed(cfg.seed, 1));
  }

  auto train_pick = sample_indices(sub_index.size(), cfg.training, derive_seed(cfg.seed, 2));
  std::vector<uint8_t> is_member(n_super, 0);
  std::vector<size_t> train_ids(cfg.training);
  for (size_t i = 0; i < cfg.training; ++i) {
    train_ids[i] = sub_index[train_pick[i]];
    is_member[train_ids[i]] = 1;
  }

  // Synthetic data of training size; only the (age, gender) combination set
  // matters for matching.
  std::array<uint8_t, 8> synth_combo{};
  const size_t m = cfg.training;
  for (size_t i = 0; i < m; ++i) {
    Rng rng(derive_seed(cfg.seed, 3, i));
    uint8_t a, g;
    if (cfg.generator == GeneratorSpec::Kind::swr) {
      size_t src = train_ids[rng.below(m)];
      a = age[src];
      g = male[src];
    } else { // independent marginals of the training sample
      size_t ra = train_ids[rng.below(m)];
      size_t rg = train_ids[rng.below(m)];
      a = age[ra];
      g = male[rg];
    }
    synth_combo[static_cast<size_t>(a) * 2 + g] = 1;
  }

  auto run_scenario = [&](bool from_sub, uint64_t stream) {
    double sum = 0, sumsq = 0;
    for (size_t it = 0; it < cfg.iterations; ++it) {
      const uint64_t s = derive_seed(cfg.seed, stream, it);
      std::vector<size_t> picks =
          from_sub ? sample_indices(sub_index.size(), cfg.attack, s)
                   : sample_indices(n_super, cfg.attack, s);
      size_t matched = 0, tp = 0;
      for (size_t p : picks) {
        const size_t id = from_sub ? sub_index[p] : p;
        if (synth_combo[static_cast<size_t>(age[id]) * 2 + male[id]]) {
          ++matched;
          tp += is_member[id];
        }
      }
      const double prec = matched ? static_cast<double>(tp) / static_cast<double>(matched) : 0.0;
      sum += prec;
      sumsq += prec * prec;
    }
    const double mean = sum / static_cast<double>(cfg.iterations);
    const double var = std::max(0.0, sumsq / static_cast<double>(cfg.iterations) - mean * mean);
    return std::pair<double, double>(mean, std::sqrt(var));
  };

  TwoPopulationResult res;
  auto [pa, sa] = run_scenario(true, 4);
  auto [pb, sb] = run_scenario(false, 5);
  res.precision_a = pa;
  res.sd_a = sa;
  res.precision_b = pb;
  res.sd_b = sb;

  res.scenario.scenario = "two-population";
  res.scenario.iterations = cfg.iterations;
  res.scenario.seed = cfg.seed;
  res.scenario.params = {{"super_population", cfg.super_population},
                         {"sub_population", cfg.sub_population},
                         {"training", cfg.training},
                         {"attack", cfg.attack},
                         {"iterations", cfg.iterations},
                         {"male_weight", cfg.male_weight},
                         {"generator", to_string(cfg.generator)},
                         {"seed", cfg.seed}};
  res.scenario.header = {"scenario", "precision", "sd", "iterations"};
  res.scenario.rows = {
      {"A", detail::fmt(pa), detail::fmt(sa), std::to_string(cfg.iterations)},
      {"B", detail::fmt(pb), detail::fmt(sb), std::to_string(cfg.iterations)}};
  return res;
}

// ---------------------------------------------------------------------------
// Subset sweep: F1 for every QI subset against the synthetic data and against
// the raw training data (baseline), aggregated per subset size.

struct SubsetSweepConfig {
  size_t attributes = 10;
  size_t population = 5000;
  size_t training = 1000;
  size_t attack = 1000;
  GeneratorSpec::Kind generator = GeneratorSpec::Kind::marginal;
  int parallelism = 0;
  uint64_t seed = 0;
};

struct SubsetSweepResult {
  std::vector<SubsetSizeAggregate> synthetic_curve;
  std::vector<SubsetSizeAggregate> baseline_curve;
  double f_naive = 0;
  double t = 0;
  ScenarioResult scenario;
};

/// Synthetic categorical population used by the sweep fixture: per-attribute
/// category counts 3..6 with skewed marginals, attributes independent.
inline Dataset sweep_population(size_t rows, size_t attributes, uint64_t seed) {
  Dataset d;
  d.ids.resize(rows);
  for (size_t i = 0; i < rows; ++i) d.ids[i] = i;
  for (size_t a = 0; a < attributes; ++a) {
    AttributeSchema s;
    s.name = "q" + std::to_string(a);
    s.kind = AttributeKind::categorical;
    s.role = AttributeRole::quasi_identifier;
    d.schema.push_back(s);

    const size_t cats = 3 + a % 4;
    // cumulative weights proportional to 1/(k+1)
    std::vector<double> cum(cats);
    double total = 0;
    for (size_t k = 0; k < cats; ++k) {
      total += 1.0 / static_cast<double>(k + 1);
      cum[k] = total;
    }
    CategoricalColumn col;
    for (size_t k = 0; k < cats; ++k) col.intern("v" + std::to_string(k));
    col.codes.resize(rows);
    for (size_t r = 0; r < rows; ++r) {
      Rng rng(derive_seed(seed, a * 1000003 + 17, r));
      const double u = rng.unit() * total;
      size_t k = 0;
      while (k + 1 < cats && u > cum[k]) ++k;
      col.codes[r] = static_cast<int32_t>(k);
    }
    d.columns.emplace_back(std::move(col));
  }
  return d;
}

inline SubsetSweepResult sim_subset_sweep(const SubsetSweepConfig& cfg) {
  if (cfg.training >= cfg.population)
    throw ConfigError("training sample must be smaller than the population");

  Dataset population = sweep_population(cfg.population, cfg.attributes, derive_seed(cfg.seed, 1));
  Dataset train = sample(population, cfg.training, derive_seed(cfg.seed, 2));

  // Holdout pool = population minus the training rows (by id).
  std::unordered_set<uint64_t> train_ids(train.ids.begin(), train.ids.end());
  std::vector<size_t> holdout_rows;
  holdout_rows.reserve(cfg.population - cfg.training);
  for (size_t r = 0; r < population.rows(); ++r)
    if (!train_ids.count(population.ids[r])) holdout_rows.push_back(r);
  Dataset holdout = take_rows(population, holdout_rows);

  const double t = static_cast<double>(cfg.training) / static_cast<double>(cfg.population);
  AttackSet attack =
      build_attack_set(train, holdout, train.rows(), population.rows(), cfg.attack,
                       derive_seed(cfg.seed, 3));

  GeneratorSpec gen{cfg.generator, derive_seed(cfg.seed, 4), cfg.training};
  Dataset synthetic = generate(gen, train);

  SearchOptions opt;
  opt.parallelism = cfg.parallelism;
  opt.cap = std::max<size_t>(cfg.attributes, 20);

  const auto qis = population.qi_names();
  SubsetSweepResult res;
  res.t = t;
  res.f_naive = f_naive(t, 1.0);
  res.synthetic_curve = worst_case_search(attack, synthetic, qis, 1.0, opt).curve;
  res.baseline_curve = worst_case_search(attack, train, qis, 1.0, opt).curve;

  res.scenario.scenario = "subset-sweep";
  res.scenario.iterations = 1;
  res.scenario.seed = cfg.seed;
  res.scenario.params = {{"attributes", cfg.attributes},
                         {"population", cfg.population},
                         {"training", cfg.training},
                         {"attack", cfg.attack},
                         {"t", t},
                         {"generator", to_string(cfg.generator)},
                         {"seed", cfg.seed}};
  res.scenario.header = {"size",          "synthetic_mean", "synthetic_max",
                         "synthetic_sd",  "baseline_mean",  "baseline_max",
                         "baseline_sd",   "subsets",        "f_naive"};
  for (size_t i = 0; i < res.synthetic_curve.size(); ++i) {
    const auto& s = res.synthetic_curve[i];
    const auto& b = res.baseline_curve[i];
    res.scenario.rows.push_back({std::to_string(s.size), detail::fmt(s.mean),
                                 detail::fmt(s.max), detail::fmt(s.sd),
                                 detail::fmt(b.mean), detail::fmt(b.max),
                                 detail::fmt(b.sd), std::to_string(s.subsets),
                                 detail::fmt(res.f_naive)});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Holdout exact-match simulation: how the synthetic-to-holdout match fraction
// tracks the ground-truth k-map vulnerability at different original sizes.

struct HoldoutMatchConfig {
  size_t population = 20000;
  std::vector<size_t> ks{1, 5, 20};
  std::vector<size_t> original_sizes{50, 500, 5000};
  double train_ratio = 0.8;
  size_t iterations = 5;
  uint64_t seed = 0;
};

struct HoldoutMatchCell {
  size_t k = 0;
  size_t original_size = 0;
  double match_fraction = 0; // synthetic rows with an exact holdout match
  bool std_all_zero = true;  // every synthetic row exactly matches training
};

struct HoldoutMatchResult {
  std::vector<HoldoutMatchCell> cells;
  ScenarioResult scenario;
};

/// Population whose equivalence classes all have size exactly k: population/k
/// distinct profiles, k copies each, in shuffled order.
inline Dataset uniform_k_population(size_t rows, size_t k, uint64_t seed) {
  const size_t combos = rows / k;
  if (combos == 0) throw ConfigError("population too small for the requested k");
  const size_t usable = combos * k;

  Dataset d;
  AttributeSchema a1{"qa", AttributeKind::categorical, AttributeRole::quasi_identifier, 20};
  AttributeSchema a2{"qb", AttributeKind::categorical, AttributeRole::quasi_identifier, 20};
  d.schema = {a1, a2};
  CategoricalColumn ca, cb;
  ca.codes.resize(usable);
  cb.codes.resize(usable);
  auto order = detail::shuffled_indices(usable, seed);
  for (size_t i = 0; i < usable; ++i) {
    const size_t combo = order[i] / k;
    ca.codes[i] = ca.intern("a" + std::to_string(combo / 97));
    cb.codes[i] = cb.intern("b" + std::to_string(combo % 97));
  }
  d.columns.emplace_back(std::move(ca));
  d.columns.emplace_back(std::move(cb));
  d.ids.resize(usable);
  for (size_t i = 0; i < usable; ++i) d.ids[i] = i;
  return d;
}

inline HoldoutMatchResult sim_holdout_match(const HoldoutMatchConfig& cfg) {
  if (cfg.iterations == 0) throw ConfigError("iterations must be positive");
  HoldoutMatchResult res;
  const std::vector<std::string> attrs{"qa", "qb"};

  for (size_t k : cfg.ks) {
    Dataset population = uniform_k_population(cfg.population, k, derive_seed(cfg.seed, k));
    for (size_t size : cfg.original_sizes) {
      if (size > population.rows())
        throw ConfigError("original size exceeds population");
      HoldoutMatchCell cell;
      cell.k = k;
      cell.original_size = size;
      double frac_sum = 0;
      for (size_t it = 0; it < cfg.iterations; ++it) {
        const uint64_t s = derive_seed(cfg.seed, k * 1000003 + size, it);
        Dataset original = sample(population, size, derive_seed(s, 1));
        Partition part = partition(original, cfg.train_ratio, derive_seed(s, 2));
        Dataset train = take_rows(original, part.train_rows);
        Dataset holdout = take_rows(original, part.holdout_rows);
        Dataset synthetic = swr_generate(train, train.rows(), derive_seed(s, 3));

        detail::SharedEncoder enc(attrs);
        auto synth_cols = enc.encode(synthetic);
        auto train_cols = enc.encode(train);
        auto holdout_cols = enc.encode(holdout);
        std::unordered_set<std::vector<int32_t>, detail::VecHash> train_keys, holdout_keys;
        for (size_t r = 0; r < train.rows(); ++r)
          train_keys.insert(detail::row_key(train_cols, r));
        for (size_t r = 0; r < holdout.rows(); ++r)
          holdout_keys.insert(detail::row_key(holdout_cols, r));
        size_t holdout_matches = 0;
        for (size_t r = 0; r < synthetic.rows(); ++r) {
          auto key = detail::row_key(synth_cols, r);
          if (!train_keys.count(key)) cell.std_all_zero = false;
          holdout_matches += holdout_keys.count(key) ? 1 : 0;
        }
        frac_sum += static_cast<double>(holdout_matches) / static_cast<double>(synthetic.rows());
      }
      cell.match_fraction = frac_sum / static_cast<double>(cfg.iterations);
      res.cells.push_back(cell);
    }
  }

  res.scenario.scenario = "holdout-match";
  res.scenario.iterations = cfg.iterations;
  res.scenario.seed = cfg.seed;
  nlohmann::ordered_json ks = nlohmann::ordered_json::array();
  for (size_t k : cfg.ks) ks.push_back(k);
  nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
  for (size_t s : cfg.original_sizes) sizes.push_back(s);
  res.scenario.params = {{"population", cfg.population},
                         {"k", ks},
                         {"original_sizes", sizes},
                         {"train_ratio", cfg.train_ratio},
                         {"iterations", cfg.iterations},
                         {"generator", "swr"},
                         {"seed", cfg.seed}};
  res.scenario.header = {"k", "original_size", "holdout_match_fraction", "std_all_zero"};
  for (const auto& c : res.cells)
    res.scenario.rows.push_back({std::to_string(c.k), std::to_string(c.original_size),
                                 detail::fmt(c.match_fraction),
                                 c.std_all_zero ? "true" : "false"});
  return res;
}

} // namespace privaudit
