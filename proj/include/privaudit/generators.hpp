#pragma once

#include <string>
#include <vector>

#include "privaudit/core.hpp"
#include "privaudit/rng.hpp"
#include "privaudit/sampling.hpp"

namespace privaudit {

/// Toy generators powering the simulations. swr mimics a poorly generalizing
/// SDG model; marginal is the generalizing stand-in (independent attributes).
/// Neither claims to produce useful synthetic data.
struct GeneratorSpec {
  enum class Kind { swr, marginal };
  Kind kind = Kind::swr;
  uint64_t seed = 0;
  size_t output_size = 0;
};

inline const char* to_string(GeneratorSpec::Kind k) {
  return k == GeneratorSpec::Kind::swr ? "swr" : "marginal";
}

/// m rows drawn uniformly with replacement from the training dataset.
/// Per-row counter-based seeding keeps row i independent of the others.
inline Dataset swr_generate(const Dataset& train, size_t m, uint64_t seed) {
  if (train.rows() == 0) throw ConfigError("swr_generate: empty training dataset");
  std::vector<size_t> rows(m);
  for (size_t i = 0; i < m; ++i) {
    Rng rng(derive_seed(seed, i));
    rows[i] = static_cast<size_t>(rng.below(train.rows()));
  }
  Dataset out = take_rows(train, rows);
  for (size_t i = 0; i < m; ++i) out.ids[i] = i; // synthetic rows are new records
  return out;
}

/// Each attribute sampled independently from its empirical training marginal.
inline Dataset marginal_generate(const Dataset& train, size_t m, uint64_t seed) {
  if (train.rows() == 0) throw ConfigError("marginal_generate: empty training dataset");
  for (size_t a = 0; a < train.schema.size(); ++a)
    if (!train.is_categorical(a))
      throw ConfigError("marginal_generate requires a fully categorical dataset; "
                        "discretize " + train.schema[a].name + " first");

  Dataset out;
  out.schema = train.schema;
  out.ids.resize(m);
  for (size_t i = 0; i < m; ++i) out.ids[i] = i;
  for (size_t a = 0; a < train.schema.size(); ++a) {
    const auto& src = train.categorical(a);
    CategoricalColumn col;
    col.labels = src.labels;
    col.index = src.index;
    col.codes.resize(m);
    for (size_t i = 0; i < m; ++i) {
      Rng rng(derive_seed(seed, i, a));
      col.codes[i] = src.codes[static_cast<size_t>(rng.below(train.rows()))];
    }
    out.columns.emplace_back(std::move(col));
  }
  return out;
}

inline Dataset generate(const GeneratorSpec& spec, const Dataset& train) {
  if (spec.output_size == 0) throw ConfigError("generator output size must be positive");
  return spec.kind == GeneratorSpec::Kind::swr
             ? swr_generate(train, spec.output_size, spec.seed)
             : marginal_generate(train, spec.output_size, spec.seed);
}

} // namespace privaudit
