#pragma once

// Shared fixture builders for the test suites.

#include <string>
#include <vector>

#include "privaudit/core.hpp"
#include "privaudit/rng.hpp"

namespace testutil {

using namespace privaudit;

/// Builds a fully categorical dataset from rows of labels. All attributes are
/// quasi-identifiers unless a role list is given.
inline Dataset make_categorical(const std::vector<std::string>& names,
                                const std::vector<std::vector<std::string>>& rows,
                                const std::vector<AttributeRole>& roles = {}) {
  Dataset d;
  for (size_t a = 0; a < names.size(); ++a) {
    AttributeSchema s;
    s.name = names[a];
    s.kind = AttributeKind::categorical;
    s.role = roles.empty() ? AttributeRole::quasi_identifier : roles[a];
    d.schema.push_back(s);
    d.columns.emplace_back(CategoricalColumn{});
  }
  d.ids.resize(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    d.ids[r] = r;
    for (size_t a = 0; a < names.size(); ++a) {
      auto& col = std::get<CategoricalColumn>(d.columns[a]);
      col.codes.push_back(col.intern(rows[r][a]));
    }
  }
  return d;
}

/// Single continuous QI column.
inline Dataset make_continuous(const std::string& name, const std::vector<double>& values,
                               int bins = 20) {
  Dataset d;
  AttributeSchema s;
  s.name = name;
  s.kind = AttributeKind::continuous;
  s.role = AttributeRole::quasi_identifier;
  s.bins = bins;
  d.schema.push_back(s);
  ContinuousColumn col;
  col.values = values;
  col.missing.assign(values.size(), 0);
  d.columns.emplace_back(std::move(col));
  d.ids.resize(values.size());
  for (size_t i = 0; i < values.size(); ++i) d.ids[i] = i;
  return d;
}

/// Random small categorical dataset for property tests.
inline Dataset random_dataset(Rng& rng, size_t max_rows = 12, size_t max_attrs = 4,
                              size_t max_cats = 3) {
  const size_t attrs = 1 + rng.below(max_attrs);
  const size_t rows = 1 + rng.below(max_rows);
  std::vector<std::string> names;
  for (size_t a = 0; a < attrs; ++a) names.push_back("q" + std::to_string(a));
  std::vector<std::vector<std::string>> data(rows, std::vector<std::string>(attrs));
  for (size_t r = 0; r < rows; ++r)
    for (size_t a = 0; a < attrs; ++a)
      data[r][a] = "v" + std::to_string(rng.below(1 + rng.below(max_cats)));
  return make_categorical(names, data);
}

inline std::vector<std::string> row_labels(const Dataset& d, size_t row) {
  std::vector<std::string> out;
  for (size_t a = 0; a < d.schema.size(); ++a) out.push_back(d.categorical(a).label_at(row));
  return out;
}

} // namespace testutil
