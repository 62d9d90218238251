#pragma once

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "privaudit/core.hpp"

namespace privaudit {

/// Equal-width binning fitted on one dataset and applicable to others.
/// Cross-dataset comparisons (synthetic vs attack records) must reuse the
/// training dataset's edges, so fitting and application are separate steps.
class Discretizer {
public:
  struct Edges {
    std::string attr;
    double lo = 0;
    double hi = 0;
    int bins = 0;
  };

  /// Learns [min, max] per continuous attribute. `bins_override` > 0 replaces
  /// every attribute's schema bin count.
  static Discretizer fit(const Dataset& data, int bins_override = 0) {
    Discretizer d;
    for (size_t a = 0; a < data.schema.size(); ++a) {
      if (data.schema[a].kind != AttributeKind::continuous) continue;
      if (!data.is_categorical(a)) {
        const auto& col = data.continuous(a);
        Edges e;
        e.attr = data.schema[a].name;
        e.bins = bins_override > 0 ? bins_override : data.schema[a].bins;
        if (e.bins < 2) throw ConfigError("bins must be >= 2");
        bool any = false;
        for (size_t r = 0; r < col.values.size(); ++r) {
          if (col.missing[r]) continue;
          if (!any) {
            e.lo = e.hi = col.values[r];
            any = true;
          } else {
            e.lo = std::min(e.lo, col.values[r]);
            e.hi = std::max(e.hi, col.values[r]);
          }
        }
        if (!any)
          throw ConfigError("attribute " + e.attr +
                            " has no observed values; cannot fit bin edges");
        d.edges_.push_back(e);
      }
    }
    return d;
  }

  /// Replaces each fitted continuous attribute with categorical bin labels
  /// bin0..bin{k-1}. The maximum value maps to the top bin; values outside
  /// the fitted range (possible when applying training edges to another
  /// dataset) clamp into the boundary bins. min == max collapses to "bin0".
  /// Attributes listed in `keep_continuous` are passed through unchanged.
  Dataset apply(const Dataset& data,
                const std::unordered_set<std::string>& keep_continuous = {}) const {
    Dataset out;
    out.schema = data.schema;
    out.ids = data.ids;
    out.columns = data.columns;
    for (const auto& e : edges_) {
      if (keep_continuous.count(e.attr)) continue;
      int a = out.attr_index(e.attr);
      if (a < 0) continue; // attribute absent from this dataset
      if (out.is_categorical(static_cast<size_t>(a))) continue; // already binned
      const auto& src = data.continuous(static_cast<size_t>(a));
      CategoricalColumn col;
      col.codes.reserve(src.values.size());
      const bool degenerate = !(e.hi > e.lo);
      const double width = (e.hi - e.lo) / e.bins;
      for (size_t r = 0; r < src.values.size(); ++r) {
        if (src.missing[r]) {
          col.codes.push_back(col.intern(kMissingLabel));
          continue;
        }
        int b = 0;
        if (!degenerate) {
          b = static_cast<int>(std::floor((src.values[r] - e.lo) / width));
          if (b < 0) b = 0;
          if (b >= e.bins) b = e.bins - 1;
        }
        col.codes.push_back(col.intern("bin" + std::to_string(b)));
      }
      out.schema[static_cast<size_t>(a)].kind = AttributeKind::categorical;
      out.columns[static_cast<size_t>(a)] = std::move(col);
    }
    return out;
  }

  const std::vector<Edges>& edges() const { return edges_; }

private:
  std::vector<Edges> edges_;
};

/// One-shot form: fit on `data`, apply to `data`. Idempotent on data that is
/// already fully categorical.
inline Dataset discretize(const Dataset& data, int bins) {
  if (bins < 2) throw ConfigError("bins must be >= 2");
  return Discretizer::fit(data, bins).apply(data);
}

} // namespace privaudit
