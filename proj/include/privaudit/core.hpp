#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "privaudit/errors.hpp"

namespace privaudit {

enum class AttributeKind { categorical, continuous };
enum class AttributeRole { quasi_identifier, sensitive, other };

/// Label standing in for an empty cell. Missing values are an ordinary
/// category everywhere; dropping rows would silently change prevalences.
inline constexpr const char* kMissingLabel = "⟨missing⟩";

struct AttributeSchema {
  std::string name;
  AttributeKind kind = AttributeKind::categorical;
  AttributeRole role = AttributeRole::other;
  int bins = 20; // continuous attributes only

  bool is_qi() const { return role == AttributeRole::quasi_identifier; }
};

inline const char* to_string(AttributeKind k) {
  return k == AttributeKind::categorical ? "categorical" : "continuous";
}

inline const char* to_string(AttributeRole r) {
  switch (r) {
    case AttributeRole::quasi_identifier: return "quasi-identifier";
    case AttributeRole::sensitive: return "sensitive";
    default: return "other";
  }
}

/// Checks per-schema invariants: unique names, bins >= 2 on continuous.
inline void validate_schema(const std::vector<AttributeSchema>& schema) {
  std::unordered_set<std::string> seen;
  for (const auto& a : schema) {
    if (a.name.empty()) throw SchemaError("attribute with empty name");
    if (!seen.insert(a.name).second)
      throw SchemaError("duplicate attribute name: " + a.name);
    if (a.kind == AttributeKind::continuous && a.bins < 2)
      throw SchemaError("attribute " + a.name + ": bins must be >= 2");
  }
}

struct CategoricalColumn {
  std::vector<int32_t> codes;                       // row -> code
  std::vector<std::string> labels;                  // code -> label
  std::unordered_map<std::string, int32_t> index;   // label -> code

  int32_t intern(const std::string& label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    int32_t code = static_cast<int32_t>(labels.size());
    labels.push_back(label);
    index.emplace(label, code);
    return code;
  }

  const std::string& label_at(size_t row) const { return labels[static_cast<size_t>(codes[row])]; }
};

struct ContinuousColumn {
  std::vector<double> values;
  std::vector<uint8_t> missing;
};

using Column = std::variant<CategoricalColumn, ContinuousColumn>;

/// Immutable-by-convention table of records over a typed attribute schema.
/// Columnar storage; `ids` preserve row identity across sampling/partitioning
/// so member/non-member bookkeeping survives subsetting.
struct Dataset {
  std::vector<AttributeSchema> schema;
  std::vector<Column> columns;
  std::vector<uint64_t> ids;

  size_t rows() const { return ids.size(); }

  int attr_index(const std::string& name) const {
    for (size_t i = 0; i < schema.size(); ++i)
      if (schema[i].name == name) return static_cast<int>(i);
    return -1;
  }

  int require_attr(const std::string& name) const {
    int i = attr_index(name);
    if (i < 0) throw ConfigError("unknown attribute: " + name);
    return i;
  }

  const CategoricalColumn& categorical(size_t col) const {
    const auto* c = std::get_if<CategoricalColumn>(&columns[col]);
    if (!c)
      throw ConfigError("attribute " + schema[col].name +
                        " is continuous; discretize first");
    return *c;
  }

  const ContinuousColumn& continuous(size_t col) const {
    const auto* c = std::get_if<ContinuousColumn>(&columns[col]);
    if (!c) throw ConfigError("attribute " + schema[col].name + " is not continuous");
    return *c;
  }

  bool is_categorical(size_t col) const {
    return std::holds_alternative<CategoricalColumn>(columns[col]);
  }

  std::vector<std::string> qi_names() const {
    std::vector<std::string> out;
    for (const auto& a : schema)
      if (a.is_qi()) out.push_back(a.name);
    return out;
  }

  std::vector<std::string> attribute_names() const {
    std::vector<std::string> out;
    for (const auto& a : schema) out.push_back(a.name);
    return out;
  }
};

/// Audits are undefined without declared quasi-identifiers (rule R1).
inline void require_quasi_identifiers(const Dataset& d) {
  for (const auto& a : d.schema)
    if (a.is_qi()) return;
  throw ConfigError(
      "no quasi-identifier declared in schema; rule R1: disclosure metrics "
      "are computed over quasi-identifiers ascertained by the data controller");
}

/// Row subset preserving ids and schema. Codes keep the source dictionary.
inline Dataset take_rows(const Dataset& d, const std::vector<size_t>& rows) {
  Dataset out;
  out.schema = d.schema;
  out.ids.reserve(rows.size());
  for (size_t r : rows) out.ids.push_back(d.ids[r]);
  out.columns.reserve(d.columns.size());
  for (const auto& col : d.columns) {
    if (const auto* cat = std::get_if<CategoricalColumn>(&col)) {
      CategoricalColumn c;
      c.labels = cat->labels;
      c.index = cat->index;
      c.codes.reserve(rows.size());
      for (size_t r : rows) c.codes.push_back(cat->codes[r]);
      out.columns.emplace_back(std::move(c));
    } else {
      const auto& num = std::get<ContinuousColumn>(col);
      ContinuousColumn c;
      c.values.reserve(rows.size());
      c.missing.reserve(rows.size());
      for (size_t r : rows) {
        c.values.push_back(num.values[r]);
        c.missing.push_back(num.missing[r]);
      }
      out.columns.emplace_back(std::move(c));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV ingestion. UTF-8, header row, comma delimiter, empty cell = missing.
// Double quotes delimit fields containing commas/newlines; "" escapes a quote.

namespace detail {

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"': quoted = true; any = true; break;
      case ',':
        fields.push_back(cur);
        cur.clear();
        any = true;
        break;
      case '\r': break;
      case '\n':
        if (any || !cur.empty() || !fields.empty()) {
          fields.push_back(cur);
          records.push_back(fields);
        }
        fields.clear();
        cur.clear();
        any = false;
        break;
      default: cur.push_back(ch); any = true;
    }
  }
  if (any || !cur.empty() || !fields.empty()) {
    fields.push_back(cur);
    records.push_back(fields);
  }
  return records;
}

inline std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + s.size()) return std::nullopt;
  return v;
}

} // namespace detail

/// Parses a CSV body (already in memory) against a declared schema.
/// Header must contain exactly the schema's attribute names, any order.
inline Dataset load_csv_text(const std::string& text,
                             const std::vector<AttributeSchema>& schema) {
  validate_schema(schema);
  auto records = detail::parse_csv(text);
  if (records.empty()) throw SchemaError("empty CSV: no header row");

  const auto& header = records.front();
  std::unordered_map<std::string, size_t> header_pos;
  for (size_t i = 0; i < header.size(); ++i) {
    if (!header_pos.emplace(header[i], i).second)
      throw SchemaError("duplicate column in CSV header: " + header[i]);
  }
  std::vector<size_t> col_of_attr(schema.size());
  for (size_t a = 0; a < schema.size(); ++a) {
    auto it = header_pos.find(schema[a].name);
    if (it == header_pos.end())
      throw SchemaError("missing column: " + schema[a].name);
    col_of_attr[a] = it->second;
  }
  if (header.size() != schema.size()) {
    for (const auto& [name, pos] : header_pos) {
      bool known = false;
      for (const auto& a : schema) known |= (a.name == name);
      if (!known) throw SchemaError("unexpected column: " + name);
    }
  }

  Dataset out;
  out.schema = schema;
  for (const auto& a : schema) {
    if (a.kind == AttributeKind::categorical)
      out.columns.emplace_back(CategoricalColumn{});
    else
      out.columns.emplace_back(ContinuousColumn{});
  }

  const size_t nrows = records.size() - 1;
  out.ids.resize(nrows);
  for (size_t r = 0; r < nrows; ++r) out.ids[r] = r;

  for (size_t r = 0; r < nrows; ++r) {
    const auto& rec = records[r + 1];
    if (rec.size() != header.size()) {
      throw ParseError("row " + std::to_string(r + 1) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(rec.size()));
    }
    for (size_t a = 0; a < schema.size(); ++a) {
      const std::string& raw = rec[col_of_attr[a]];
      if (schema[a].kind == AttributeKind::categorical) {
        auto& col = std::get<CategoricalColumn>(out.columns[a]);
        col.codes.push_back(col.intern(raw.empty() ? kMissingLabel : raw));
      } else {
        auto& col = std::get<ContinuousColumn>(out.columns[a]);
        if (raw.empty()) {
          col.values.push_back(0.0);
          col.missing.push_back(1);
        } else {
          auto v = detail::parse_double(raw);
          if (!v)
            throw ParseError("row " + std::to_string(r + 1) + ", column " +
                             schema[a].name + ": cannot parse \"" + raw +
                             "\" as a number");
          col.values.push_back(*v);
          col.missing.push_back(0);
        }
      }
    }
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Dataset load_csv(const std::string& path,
                        const std::vector<AttributeSchema>& schema) {
  return load_csv_text(read_file(path), schema);
}

/// Content fingerprint (FNV-1a 64) for run manifests; replay aid, not crypto.
inline std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

} // namespace privaudit
