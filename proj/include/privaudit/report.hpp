#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "privaudit/attribute.hpp"
#include "privaudit/equivalence.hpp"
#include "privaudit/membership_audit.hpp"
#include "privaudit/policy.hpp"
#include "privaudit/similarity.hpp"
#include "privaudit/version.hpp"

#include "json.hpp"

namespace privaudit {

using ordered_json = nlohmann::ordered_json;

struct SimilaritySection {
  std::vector<std::string> attrs;
  size_t tsd_vs_thd = 0;
  size_t std_vs_shd = 0;
  size_t tsd_vs_ttd = 0;
  size_t exact_match_vr = 0;
  size_t training_rows = 0;
  size_t holdout_rows = 0; // reported alongside: the baseline is uncalibrated
  size_t synthetic_rows = 0;
};

struct KMapSection {
  std::vector<std::string> attrs;
  std::string source; // "training-sample (conservative)" or "population"
  size_t groups = 0;
  double max_vulnerability = 0;
  double mean_vulnerability = 0;
  size_t unseen_combination_records = 0;
};

/// One audited synthetic dataset (cmd_audit may cover several, rule R2).
struct AuditFileSection {
  std::string name;
  MembershipReport membership;
  MembershipDecision membership_decision;
  AttributeReport attribute;
  std::optional<SimilaritySection> similarity;
};

struct AuditDocument {
  ordered_json provenance; // inputs, digests, config, seed, version
  Thresholds thresholds;
  std::vector<AuditFileSection> files;
  std::optional<KMapSection> kmap;
  std::optional<EpsilonReport> epsilon;
};

namespace detail {

inline ordered_json score_json(const Score& s) {
  ordered_json j;
  j["value"] = s.value;
  j["defined"] = s.defined;
  if (s.degenerate) j["degenerate"] = true;
  if (!s.flag.empty()) j["flag"] = s.flag;
  return j;
}

inline ordered_json membership_json(const MembershipReport& m,
                                    const MembershipDecision& dec) {
  ordered_json j;
  j["t"] = m.t;
  j["training_size"] = m.training_size;
  if (m.population_size) j["population_size"] = *m.population_size;
  j["attack_size"] = m.attack_size;
  j["seed"] = m.seed;
  ordered_json betas = ordered_json::array();
  for (const auto& b : m.per_beta) {
    ordered_json bj;
    bj["beta"] = b.beta;
    bj["f_beta"] = score_json(b.f);
    bj["f_naive"] = b.naive;
    bj["f_rel"] = score_json(b.rel);
    bj["worst_subset"] = b.search.best_subset;
    bj["subsets_evaluated"] = b.search.subsets_evaluated;
    ordered_json curve = ordered_json::array();
    for (const auto& c : b.search.curve) {
      ordered_json cj;
      cj["size"] = c.size;
      cj["mean"] = c.mean;
      cj["max"] = c.max;
      cj["sd"] = c.sd;
      cj["subsets"] = c.subsets;
      curve.push_back(cj);
    }
    bj["curve"] = curve;
    betas.push_back(bj);
  }
  j["per_beta"] = betas;
  j["headline_f_rel"] = m.headline_f_rel;
  j["headline_defined"] = m.headline_defined;
  j["f_naive_alone_high"] = m.naive_alone_high;
  j["decision"] = to_string(dec.outcome);
  j["anchor"] = dec.anchor;
  j["anchor_note"] = "suggested anchor, not a validated threshold (rule R7)";
  if (!dec.note.empty()) j["decision_note"] = dec.note;
  j["notes"] = m.notes;
  return j;
}

inline ordered_json attribute_json(const AttributeReport& a) {
  ordered_json j;
  j["keys"] = a.keys;
  j["target"] = a.target;
  j["measurement"] = to_string(a.measurement);
  j["policy"] = to_string(a.policy);
  j["records_per_side"] = a.records_per_side;
  j["defined_members"] = a.defined_members;
  j["defined_non_members"] = a.defined_non_members;
  j["a_members"] = a.a_members;
  j["a_non_members"] = a.a_non_members;
  j["a_rel"] = a.a_rel;
  j["r_ratio"] = score_json(a.r);
  j["attack_strength"] = a.s;
  j["a_naive"] = a.a_naive;
  j["weak_attack"] = a.weak_attack;
  j["valid"] = a.valid;
  if (a.measurement == MeasurementKind::numeric_tolerance) j["tolerance"] = a.tolerance;
  if (a.measurement == MeasurementKind::auroc) j["positive_label"] = a.positive_label;
  j["thresholds"] = {{"abs", a.thresholds.abs}, {"rel", a.thresholds.rel}};
  j["decision"] = a.decision.high ? "high" : "acceptable";
  j["notes"] = a.notes;
  return j;
}

inline ordered_json similarity_json(const SimilaritySection& s) {
  ordered_json j;
  j["warning"] = kSimilarityDeprecationWarning;
  j["deprecated"] = true;
  j["attrs"] = s.attrs;
  j["vr_tsd_vs_thd"] = s.tsd_vs_thd;
  j["vr_std_vs_shd"] = s.std_vs_shd;
  j["vr_tsd_vs_ttd"] = s.tsd_vs_ttd;
  j["exact_match_vr"] = s.exact_match_vr;
  j["training_rows"] = s.training_rows;
  j["holdout_rows"] = s.holdout_rows;
  j["synthetic_rows"] = s.synthetic_rows;
  return j;
}

inline ordered_json kmap_json(const KMapSection& k) {
  ordered_json j;
  j["attrs"] = k.attrs;
  j["source"] = k.source;
  j["groups"] = k.groups;
  j["max_vulnerability"] = k.max_vulnerability;
  j["mean_vulnerability"] = k.mean_vulnerability;
  j["unseen_combination_records"] = k.unseen_combination_records;
  return j;
}

inline ordered_json epsilon_json(const EpsilonReport& e) {
  ordered_json j;
  j["epsilon"] = e.epsilon;
  j["gain"] = e.gain;
  j["classification"] = e.classification;
  j["interpretable"] = e.interpretable;
  j["large_budget"] = e.large_budget;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

inline ordered_json thresholds_json(const Thresholds& t) {
  Thresholds eff = t.effective();
  ordered_json j;
  j["f_rel_anchor"] = eff.f_rel_anchor;
  j["a_rel"] = eff.a_rel;
  j["a_abs"] = eff.a_abs;
  j["epsilon_near_zero"] = eff.epsilon_near_zero;
  ordered_json adjustments = ordered_json::array();
  for (const auto& adj : t.adjustments) {
    ordered_json aj;
    aj["target"] = adj.target;
    aj["delta"] = adj.delta;
    aj["justification"] = adj.justification;
    adjustments.push_back(aj);
  }
  j["adjustments"] = adjustments;
  return j;
}

inline std::string fmt_or(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number()) return "?";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", j[key].get<double>());
  return buf;
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double sd_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double m = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

} // namespace detail

/// Assembles the versioned machine-readable report. Key order is fixed by
/// construction, so rendering is byte-stable.
inline ordered_json build_report(const AuditDocument& doc) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["provenance"] = doc.provenance;
  j["thresholds"] = detail::thresholds_json(doc.thresholds);

  ordered_json files = ordered_json::array();
  bool any_high = false, any_not_evaluable = false;
  std::vector<double> frels, arels, amembers;
  for (const auto& f : doc.files) {
    ordered_json fj;
    fj["name"] = f.name;
    fj["membership"] = detail::membership_json(f.membership, f.membership_decision);
    fj["attribute"] = detail::attribute_json(f.attribute);
    if (f.similarity) fj["deprecated_similarity"] = detail::similarity_json(*f.similarity);
    files.push_back(fj);

    if (f.membership_decision.outcome == MembershipOutcome::high) any_high = true;
    if (f.membership_decision.outcome == MembershipOutcome::not_evaluable)
      any_not_evaluable = true;
    if (f.attribute.decision.high) any_high = true;
    if (f.membership.headline_defined) frels.push_back(f.membership.headline_f_rel);
    arels.push_back(f.attribute.a_rel);
    amembers.push_back(f.attribute.a_members);
  }
  if (doc.files.size() == 1) {
    j["membership"] = files[0]["membership"];
    j["attribute"] = files[0]["attribute"];
    if (files[0].contains("deprecated_similarity"))
      j["deprecated_similarity"] = files[0]["deprecated_similarity"];
  } else {
    j["synthetic_files"] = files;
    ordered_json agg;
    agg["files"] = doc.files.size();
    agg["f_rel_mean"] = detail::mean_of(frels);
    agg["f_rel_sd"] = detail::sd_of(frels);
    agg["a_rel_mean"] = detail::mean_of(arels);
    agg["a_rel_sd"] = detail::sd_of(arels);
    agg["a_members_mean"] = detail::mean_of(amembers);
    agg["a_members_sd"] = detail::sd_of(amembers);
    j["aggregate"] = agg;
  }

  if (doc.kmap) j["k_map"] = detail::kmap_json(*doc.kmap);
  if (doc.epsilon) j["epsilon"] = detail::epsilon_json(*doc.epsilon);

  ordered_json decisions;
  decisions["overall"] = any_high ? "high" : "acceptable";
  if (any_not_evaluable) decisions["not_evaluable_present"] = true;
  j["decisions"] = decisions;
  return j;
}

/// Renders the report: "machine" (canonical JSON) or "human" (plain-text
/// summary). Rendering the same report twice is byte-identical.
inline std::string render_report(const ordered_json& report, const std::string& format) {
  if (format == "machine" || format == "json") return report.dump(2) + "\n";
  if (format != "human" && format != "text")
    throw ConfigError("unknown report format: " + format);

  std::string out;
  auto line = [&](const std::string& s) { out += s + "\n"; };
  line(std::string(kToolName) + " report (" + report.value("schema", "?") + ")");

  auto membership_lines = [&](const ordered_json& m, const std::string& indent) {
    line(indent + "membership: decision " + m.value("decision", "?") +
         "  headline F_rel " + detail::fmt_or(m, "headline_f_rel") + " (anchor " +
         detail::fmt_or(m, "anchor") + ", t " + detail::fmt_or(m, "t") + ")");
    if (m.value("f_naive_alone_high", false))
      line(indent + "  note: F_naive alone is high; vulnerability independent of release");
  };
  auto attribute_lines = [&](const ordered_json& a, const std::string& indent) {
    line(indent + "attribute:  decision " + a.value("decision", "?") + "  A_members " +
         detail::fmt_or(a, "a_members") + "  A_non_members " +
         detail::fmt_or(a, "a_non_members") + "  A_rel " + detail::fmt_or(a, "a_rel"));
    if (a.value("weak_attack", false))
      line(indent + "  note: weak attack; attribute results not valid");
  };

  if (report.contains("membership")) {
    membership_lines(report["membership"], "  ");
    attribute_lines(report["attribute"], "  ");
  } else if (report.contains("synthetic_files")) {
    for (const auto& f : report["synthetic_files"]) {
      line("  [" + f.value("name", "?") + "]");
      membership_lines(f["membership"], "    ");
      attribute_lines(f["attribute"], "    ");
    }
    const auto& agg = report["aggregate"];
    line("  aggregate over " + std::to_string(agg.value("files", 0)) + " files: F_rel " +
         detail::fmt_or(agg, "f_rel_mean") + " +/- " + detail::fmt_or(agg, "f_rel_sd") +
         ", A_rel " + detail::fmt_or(agg, "a_rel_mean") + " +/- " +
         detail::fmt_or(agg, "a_rel_sd"));
  }
  if (report.contains("k_map")) {
    const auto& k = report["k_map"];
    line("  k-map (" + k.value("source", "?") + "): max " +
         detail::fmt_or(k, "max_vulnerability") + ", mean " +
         detail::fmt_or(k, "mean_vulnerability") + ", groups " +
         std::to_string(k.value("groups", 0)));
  }
  if (report.contains("epsilon")) {
    const auto& e = report["epsilon"];
    line("  epsilon: " + detail::fmt_or(e, "epsilon") + " (gain " + detail::fmt_or(e, "gain") +
         ") -> " + e.value("classification", "?"));
  }
  if (report.contains("deprecated_similarity"))
    line("  " + report["deprecated_similarity"].value("warning", ""));
  line("  overall: " + report["decisions"].value("overall", "?"));
  return out;
}

/// Re-applies the decision policy over an already-rendered report.
struct RedecideResult {
  std::string membership_overall;
  std::string attribute_overall;
  std::string overall;
  std::vector<std::string> mismatches; // stored vs recomputed
};

inline RedecideResult redecide(const ordered_json& report, const Thresholds& thresholds) {
  if (report.value("schema", "") != kReportSchema)
    throw ConfigError("report schema mismatch: expected " + std::string(kReportSchema) +
                      ", got \"" + report.value("schema", "") + "\"");
  Thresholds eff = thresholds.effective();

  RedecideResult out;
  bool m_high = false, m_not_evaluable = false, a_high = false;

  auto check_file = [&](const ordered_json& fj, const std::string& name) {
    const auto& m = fj.at("membership");
    MembershipDecision md;
    if (!m.value("headline_defined", true)) {
      md.outcome = MembershipOutcome::not_evaluable;
    } else {
      md = decide_membership(m.value("headline_f_rel", 0.0), eff);
    }
    const auto& a = fj.at("attribute");
    AttributeThresholds ath{eff.a_abs, eff.a_rel};
    auto ad = decide_attribute(a.value("a_members", 0.0), a.value("a_rel", 0.0), ath);

    if (md.outcome == MembershipOutcome::high) m_high = true;
    if (md.outcome == MembershipOutcome::not_evaluable) m_not_evaluable = true;
    if (ad.high) a_high = true;

    const std::string stored_m = m.value("decision", "");
    if (stored_m != to_string(md.outcome))
      out.mismatches.push_back(name + " membership: stored \"" + stored_m +
                               "\", recomputed \"" + to_string(md.outcome) + "\"");
    const std::string stored_a = a.value("decision", "");
    const std::string recomputed_a = ad.high ? "high" : "acceptable";
    if (stored_a != recomputed_a)
      out.mismatches.push_back(name + " attribute: stored \"" + stored_a +
                               "\", recomputed \"" + recomputed_a + "\"");
  };

  if (report.contains("membership")) {
    check_file(report, "report");
  } else if (report.contains("synthetic_files")) {
    for (const auto& f : report["synthetic_files"]) check_file(f, f.value("name", "?"));
  } else {
    throw ConfigError("report has no membership section");
  }

  out.membership_overall =
      m_high ? "high" : (m_not_evaluable ? "not-evaluable" : "acceptable");
  out.attribute_overall = a_high ? "high" : "acceptable";
  out.overall = (m_high || a_high) ? "high" : "acceptable";
  return out;
}

} // namespace privaudit
