// Randomized property suites over the invariants the library promises.
// Each suite runs >= 1000 generated cases.

#include "catch2/catch_amalgamated.hpp"

#include <cmath>

#include "helpers.hpp"
#include "privaudit/attribute.hpp"
#include "privaudit/equivalence.hpp"
#include "privaudit/generators.hpp"
#include "privaudit/matcher.hpp"
#include "privaudit/membership.hpp"
#include "privaudit/sampling.hpp"
#include "privaudit/similarity.hpp"

using namespace privaudit;
using testutil::make_categorical;
using Catch::Approx;

namespace {
constexpr int kCases = 1000;

Dataset random_aligned(Rng& rng, const std::vector<std::string>& names, size_t rows,
                       size_t cats) {
  std::vector<std::vector<std::string>> data(rows, std::vector<std::string>(names.size()));
  for (size_t r = 0; r < rows; ++r)
    for (size_t a = 0; a < names.size(); ++a)
      data[r][a] = "v" + std::to_string(rng.below(cats));
  return make_categorical(names, data);
}

} // namespace

TEST_CASE("property: F-score bounds and relations") {
  Rng rng(1001);
  size_t failures = 0;
  for (int i = 0; i < kCases; ++i) {
    ConfusionStats s;
    s.tp = rng.below(20);
    s.fp = rng.below(20);
    s.fn = rng.below(20);
    s.tn = rng.below(20);
    const double beta = 0.25 + 4.0 * rng.unit();
    auto f = f_beta(s, beta);
    if (f.value < 0.0 || f.value > 1.0) ++failures;
    auto p = s.precision();
    auto r = s.recall();
    if (f.defined && p && r && *p != *r && !(*p == 0 && *r == 0)) {
      // strictly between min and max when P != R and not degenerate
      const double lo = std::min(*p, *r), hi = std::max(*p, *r);
      if (lo > 0 && !(f.value > lo - 1e-12 && f.value < hi + 1e-12)) ++failures;
    }
    // f_rel <= 1; zero exactly when f == f_naive
    const double prev = rng.unit() * 0.999;
    const double naive = f_naive(prev, beta);
    auto rel = f_rel(f.value, naive);
    if (rel.defined && rel.value > 1.0 + 1e-12) ++failures;
    auto rel_eq = f_rel(naive, naive);
    if (!(std::abs(rel_eq.value) < 1e-12)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("property: f_naive is strictly increasing in prevalence") {
  Rng rng(1002);
  size_t failures = 0;
  for (int i = 0; i < kCases; ++i) {
    const double beta = 0.25 + 4.0 * rng.unit();
    double p1 = rng.unit(), p2 = rng.unit();
    if (p1 == p2) continue;
    if (p1 > p2) std::swap(p1, p2);
    if (!(f_naive(p1, beta) < f_naive(p2, beta))) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("property: match monotone in threshold and antitone in attributes") {
  Rng rng(1003);
  size_t failures = 0;
  for (int i = 0; i < kCases; ++i) {
    const size_t attrs = 2 + rng.below(3);
    std::vector<std::string> names;
    for (size_t a = 0; a < attrs; ++a) names.push_back("q" + std::to_string(a));
    Dataset attack = random_aligned(rng, names, 1 + rng.below(6), 2);
    Dataset synth = random_aligned(rng, names, 1 + rng.below(6), 2);

    const int t1 = static_cast<int>(rng.below(attrs - 1));
    const int t2 = t1 + static_cast<int>(rng.below(attrs - static_cast<size_t>(t1) - 1));
    MatchConfig lo;
    lo.attrs = names;
    lo.distance = MatchConfig::Distance::hamming;
    lo.threshold = t1;
    MatchConfig hi = lo;
    hi.threshold = t2;
    auto rlo = match_records(attack, synth, lo);
    auto rhi = match_records(attack, synth, hi);
    for (size_t r = 0; r < attack.rows(); ++r)
      if (rlo.matched[r] && !rhi.matched[r]) ++failures;

    MatchConfig sub;
    sub.attrs.assign(names.begin(), names.end() - 1);
    MatchConfig all;
    all.attrs = names;
    auto rsub = match_records(attack, synth, sub);
    auto rall = match_records(attack, synth, all);
    for (size_t r = 0; r < attack.rows(); ++r)
      if (rall.matched[r] && !rsub.matched[r]) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("property: k-map dominance under population containment") {
  Rng rng(1004);
  size_t failures = 0;
  for (int i = 0; i < kCases; ++i) {
    const std::vector<std::string> names{"a", "b"};
    Dataset sample_ds = random_aligned(rng, names, 1 + rng.below(8), 3);
    // population = sample plus extra rows (a superset)
    std::vector<std::vector<std::string>> rows;
    for (size_t r = 0; r < sample_ds.rows(); ++r)
      rows.push_back(testutil::row_labels(sample_ds, r));
    const size_t extra = rng.below(8);
    for (size_t e = 0; e < extra; ++e)
      rows.push_back({"v" + std::to_string(rng.below(3)), "v" + std::to_string(rng.below(3))});
    Dataset population = make_categorical(names, rows);

    auto km = k_map_vulnerability(sample_ds, population, names);
    auto eq = equivalence_classes(sample_ds, names);
    for (size_t r = 0; r < sample_ds.rows(); ++r)
      if (km.vulnerability[r] > 1.0 / double(eq.k[r]) + 1e-12) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("property: AUROC invariant under strictly increasing transforms") {
  Rng rng(1005);
  size_t failures = 0, checked = 0;
  for (int i = 0; i < kCases * 2 && checked < kCases; ++i) {
    const size_t n = 4 + rng.below(12);
    std::vector<double> scores(n);
    std::vector<uint8_t> labels(n);
    bool has0 = false, has1 = false;
    for (size_t j = 0; j < n; ++j) {
      scores[j] = double(rng.below(8)) / 7.0;
      labels[j] = rng.below(2) ? 1 : 0;
      (labels[j] ? has1 : has0) = true;
    }
    if (!has0 || !has1) continue;
    ++checked;
    std::vector<double> t(n);
    const double a = 0.5 + rng.unit() * 3.0, b = rng.unit() * 10.0 - 5.0;
    for (size_t j = 0; j < n; ++j) t[j] = a * std::exp(scores[j]) + b;
    const double v1 = auroc(scores, labels).value;
    const double v2 = auroc(t, labels).value;
    if (std::abs(v1 - v2) > 1e-12) ++failures;
  }
  CHECK(checked >= kCases);
  CHECK(failures == 0);
}

TEST_CASE("property: determinism under a fixed seed") {
  Rng rng(1006);
  size_t failures = 0;
  for (int i = 0; i < kCases; ++i) {
    Dataset d = testutil::random_dataset(rng, 10, 3, 3);
    const uint64_t seed = rng.next();
    if (d.rows() >= 2) {
      Partition p1 = partition(d, 0.5, seed);
      Partition p2 = partition(d, 0.5, seed);
      if (p1.train_rows != p2.train_rows) ++failures;
    }
    Dataset s1 = sample(d, d.rows(), seed);
    Dataset s2 = sample(d, d.rows(), seed);
    if (s1.ids != s2.ids) ++failures;
    Dataset g1 = swr_generate(d, 5, seed);
    Dataset g2 = swr_generate(d, 5, seed);
    if (g1.ids != g2.ids) ++failures;
    for (size_t r = 0; r < g1.rows(); ++r)
      if (testutil::row_labels(g1, r) != testutil::row_labels(g2, r)) ++failures;
    Dataset m1 = marginal_generate(d, 5, seed);
    Dataset m2 = marginal_generate(d, 5, seed);
    for (size_t r = 0; r < m1.rows(); ++r)
      if (testutil::row_labels(m1, r) != testutil::row_labels(m2, r)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("property: worst_case_search is independent of the worker count") {
  Rng rng(1007);
  size_t failures = 0;
  for (int i = 0; i < kCases; ++i) {
    const std::vector<std::string> names{"a", "b", "c"};
    Dataset records = random_aligned(rng, names, 2 + rng.below(5), 2);
    Dataset synth = random_aligned(rng, names, 2 + rng.below(5), 2);
    std::vector<uint8_t> member(records.rows());
    bool any = false;
    for (size_t r = 0; r < member.size(); ++r) {
      member[r] = rng.below(2) ? 1 : 0;
      any |= member[r] == 1;
    }
    if (!any) member[0] = 1;
    AttackSet attack;
    attack.records = records;
    attack.member = member;
    attack.t = 0.5;

    SearchOptions one, many;
    one.parallelism = 1;
    many.parallelism = 2 + static_cast<int>(rng.below(3));
    auto r1 = worst_case_search(attack, synth, names, 1.0, one);
    auto r2 = worst_case_search(attack, synth, names, 1.0, many);
    if (r1.best.value != r2.best.value || r1.best_subset != r2.best_subset) ++failures;
    if (r1.curve.size() != r2.curve.size()) {
      ++failures;
      continue;
    }
    for (size_t c = 0; c < r1.curve.size(); ++c)
      if (r1.curve[c].mean != r2.curve[c].mean || r1.curve[c].max != r2.curve[c].max ||
          r1.curve[c].sd != r2.curve[c].sd)
        ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("property: dcr self-distance and vr bounds") {
  Rng rng(1008);
  size_t failures = 0;
  for (int i = 0; i < kCases; ++i) {
    Dataset d = testutil::random_dataset(rng, 8, 3, 3);
    auto names = d.qi_names();
    auto self_prof = dcr(d, d, names, false);
    for (int v : self_prof.closest)
      if (v != 0) ++failures;
  }
  CHECK(failures == 0);
}
