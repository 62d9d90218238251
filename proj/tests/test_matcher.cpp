#include "catch2/catch_amalgamated.hpp"

#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "privaudit/matcher.hpp"

using namespace privaudit;
using testutil::make_categorical;
using Catch::Approx;

namespace {

AttackSet toy_attack(const Dataset& records, std::vector<uint8_t> member, double t) {
  AttackSet a;
  a.records = records;
  a.member = std::move(member);
  a.t = t;
  a.training_size = records.rows();
  return a;
}

} // namespace

TEST_CASE("enumerate_subsets counts") {
  CHECK(count_subsets(20, 1, 20) == 1048575);
  CHECK(count_subsets(10, 1, 10) == 1023);
  CHECK(count_subsets(5, 5, 5) == 1);

  uint64_t seen = 0;
  for_each_subset(20, 1, 20, [&](const std::vector<size_t>&) { ++seen; });
  CHECK(seen == 1048575);

  auto subsets = enumerate_subsets({"a", "b", "c", "d", "e"}, 5, 5);
  REQUIRE(subsets.size() == 1);
  CHECK(subsets[0] == std::vector<std::string>{"a", "b", "c", "d", "e"});
}

TEST_CASE("enumerate_subsets yields each subset exactly once") {
  auto subsets = enumerate_subsets({"a", "b", "c", "d"}, 1, 4);
  CHECK(subsets.size() == 15);
  std::set<std::vector<std::string>> unique(subsets.begin(), subsets.end());
  CHECK(unique.size() == subsets.size());
}

TEST_CASE("enumerate_subsets rejects bad bounds") {
  CHECK_THROWS_AS(count_subsets(5, 0, 3), ConfigError);
  CHECK_THROWS_AS(count_subsets(5, 3, 2), ConfigError);
  CHECK_THROWS_AS(count_subsets(5, 1, 6), ConfigError);
}

TEST_CASE("match_records: identity copy matches everything") {
  Dataset d = make_categorical({"a", "b"}, {{"x", "p"}, {"y", "q"}, {"z", "r"}});
  MatchConfig cfg;
  cfg.attrs = {"a", "b"};
  auto res = match_records(d, d, cfg);
  for (size_t r = 0; r < d.rows(); ++r) {
    CHECK(res.matched[r] == 1);
    REQUIRE(res.matched_rows[r].size() == 1);
    CHECK(res.matched_rows[r][0] == r);
  }
}

TEST_CASE("match_records threshold semantics") {
  Dataset attack = make_categorical({"a", "b", "c"}, {{"x", "y", "z"}});
  Dataset synth = make_categorical({"a", "b", "c"}, {{"x", "y", "w"}, {"q", "q", "q"}});

  MatchConfig exact;
  exact.attrs = {"a", "b", "c"};
  CHECK(match_records(attack, synth, exact).matched[0] == 0);

  MatchConfig hamming1;
  hamming1.attrs = {"a", "b", "c"};
  hamming1.distance = MatchConfig::Distance::hamming;
  hamming1.threshold = 1;
  auto res = match_records(attack, synth, hamming1);
  CHECK(res.matched[0] == 1);
  REQUIRE(res.matched_rows[0].size() == 1);
  CHECK(res.matched_rows[0][0] == 0);
}

TEST_CASE("match_records equals the brute-force oracle on a 6-record pair") {
  Dataset attack = make_categorical({"a", "b", "c"},
                                    {{"0", "0", "0"},
                                     {"0", "1", "2"},
                                     {"1", "1", "1"},
                                     {"2", "0", "1"},
                                     {"2", "2", "2"},
                                     {"1", "0", "2"}});
  Dataset synth = make_categorical({"a", "b", "c"},
                                   {{"0", "0", "1"},
                                    {"0", "1", "2"},
                                    {"2", "2", "0"},
                                    {"1", "1", "1"},
                                    {"2", "1", "1"},
                                    {"0", "2", "2"}});
  for (int threshold = 0; threshold <= 2; ++threshold) {
    MatchConfig cfg;
    cfg.attrs = {"a", "b", "c"};
    cfg.distance = threshold ? MatchConfig::Distance::hamming : MatchConfig::Distance::exact;
    cfg.threshold = threshold;
    auto res = match_records(attack, synth, cfg);
    auto expected = oracle::match_rows(attack, synth, cfg.attrs, threshold);
    for (size_t r = 0; r < attack.rows(); ++r) {
      CHECK(res.matched[r] == (expected[r].empty() ? 0 : 1));
      std::vector<size_t> got = res.matched_rows[r];
      std::sort(got.begin(), got.end());
      CHECK(got == expected[r]);
    }
  }
}

TEST_CASE("match_records validates its config") {
  Dataset d = make_categorical({"a"}, {{"x"}});
  MatchConfig empty;
  CHECK_THROWS_AS(match_records(d, d, empty), ConfigError);
  MatchConfig bad;
  bad.attrs = {"a"};
  bad.distance = MatchConfig::Distance::hamming;
  bad.threshold = 1; // must stay < |attrs|
  CHECK_THROWS_AS(match_records(d, d, bad), ConfigError);
  MatchConfig absent;
  absent.attrs = {"zz"};
  CHECK_THROWS_AS(match_records(d, d, absent), ConfigError);
}

TEST_CASE("worst_case_search equals exhaustive recomputation on a toy instance") {
  Dataset records = make_categorical({"a", "b", "c", "d"},
                                     {{"0", "1", "0", "1"},
                                      {"1", "1", "0", "0"},
                                      {"0", "0", "1", "1"},
                                      {"1", "0", "1", "0"},
                                      {"0", "1", "1", "0"},
                                      {"1", "0", "0", "1"}});
  Dataset synth = make_categorical({"a", "b", "c", "d"},
                                   {{"0", "1", "0", "1"},
                                    {"1", "1", "1", "0"},
                                    {"0", "0", "0", "0"},
                                    {"1", "0", "1", "1"}});
  AttackSet attack = toy_attack(records, {1, 1, 1, 0, 0, 0}, 0.5);
  const std::vector<std::string> qis{"a", "b", "c", "d"};

  for (double beta : {0.5, 1.0, 2.0}) {
    auto got = worst_case_search(attack, synth, qis, beta);
    auto expected = oracle::worst_case(records, attack.member, synth, qis, beta);
    CHECK(got.best.value == Approx(expected.best_value));
    CHECK(got.best_subset == expected.best_subset);
    CHECK(got.subsets_evaluated == 15);
  }
}

TEST_CASE("worst case dominates the full-attribute score") {
  Rng rng(31);
  for (int iter = 0; iter < 25; ++iter) {
    Dataset records = testutil::random_dataset(rng, 10, 3, 2);
    const auto names = records.attribute_names();
    std::vector<std::vector<std::string>> rows;
    for (size_t r = 0; r < 6; ++r) {
      std::vector<std::string> row;
      for (size_t a = 0; a < names.size(); ++a)
        row.push_back("v" + std::to_string(rng.below(2)));
      rows.push_back(row);
    }
    Dataset synth = make_categorical(names, rows);

    std::vector<uint8_t> member(records.rows());
    for (size_t i = 0; i < member.size(); ++i) member[i] = rng.below(2) ? 1 : 0;
    AttackSet attack = toy_attack(records, member, 0.5);
    const auto qis = records.qi_names();

    MatchConfig full_cfg;
    full_cfg.attrs = qis;
    auto full = match_records(records, synth, full_cfg);
    auto full_score = f_beta(confusion(attack, full), 1.0);
    auto searched = worst_case_search(attack, synth, qis, 1.0);
    CHECK(searched.best.value >= full_score.value - 1e-12);
  }
}

TEST_CASE("worst_case_search tie-break picks the lexicographically smallest subset") {
  // Synthetic copy of the records: every subset achieves F1 = 1, so the
  // winner must be the lexicographically smallest tuple, {"a"}.
  Dataset records = make_categorical({"b", "a"}, {{"0", "1"}, {"1", "0"}});
  AttackSet attack = toy_attack(records, {1, 1}, 0.99);
  auto res = worst_case_search(attack, records, {"b", "a"}, 1.0);
  CHECK(res.best.value == Approx(1.0));
  CHECK(res.best_subset == std::vector<std::string>{"a"});
}

TEST_CASE("worst_case_search refuses above the subset cap") {
  std::vector<std::string> names;
  std::vector<std::string> row;
  for (int i = 0; i < 21; ++i) {
    names.push_back("q" + std::to_string(i));
    row.push_back("v");
  }
  Dataset records = make_categorical(names, {row});
  AttackSet attack = toy_attack(records, {1}, 0.5);
  try {
    worst_case_search(attack, records, names, 1.0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("R1") != std::string::npos);
  }
}

TEST_CASE("search results are independent of the parallelism degree") {
  Rng rng(77);
  Dataset records = testutil::random_dataset(rng, 12, 4, 2);
  std::vector<uint8_t> member(records.rows());
  for (size_t i = 0; i < member.size(); ++i) member[i] = rng.below(2) ? 1 : 0;
  AttackSet attack = toy_attack(records, member, 0.5);
  Dataset synth = records;

  WorstCaseResult base;
  for (int threads : {1, 2, 3, 7}) {
    SearchOptions opt;
    opt.parallelism = threads;
    auto res = worst_case_search(attack, synth, records.qi_names(), 1.0, opt);
    if (threads == 1) {
      base = res;
      continue;
    }
    CHECK(res.best.value == base.best.value);
    CHECK(res.best_subset == base.best_subset);
    REQUIRE(res.curve.size() == base.curve.size());
    for (size_t i = 0; i < res.curve.size(); ++i) {
      CHECK(res.curve[i].mean == base.curve[i].mean);
      CHECK(res.curve[i].max == base.curve[i].max);
      CHECK(res.curve[i].sd == base.curve[i].sd);
    }
  }
}

TEST_CASE("match monotonicity: raising the threshold never unmatches") {
  Rng rng(13);
  for (int iter = 0; iter < 30; ++iter) {
    Dataset attack = testutil::random_dataset(rng, 8, 4, 2);
    const auto names = attack.attribute_names();
    if (names.size() < 2) continue;
    std::vector<std::vector<std::string>> rows;
    for (size_t r = 0; r < 5; ++r) {
      std::vector<std::string> row;
      for (size_t a = 0; a < names.size(); ++a)
        row.push_back("v" + std::to_string(rng.below(2)));
      rows.push_back(row);
    }
    Dataset synth = make_categorical(names, rows);

    MatchConfig lo;
    lo.attrs = names;
    lo.distance = MatchConfig::Distance::hamming;
    lo.threshold = 0;
    MatchConfig hi = lo;
    hi.threshold = static_cast<int>(names.size()) - 1;
    auto rlo = match_records(attack, synth, lo);
    auto rhi = match_records(attack, synth, hi);
    for (size_t r = 0; r < attack.rows(); ++r)
      if (rlo.matched[r]) CHECK(rhi.matched[r]);
  }
}

TEST_CASE("exact matching: adding attributes never increases the matched count") {
  Rng rng(17);
  for (int iter = 0; iter < 30; ++iter) {
    Dataset attack = testutil::random_dataset(rng, 8, 3, 2);
    const auto names = attack.attribute_names();
    if (names.size() < 2) continue;
    std::vector<std::vector<std::string>> rows;
    for (size_t r = 0; r < 6; ++r) {
      std::vector<std::string> row;
      for (size_t a = 0; a < names.size(); ++a)
        row.push_back("v" + std::to_string(rng.below(2)));
      rows.push_back(row);
    }
    Dataset synth = make_categorical(names, rows);

    MatchConfig sub_cfg;
    sub_cfg.attrs.assign(names.begin(), names.end() - 1);
    MatchConfig all_cfg;
    all_cfg.attrs = names;
    auto rsub = match_records(attack, synth, sub_cfg);
    auto rall = match_records(attack, synth, all_cfg);
    size_t csub = 0, call = 0;
    for (size_t r = 0; r < attack.rows(); ++r) {
      csub += rsub.matched[r];
      call += rall.matched[r];
      if (rall.matched[r]) CHECK(rsub.matched[r]);
    }
    CHECK(call <= csub);
  }
}
