#include "catch2/catch_amalgamated.hpp"

#include "helpers.hpp"
#include "oracles.hpp"
#include "privaudit/similarity.hpp"

using namespace privaudit;
using testutil::make_categorical;
using Catch::Approx;

namespace {
const std::vector<std::string> kAttrs{"a", "b", "c", "d", "e"};
}

TEST_CASE("dcr of a dataset against itself is identically zero") {
  Dataset d = make_categorical({"a", "b"}, {{"x", "y"}, {"p", "q"}, {"x", "q"}});
  auto prof = dcr(d, d, {"a", "b"}, false);
  for (int v : prof.closest) CHECK(v == 0);
}

TEST_CASE("dcr: singleton differing in 2 of 5 attributes") {
  Dataset from = make_categorical(kAttrs, {{"1", "1", "1", "1", "1"}});
  Dataset to = make_categorical(kAttrs, {{"1", "1", "1", "2", "2"},
                                         {"9", "9", "9", "9", "9"}});
  auto prof = dcr(from, to, kAttrs, false);
  CHECK(prof.closest[0] == 2);
}

TEST_CASE("dcr equals the exhaustive pairwise minimum on a 5x5 pair") {
  Rng rng(808);
  std::vector<std::vector<std::string>> frows, trows;
  for (int i = 0; i < 5; ++i) {
    std::vector<std::string> fr, tr;
    for (size_t a = 0; a < kAttrs.size(); ++a) {
      fr.push_back("v" + std::to_string(rng.below(3)));
      tr.push_back("v" + std::to_string(rng.below(3)));
    }
    frows.push_back(fr);
    trows.push_back(tr);
  }
  Dataset from = make_categorical(kAttrs, frows);
  Dataset to = make_categorical(kAttrs, trows);
  auto prof = dcr(from, to, kAttrs, false);
  for (size_t r = 0; r < from.rows(); ++r) {
    int best = 1000;
    for (size_t s = 0; s < to.rows(); ++s)
      best = std::min(best, oracle::hamming(from, r, to, s, kAttrs));
    CHECK(prof.closest[r] == best);
  }
}

TEST_CASE("dcr exclude_self skips the record's own row") {
  Dataset d = make_categorical({"a"}, {{"x"}, {"x"}, {"y"}});
  auto ttd = dcr(d, d, {"a"}, true, DcrDirection::training_to_training);
  CHECK(ttd.closest[0] == 0); // matches the other "x"
  CHECK(ttd.closest[1] == 0);
  CHECK(ttd.closest[2] == 1); // the lone "y" must look elsewhere
}

TEST_CASE("dcr errors") {
  Dataset d = make_categorical({"a"}, {{"x"}});
  Dataset empty = make_categorical({"a"}, {});
  CHECK_THROWS_AS(dcr(d, empty, {"a"}, false), ConfigError);
  CHECK_THROWS_AS(dcr(d, d, {}, false), ConfigError);
  // excluding self with a single record leaves nothing to compare against
  CHECK_THROWS_AS(dcr(d, d, {"a"}, true), ConfigError);
}

TEST_CASE("similarity outputs always carry the deprecation") {
  Dataset d = make_categorical({"a"}, {{"x"}});
  auto prof = dcr(d, d, {"a"}, false);
  CHECK(prof.deprecated());
  CHECK(std::string(prof.deprecation_note()).find("should not be used to report privacy") !=
        std::string::npos);
}

TEST_CASE("vr_count: outlier replication case") {
  // TSD all zero (training replicated in synthetic), TTD all positive
  // (training records pairwise distinct): every record counts.
  Dataset train = make_categorical({"a"}, {{"x"}, {"y"}, {"z"}});
  auto tsd = dcr(train, train, {"a"}, false, DcrDirection::training_to_synthetic);
  auto ttd = dcr(train, train, {"a"}, true, DcrDirection::training_to_training);
  CHECK(vr_count(VrVariant::tsd_vs_ttd, tsd, ttd) == train.rows());
}

TEST_CASE("vr_count: equal profiles count zero (strict inequality)") {
  DistanceProfile a, b;
  a.closest = {1, 2, 3};
  b.closest = {1, 2, 3};
  CHECK(vr_count(VrVariant::tsd_vs_thd, a, b) == 0);
}

TEST_CASE("vr_count equals a hand count on a 4-record fixture") {
  DistanceProfile a, b;
  a.closest = {0, 2, 1, 5};
  b.closest = {1, 2, 0, 6};
  CHECK(vr_count(VrVariant::std_vs_shd, a, b) == 2); // rows 0 and 3
  b.closest = {1, 2, 0};
  CHECK_THROWS_AS(vr_count(VrVariant::std_vs_shd, a, b), ConfigError);
}

TEST_CASE("vr_count never exceeds the profile length") {
  Rng rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    const size_t n = 1 + rng.below(10);
    DistanceProfile a, b;
    for (size_t i = 0; i < n; ++i) {
      a.closest.push_back(int(rng.below(5)));
      b.closest.push_back(int(rng.below(5)));
    }
    CHECK(vr_count(VrVariant::tsd_vs_thd, a, b) <= n);
  }
}

TEST_CASE("exact_match_vr basics") {
  Dataset train = make_categorical({"a"}, {{"x"}, {"y"}});
  Dataset holdout = make_categorical({"a"}, {{"z"}, {"w"}});
  SECTION("synthetic = train copy, disjoint holdout: every record counts") {
    CHECK(exact_match_vr(train, train, holdout, {"a"}) == train.rows());
  }
  SECTION("holdout = train: nothing counts") {
    CHECK(exact_match_vr(train, train, train, {"a"}) == 0);
  }
}

TEST_CASE("exact_match_vr is antitone in holdout coverage") {
  Rng rng(123);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::vector<std::string>> rows;
    const size_t n = 2 + rng.below(8);
    for (size_t i = 0; i < n; ++i)
      rows.push_back({"v" + std::to_string(rng.below(4))});
    Dataset synth = make_categorical({"a"}, rows);
    Dataset train = synth;

    std::vector<std::vector<std::string>> small_rows, big_rows;
    for (size_t i = 0; i < 2; ++i) small_rows.push_back({"v" + std::to_string(rng.below(4))});
    big_rows = small_rows;
    for (size_t i = 0; i < 3; ++i) big_rows.push_back({"v" + std::to_string(rng.below(4))});
    Dataset small = make_categorical({"a"}, small_rows);
    Dataset big = make_categorical({"a"}, big_rows);

    CHECK(exact_match_vr(synth, train, big, {"a"}) <=
          exact_match_vr(synth, train, small, {"a"}));
  }
}
