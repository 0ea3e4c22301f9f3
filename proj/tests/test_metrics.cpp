#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "commentcat/errors.hpp"
#include "commentcat/metrics.hpp"
#include "commentcat/rng.hpp"

#include "oracles.hpp"

using namespace commentcat;

TEST_CASE("confusion counts") {
  CHECK(confusion({1, 1, 0}, {1, 0, 0}) == ConfusionCounts{1, 0, 1, 1});

  // identical vectors: no mistakes
  const ConfusionCounts same = confusion({1, 0, 1, 1}, {1, 0, 1, 1});
  CHECK(same.fp == 0);
  CHECK(same.fn == 0);

  // complemented predictions: nothing agrees
  const ConfusionCounts flipped = confusion({1, 0, 1}, {0, 1, 0});
  CHECK(flipped.tp == 0);
  CHECK(flipped.tn == 0);
  CHECK(flipped.fn == 2);
  CHECK(flipped.fp == 1);

  CHECK_THROWS_AS(confusion({1, 0}, {1}), DomainError);
  CHECK_THROWS_AS(confusion({1, 2}, {1, 0}), DomainError);
}

TEST_CASE("score formulas") {
  // published Linear SVC deprecation row: tp=19, fp=7, fn=8
  const ScoreTriple s = score(ConfusionCounts{19, 7, 8, 0});
  CHECK(round4(s.precision) == doctest::Approx(0.7308));
  CHECK(round4(s.recall) == doctest::Approx(0.7037));
  CHECK(round4(s.f1) == doctest::Approx(0.7170));
  // exact fractions behind the rounded values
  CHECK(s.precision == doctest::Approx(19.0 / 26.0).epsilon(1e-12));
  CHECK(s.recall == doctest::Approx(19.0 / 27.0).epsilon(1e-12));
  CHECK(s.f1 == doctest::Approx(38.0 / 53.0).epsilon(1e-12));

  // 0/0 convention
  CHECK(score(ConfusionCounts{0, 0, 0, 5}) == ScoreTriple{0.0, 0.0, 0.0});
  CHECK(degenerate(ConfusionCounts{0, 0, 0, 5}));
  CHECK_FALSE(degenerate(ConfusionCounts{1, 1, 1, 1}));

  // perfect classifier
  CHECK(score(ConfusionCounts{5, 0, 0, 0}) == ScoreTriple{1.0, 1.0, 1.0});
}

TEST_CASE("randomized recount oracle") {
  SplitMix64 rng(20230717);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + rng.below(50);
    std::vector<int> y_true(n);
    std::vector<int> y_pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      y_true[i] = static_cast<int>(rng.below(2));
      y_pred[i] = static_cast<int>(rng.below(2));
    }
    const ConfusionCounts counts = confusion(y_true, y_pred);
    const ScoreTriple triple = score(counts);
    const oracles::NaiveScores expected = oracles::naive_scores(y_true, y_pred);
    CHECK(counts.tp == expected.tp);
    CHECK(counts.fp == expected.fp);
    CHECK(counts.fn == expected.fn);
    CHECK(counts.tn == expected.tn);
    CHECK(std::abs(triple.precision - expected.precision) < 1e-12);
    CHECK(std::abs(triple.recall - expected.recall) < 1e-12);
    CHECK(std::abs(triple.f1 - expected.f1) < 1e-12);

    // harmonic mean bounds
    if (triple.precision > 0.0 && triple.recall > 0.0) {
      CHECK(triple.f1 <= std::max(triple.precision, triple.recall) + 1e-12);
      CHECK(triple.f1 >= std::min(triple.precision, triple.recall) - 1e-12);
    }

    // joint permutation invariance
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<int> t2(n), p2(n);
    for (std::size_t i = 0; i < n; ++i) {
      t2[i] = y_true[order[i]];
      p2[i] = y_pred[order[i]];
    }
    CHECK(confusion(t2, p2) == counts);
  }
}

TEST_CASE("average_f1") {
  // the 19 published Linear SVC category F1 values
  const std::vector<double> table2_f1 = {0.7170, 0.5850, 0.5684, 0.6100, 1.0000, 0.5920, 0.7413,
                                         0.2857, 0.7603, 0.4124, 0.4231, 0.4301, 0.5254, 0.4218,
                                         0.3145, 0.6337, 0.3774, 0.4636, 0.5387};
  std::vector<ScoreTriple> triples;
  for (double f1 : table2_f1) triples.push_back({0.0, 0.0, f1});
  CHECK(average_f1(triples) == doctest::Approx(0.5474).epsilon(1e-4));

  CHECK(average_f1({{1, 1, 1}, {0, 0, 0}}) == doctest::Approx(0.5));
  CHECK(average_f1({{0.2, 0.4, 0.3}, {0.2, 0.4, 0.3}}) == doctest::Approx(0.3));
  CHECK_THROWS_AS(average_f1({}), DomainError);
}

TEST_CASE("accuracy and rounding") {
  CHECK(accuracy(ConfusionCounts{2, 1, 1, 4}) == doctest::Approx(0.75));
  CHECK(round4(38.0 / 53.0) == doctest::Approx(0.7170));
  CHECK(round4(19.0 / 26.0) == doctest::Approx(0.7308));
  CHECK(round4(1.0 / 3.0) == doctest::Approx(0.3333));
  CHECK(round4(2.0 / 3.0) == doctest::Approx(0.6667));
}
