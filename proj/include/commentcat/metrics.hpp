#pragma once

#include <cstddef>
#include <vector>

namespace commentcat {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

struct ScoreTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const ScoreTriple&) const = default;
};

// Counts with label 1 as the positive class. Inputs must have equal
// length and values in {0, 1}.
ConfusionCounts confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred);

// P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R). A 0/0 denominator
// yields 0 for that score.
ScoreTriple score(const ConfusionCounts& counts);

double accuracy(const ConfusionCounts& counts);

// Unweighted arithmetic mean of the f1 fields. Empty input is a domain
// error.
double average_f1(const std::vector<ScoreTriple>& triples);

// True when any of the precision/recall denominators was 0/0; reports
// footnote such cells.
bool degenerate(const ConfusionCounts& counts);

// Half-up rounding to 4 decimal places (presentation only; machine
// output keeps full precision).
double round4(double x);

}  // namespace commentcat
