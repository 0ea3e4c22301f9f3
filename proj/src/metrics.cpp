#include "commentcat/metrics.hpp"

#include <cmath>
#include <string>

#include "commentcat/errors.hpp"

namespace commentcat {

ConfusionCounts confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw DomainError("confusion: label vectors differ in length (" +
                      std::to_string(y_true.size()) + " vs " + std::to_string(y_pred.size()) + ")");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
      throw DomainError("confusion: labels must be 0 or 1 (position " + std::to_string(i) + ")");
    }
    if (t == 1 && p == 1)
      ++c.tp;
    else if (t == 0 && p == 1)
      ++c.fp;
    else if (t == 1 && p == 0)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

ScoreTriple score(const ConfusionCounts& c) {
  ScoreTriple s;
  const double tp = static_cast<double>(c.tp);
  s.precision = (c.tp + c.fp) == 0 ? 0.0 : tp / static_cast<double>(c.tp + c.fp);
  s.recall = (c.tp + c.fn) == 0 ? 0.0 : tp / static_cast<double>(c.tp + c.fn);
  const double pr = s.precision + s.recall;
  s.f1 = pr == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / pr;
  return s;
}

double accuracy(const ConfusionCounts& c) {
  const std::size_t n = c.total();
  if (n == 0) return 0.0;
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(n);
}

double average_f1(const std::vector<ScoreTriple>& triples) {
  if (triples.empty()) {
    throw DomainError("average_f1: empty score list");
  }
  double sum = 0.0;
  for (const ScoreTriple& t : triples) sum += t.f1;
  return sum / static_cast<double>(triples.size());
}

bool degenerate(const ConfusionCounts& c) {
  return (c.tp + c.fp) == 0 || (c.tp + c.fn) == 0;
}

double round4(double x) {
  return std::floor(x * 10000.0 + 0.5) / 10000.0;
}

}  // namespace commentcat
