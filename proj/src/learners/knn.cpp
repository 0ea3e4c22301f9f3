#include <algorithm>
#include <vector>

#include "commentcat/learners.hpp"

namespace commentcat::detail {

TrainedModel fit_knn(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                     const std::vector<int>& y) {
  KnnPayload payload{X, y, static_cast<std::size_t>(spec.params.at("k"))};
  return TrainedModel{spec, X.front().dimension, std::move(payload)};
}

// Cosine distance over L2-normalized vectors, so ranking by 1 - dot.
// Distance ties break toward the lower training index. The vote margin
// (votes_1 - votes_0)/k is the decision value; an exactly tied vote
// defers to the single nearest neighbor with a +-1/(2k) nudge so the
// sign rule still matches the documented tie-break.
double knn_decision(const KnnPayload& payload, const SparseVector& x) {
  const std::size_t n = payload.train.size();
  const std::size_t k = std::min(payload.k, n);

  std::vector<std::pair<double, std::size_t>> ranked(n);
  for (std::size_t i = 0; i < n; ++i) {
    ranked[i] = {1.0 - dot(x, payload.train[i]), i};
  }
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                    ranked.end());

  std::size_t votes_one = 0;
  for (std::size_t r = 0; r < k; ++r) {
    votes_one += static_cast<std::size_t>(payload.labels[ranked[r].second]);
  }
  const std::size_t votes_zero = k - votes_one;
  const double kd = static_cast<double>(k);
  if (votes_one == votes_zero) {
    return payload.labels[ranked[0].second] == 1 ? 0.5 / kd : -0.5 / kd;
  }
  return (static_cast<double>(votes_one) - static_cast<double>(votes_zero)) / kd;
}

}  // namespace commentcat::detail
