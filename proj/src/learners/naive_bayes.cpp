#include <cmath>

#include "commentcat/learners.hpp"

namespace commentcat::detail {

// Multinomial NB over TF-IDF values: fractional feature values are
// accepted as-is when accumulating per-class term mass. Laplace
// smoothing with alpha; everything in log space.
TrainedModel fit_multinomial_nb(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                                const std::vector<int>& y) {
  const std::size_t dim = X.front().dimension;
  const double alpha = spec.params.at("alpha");

  MultinomialNbPayload payload;
  std::array<std::vector<double>, 2> counts{std::vector<double>(dim, 0.0),
                                            std::vector<double>(dim, 0.0)};
  std::array<double, 2> class_docs{0.0, 0.0};
  std::array<double, 2> class_mass{0.0, 0.0};

  for (std::size_t i = 0; i < X.size(); ++i) {
    const int c = y[i];
    class_docs[c] += 1.0;
    for (const SparseEntry& e : X[i].entries) {
      counts[c][e.index] += e.value;
      class_mass[c] += e.value;
    }
  }

  const double n = static_cast<double>(X.size());
  for (int c = 0; c < 2; ++c) {
    payload.log_prior[c] = std::log(class_docs[c] / n);
    payload.feature_log_prob[c].resize(dim);
    const double denom = class_mass[c] + alpha * static_cast<double>(dim);
    for (std::size_t t = 0; t < dim; ++t) {
      payload.feature_log_prob[c][t] = std::log((counts[c][t] + alpha) / denom);
    }
  }

  return TrainedModel{spec, dim, std::move(payload)};
}

double multinomial_nb_decision(const MultinomialNbPayload& payload, const SparseVector& x) {
  double score1 = payload.log_prior[1];
  double score0 = payload.log_prior[0];
  for (const SparseEntry& e : x.entries) {
    score1 += e.value * payload.feature_log_prob[1][e.index];
    score0 += e.value * payload.feature_log_prob[0][e.index];
  }
  return score1 - score0;
}

// Bernoulli NB: features binarized at value > 0; absent features
// contribute their log(1 - theta) mass.
TrainedModel fit_bernoulli_nb(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                              const std::vector<int>& y) {
  const std::size_t dim = X.front().dimension;
  const double alpha = spec.params.at("alpha");

  std::array<std::vector<double>, 2> present{std::vector<double>(dim, 0.0),
                                             std::vector<double>(dim, 0.0)};
  std::array<double, 2> class_docs{0.0, 0.0};
  for (std::size_t i = 0; i < X.size(); ++i) {
    const int c = y[i];
    class_docs[c] += 1.0;
    for (const SparseEntry& e : X[i].entries) {
      if (e.value > 0.0) present[c][e.index] += 1.0;
    }
  }

  BernoulliNbPayload payload;
  const double n = static_cast<double>(X.size());
  for (int c = 0; c < 2; ++c) {
    payload.log_prior[c] = std::log(class_docs[c] / n);
    payload.log_theta[c].resize(dim);
    payload.log_one_minus_theta[c].resize(dim);
    const double denom = class_docs[c] + 2.0 * alpha;
    for (std::size_t t = 0; t < dim; ++t) {
      const double theta = (present[c][t] + alpha) / denom;
      payload.log_theta[c][t] = std::log(theta);
      payload.log_one_minus_theta[c][t] = std::log(1.0 - theta);
    }
  }

  return TrainedModel{spec, dim, std::move(payload)};
}

double bernoulli_nb_decision(const BernoulliNbPayload& payload, const SparseVector& x) {
  std::array<double, 2> score{payload.log_prior[0], payload.log_prior[1]};
  for (int c = 0; c < 2; ++c) {
    for (std::size_t t = 0; t < payload.log_theta[c].size(); ++t) {
      score[c] += payload.log_one_minus_theta[c][t];
    }
  }
  for (const SparseEntry& e : x.entries) {
    if (e.value <= 0.0) continue;
    for (int c = 0; c < 2; ++c) {
      score[c] += payload.log_theta[c][e.index] - payload.log_one_minus_theta[c][e.index];
    }
  }
  return score[1] - score[0];
}

}  // namespace commentcat::detail
