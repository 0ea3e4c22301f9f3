#include <cmath>
#include <string>
#include <vector>

#include "commentcat/errors.hpp"
#include "commentcat/learners.hpp"
#include "commentcat/rng.hpp"

namespace commentcat::detail {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double forward(const MlpPayload& p, const SparseVector& x, std::vector<double>& a1) {
  a1 = p.b1;
  for (const SparseEntry& e : x.entries) {
    const double v = e.value;
    const std::size_t col = e.index;
    for (std::size_t h = 0; h < p.hidden; ++h) {
      a1[h] += p.w1[h * p.input_dim + col] * v;
    }
  }
  double z = p.b2;
  for (std::size_t h = 0; h < p.hidden; ++h) {
    if (a1[h] > 0.0) z += p.w2[h] * a1[h];
  }
  return z;
}

}  // namespace

double mlp_loss_and_gradient(const MlpPayload& params, const std::vector<SparseVector>& X,
                             const std::vector<int>& y, MlpPayload* gradients) {
  const std::size_t n = X.size();
  const double n_inv = 1.0 / static_cast<double>(n);
  if (gradients != nullptr) {
    gradients->input_dim = params.input_dim;
    gradients->hidden = params.hidden;
    gradients->w1.assign(params.w1.size(), 0.0);
    gradients->b1.assign(params.b1.size(), 0.0);
    gradients->w2.assign(params.w2.size(), 0.0);
    gradients->b2 = 0.0;
  }

  double loss = 0.0;
  std::vector<double> a1(params.hidden);
  std::vector<double> da1(params.hidden);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = forward(params, X[i], a1);
    const double yi = static_cast<double>(y[i]);
    // binary cross-entropy on the logit, overflow-safe
    loss += std::max(z, 0.0) - z * yi + std::log1p(std::exp(-std::abs(z)));

    if (gradients == nullptr) continue;
    const double dz = (sigmoid(z) - yi) * n_inv;
    gradients->b2 += dz;
    for (std::size_t h = 0; h < params.hidden; ++h) {
      const double relu = a1[h] > 0.0 ? a1[h] : 0.0;
      gradients->w2[h] += dz * relu;
      da1[h] = a1[h] > 0.0 ? dz * params.w2[h] : 0.0;
      gradients->b1[h] += da1[h];
    }
    for (const SparseEntry& e : X[i].entries) {
      const double v = e.value;
      const std::size_t col = e.index;
      for (std::size_t h = 0; h < params.hidden; ++h) {
        gradients->w1[h * params.input_dim + col] += da1[h] * v;
      }
    }
  }
  return loss * n_inv;
}

// One hidden ReLU layer, sigmoid output, mean binary cross-entropy;
// full-batch gradient descent at rate 0.01 for 200 epochs. Weights
// start uniform in +-sqrt(6/(fan_in+fan_out)), drawn from the seeded
// generator in w1 row-major order, then w2; biases start at zero.
TrainedModel fit_mlp(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                     const std::vector<int>& y) {
  constexpr int kEpochs = 200;
  constexpr double kLearningRate = 0.01;
  const std::size_t dim = X.front().dimension;
  const std::size_t hidden = static_cast<std::size_t>(spec.params.at("hidden"));

  MlpPayload params;
  params.input_dim = dim;
  params.hidden = hidden;
  params.w1.resize(hidden * dim);
  params.b1.assign(hidden, 0.0);
  params.w2.resize(hidden);
  params.b2 = 0.0;

  SplitMix64 rng(spec.seed);
  const double bound1 = std::sqrt(6.0 / static_cast<double>(dim + hidden));
  for (double& w : params.w1) w = bound1 * (2.0 * rng.unit() - 1.0);
  const double bound2 = std::sqrt(6.0 / static_cast<double>(hidden + 1));
  for (double& w : params.w2) w = bound2 * (2.0 * rng.unit() - 1.0);

  MlpPayload grads;
  for (int epoch = 0; epoch < kEpochs; ++epoch) {
    const double loss = mlp_loss_and_gradient(params, X, y, &grads);
    if (!std::isfinite(loss)) {
      throw NumericError("mlp: non-finite loss at epoch " + std::to_string(epoch));
    }
    for (std::size_t j = 0; j < params.w1.size(); ++j) params.w1[j] -= kLearningRate * grads.w1[j];
    for (std::size_t h = 0; h < hidden; ++h) {
      params.b1[h] -= kLearningRate * grads.b1[h];
      params.w2[h] -= kLearningRate * grads.w2[h];
    }
    params.b2 -= kLearningRate * grads.b2;
  }

  return TrainedModel{spec, dim, std::move(params)};
}

double mlp_decision(const MlpPayload& payload, const SparseVector& x) {
  std::vector<double> a1;
  return forward(payload, x, a1);
}

}  // namespace commentcat::detail
