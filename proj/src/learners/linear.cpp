#include <cmath>
#include <string>
#include <vector>

#include "commentcat/errors.hpp"
#include "commentcat/learners.hpp"
#include "commentcat/rng.hpp"

namespace commentcat::detail {

namespace {

std::vector<int> to_pm_labels(const std::vector<int>& y) {
  std::vector<int> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] == 1 ? 1 : -1;
  return out;
}

// log(1 + exp(-m)) without overflow.
double log1p_exp_neg(double m) {
  if (m >= 0.0) return std::log1p(std::exp(-m));
  return -m + std::log1p(std::exp(m));
}

// sigma(-m) = 1 / (1 + exp(m)) without overflow.
double sigmoid_neg(double m) {
  if (m >= 0.0) {
    const double e = std::exp(-m);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(m));
}

}  // namespace

double logistic_loss(const std::vector<double>& w, double b, const std::vector<SparseVector>& X,
                     const std::vector<int>& y_pm, double lambda) {
  const double n = static_cast<double>(X.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double margin = y_pm[i] * (dot_dense(w, X[i]) + b);
    loss += log1p_exp_neg(margin);
  }
  loss /= n;
  double reg = 0.0;
  for (double wj : w) reg += wj * wj;
  return loss + 0.5 * lambda * reg;
}

void logistic_gradient(const std::vector<double>& w, double b, const std::vector<SparseVector>& X,
                       const std::vector<int>& y_pm, double lambda, std::vector<double>& grad_w,
                       double& grad_b) {
  const double n = static_cast<double>(X.size());
  grad_w.assign(w.size(), 0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double margin = y_pm[i] * (dot_dense(w, X[i]) + b);
    const double coeff = -y_pm[i] * sigmoid_neg(margin) / n;
    for (const SparseEntry& e : X[i].entries) grad_w[e.index] += coeff * e.value;
    grad_b += coeff;
  }
  for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] += lambda * w[j];
}

// Full-batch gradient descent with Armijo backtracking; stops when the
// loss improves by less than 1e-6 or after 1000 iterations.
TrainedModel fit_logistic_regression(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                                     const std::vector<int>& y) {
  const std::size_t dim = X.front().dimension;
  const std::size_t n = X.size();
  const double c = spec.params.at("C");
  const double lambda = 1.0 / (c * static_cast<double>(n));

  const std::vector<int> y_pm = to_pm_labels(y);
  std::vector<double> w(dim, 0.0);
  double b = 0.0;

  double loss = logistic_loss(w, b, X, y_pm, lambda);
  std::vector<double> grad_w;
  std::vector<double> trial_w(dim);
  double grad_b = 0.0;

  for (int iter = 0; iter < 1000; ++iter) {
    if (!std::isfinite(loss)) {
      throw NumericError("logistic_regression: non-finite loss at iteration " +
                         std::to_string(iter));
    }
    logistic_gradient(w, b, X, y_pm, lambda, grad_w, grad_b);
    double grad_sq = grad_b * grad_b;
    for (double g : grad_w) grad_sq += g * g;
    if (grad_sq == 0.0) break;

    double step = 1.0;
    double next_loss = loss;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t j = 0; j < dim; ++j) trial_w[j] = w[j] - step * grad_w[j];
      const double trial_b = b - step * grad_b;
      next_loss = logistic_loss(trial_w, trial_b, X, y_pm, lambda);
      if (next_loss <= loss - 1e-4 * step * grad_sq) {
        w.swap(trial_w);
        b = trial_b;
        break;
      }
      step *= 0.5;
    }
    if (std::abs(loss - next_loss) < 1e-6) {
      loss = next_loss;
      break;
    }
    loss = next_loss;
  }

  return TrainedModel{spec, dim, LinearPayload{std::move(w), b}};
}

double svc_objective(const std::vector<double>& w, double b, const std::vector<SparseVector>& X,
                     const std::vector<int>& y_pm, double lambda) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double margin = y_pm[i] * (dot_dense(w, X[i]) + b);
    hinge += std::max(0.0, 1.0 - margin);
  }
  hinge /= static_cast<double>(X.size());
  double reg = 0.0;
  for (double wj : w) reg += wj * wj;
  return 0.5 * lambda * reg + hinge;
}

// Pegasos subgradient descent on the L2-regularized hinge loss with
// step size 1/(lambda t), seeded shuffling each epoch, and weights
// averaged over the final half of the 100 epochs. The bias follows the
// subgradient but is not regularized.
TrainedModel fit_linear_svc(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                            const std::vector<int>& y, std::vector<double>* epoch_objectives) {
  constexpr int kEpochs = 100;
  const std::size_t dim = X.front().dimension;
  const std::size_t n = X.size();
  const double c = spec.params.at("C");
  const double lambda = 1.0 / (c * static_cast<double>(n));

  const std::vector<int> y_pm = to_pm_labels(y);
  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  std::vector<double> w_sum(dim, 0.0);
  double b_sum = 0.0;
  int averaged_epochs = 0;

  SplitMix64 rng(spec.seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  std::uint64_t t = 0;
  for (int epoch = 1; epoch <= kEpochs; ++epoch) {
    rng.shuffle(order);
    for (const std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double margin = y_pm[i] * (dot_dense(w, X[i]) + b);
      const double shrink = 1.0 - eta * lambda;  // == 1 - 1/t
      for (double& wj : w) wj *= shrink;
      if (margin < 1.0) {
        const double scale = eta * y_pm[i];
        for (const SparseEntry& e : X[i].entries) w[e.index] += scale * e.value;
        b += scale;
      }
    }
    if (!std::isfinite(b) || !std::isfinite(w[0])) {
      throw NumericError("linear_svc: non-finite weights at epoch " + std::to_string(epoch));
    }
    if (epoch > kEpochs / 2) {
      for (std::size_t j = 0; j < dim; ++j) w_sum[j] += w[j];
      b_sum += b;
      ++averaged_epochs;
    }
    if (epoch_objectives != nullptr) {
      if (averaged_epochs == 0) {
        epoch_objectives->push_back(svc_objective(w, b, X, y_pm, lambda));
      } else {
        std::vector<double> w_avg(dim);
        for (std::size_t j = 0; j < dim; ++j) w_avg[j] = w_sum[j] / averaged_epochs;
        epoch_objectives->push_back(
            svc_objective(w_avg, b_sum / averaged_epochs, X, y_pm, lambda));
      }
    }
  }

  for (std::size_t j = 0; j < dim; ++j) w_sum[j] /= averaged_epochs;
  return TrainedModel{spec, dim, LinearPayload{std::move(w_sum), b_sum / averaged_epochs}};
}

}  // namespace commentcat::detail
