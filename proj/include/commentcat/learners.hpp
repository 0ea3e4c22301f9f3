#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "commentcat/sparse.hpp"

namespace commentcat {

enum class Family {
  DecisionTree,
  Knn,
  BernoulliNb,
  MultinomialNb,
  RandomForest,
  LogisticRegression,
  LinearSvc,
  Mlp,
};

inline constexpr std::array<Family, 8> kAllFamilies = {
    Family::DecisionTree,  Family::Knn,          Family::BernoulliNb,
    Family::MultinomialNb, Family::RandomForest, Family::LogisticRegression,
    Family::LinearSvc,     Family::Mlp,
};

std::string to_string(Family family);
std::optional<Family> parse_family(std::string_view text);

// A classifier family plus the hyperparameters and seed that drive one
// fit. Hyperparameter names and ranges are validated per family:
//   decision_tree:        max_depth (integer >= 1)
//   knn:                  k (integer >= 1)
//   bernoulli_nb:         alpha (> 0)
//   multinomial_nb:       alpha (> 0)
//   random_forest:        n_trees (integer >= 1), max_depth (integer >= 1)
//   logistic_regression:  C (> 0)
//   linear_svc:           C (> 0)
//   mlp:                  hidden (integer >= 1)
struct LearnerSpec {
  Family family;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  bool operator==(const LearnerSpec&) const = default;
};

void validate_spec(const LearnerSpec& spec);
std::map<std::string, double> default_params(Family family);

// --- trained payloads ------------------------------------------------

// w.x + b decision value; shared by linear_svc and logistic_regression.
struct LinearPayload {
  std::vector<double> weights;
  double bias = 0.0;

  bool operator==(const LinearPayload&) const = default;
};

struct MultinomialNbPayload {
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> feature_log_prob;  // per class, length = dim

  bool operator==(const MultinomialNbPayload&) const = default;
};

struct BernoulliNbPayload {
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> log_theta;            // P(t present | class)
  std::array<std::vector<double>, 2> log_one_minus_theta;  // P(t absent | class)

  bool operator==(const BernoulliNbPayload&) const = default;
};

struct TreeNode {
  bool leaf = true;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  std::int32_t left = -1;   // rows with value <= threshold
  std::int32_t right = -1;  // rows with value > threshold
  int label = 0;
  double positive_fraction = 0.0;  // training fraction of label 1 at a leaf

  bool operator==(const TreeNode&) const = default;
};

struct TreePayload {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  bool operator==(const TreePayload&) const = default;
};

struct ForestPayload {
  std::vector<TreePayload> trees;

  bool operator==(const ForestPayload&) const = default;
};

struct KnnPayload {
  std::vector<SparseVector> train;
  std::vector<int> labels;
  std::size_t k = 1;

  bool operator==(const KnnPayload&) const = default;
};

// One hidden ReLU layer and a sigmoid output unit.
struct MlpPayload {
  std::size_t input_dim = 0;
  std::size_t hidden = 0;
  std::vector<double> w1;  // hidden x input_dim, row-major
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;

  bool operator==(const MlpPayload&) const = default;
};

using ModelPayload = std::variant<LinearPayload, MultinomialNbPayload, BernoulliNbPayload,
                                  TreePayload, ForestPayload, KnnPayload, MlpPayload>;

struct TrainedModel {
  LearnerSpec spec;
  std::size_t dimension = 0;  // training vocabulary size
  ModelPayload payload;

  Family family() const { return spec.family; }
  bool operator==(const TrainedModel&) const = default;
};

// --- fit / predict ----------------------------------------------------

// Deterministic given (spec, X, y); all vectors must share one
// dimension and both labels must be present.
TrainedModel fit(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                 const std::vector<int>& y);

// Margin-like value with sign semantics: predict(x) == 1 iff
// decision_function(x) > 0; an exact 0 resolves to label 0. Linear
// models return w.x + b, naive Bayes the class log-odds, the MLP its
// output logit, trees/forests/KNN vote fractions mapped onto [-1, 1].
double decision_function(const TrainedModel& model, const SparseVector& x);

int predict_one(const TrainedModel& model, const SparseVector& x);
std::vector<int> predict(const TrainedModel& model, const std::vector<SparseVector>& X);

namespace detail {

// Optimization internals exposed for gradient checks and convergence
// tests; identical code paths to the ones fit() uses.

// L2-regularized logistic loss over labels in {-1,+1}:
//   f = (1/n) sum log(1 + exp(-y (w.x + b))) + (lambda/2) ||w||^2
double logistic_loss(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y_pm,
                     double lambda);
void logistic_gradient(const std::vector<double>& w, double b,
                       const std::vector<SparseVector>& X, const std::vector<int>& y_pm,
                       double lambda, std::vector<double>& grad_w, double& grad_b);

// Pegasos objective: (lambda/2) ||w||^2 + (1/n) sum hinge.
double svc_objective(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y_pm,
                     double lambda);

// Records, per epoch, the objective of the model as it would be
// returned if training stopped there (raw weights for the first half,
// running average afterwards).
TrainedModel fit_linear_svc(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                            const std::vector<int>& y,
                            std::vector<double>* epoch_objectives);

// Mean binary cross-entropy and gradients for the MLP parameters.
double mlp_loss_and_gradient(const MlpPayload& params, const std::vector<SparseVector>& X,
                             const std::vector<int>& y, MlpPayload* gradients);

}  // namespace detail

}  // namespace commentcat
