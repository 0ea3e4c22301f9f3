#include "commentcat/learners.hpp"

#include <cmath>
#include <string>

#include "commentcat/errors.hpp"

namespace commentcat {

std::string to_string(Family family) {
  switch (family) {
    case Family::DecisionTree:
      return "decision_tree";
    case Family::Knn:
      return "knn";
    case Family::BernoulliNb:
      return "bernoulli_nb";
    case Family::MultinomialNb:
      return "multinomial_nb";
    case Family::RandomForest:
      return "random_forest";
    case Family::LogisticRegression:
      return "logistic_regression";
    case Family::LinearSvc:
      return "linear_svc";
    case Family::Mlp:
      return "mlp";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view text) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == text) return f;
  }
  return std::nullopt;
}

namespace {

bool is_positive_integer(double v) { return v >= 1.0 && v == std::floor(v); }

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

std::map<std::string, double> default_params(Family family) {
  switch (family) {
    case Family::DecisionTree:
      return {{"max_depth", 50.0}};
    case Family::Knn:
      return {{"k", 5.0}};
    case Family::BernoulliNb:
    case Family::MultinomialNb:
      return {{"alpha", 1.0}};
    case Family::RandomForest:
      return {{"n_trees", 100.0}, {"max_depth", 50.0}};
    case Family::LogisticRegression:
    case Family::LinearSvc:
      return {{"C", 1.0}};
    case Family::Mlp:
      return {{"hidden", 64.0}};
  }
  return {};
}

void validate_spec(const LearnerSpec& spec) {
  const std::string fam = to_string(spec.family);
  auto check_known = [&](std::initializer_list<const char*> names) {
    for (const auto& [name, value] : spec.params) {
      bool known = false;
      for (const char* n : names) {
        if (name == n) known = true;
      }
      require(known, fam + ": unknown hyperparameter '" + name + "'");
      (void)value;
    }
  };
  auto get = [&](const char* name) -> double {
    const auto it = spec.params.find(name);
    require(it != spec.params.end(), fam + ": missing hyperparameter '" + std::string(name) + "'");
    return it->second;
  };

  switch (spec.family) {
    case Family::DecisionTree:
      check_known({"max_depth"});
      require(is_positive_integer(get("max_depth")), fam + ": max_depth must be an integer >= 1");
      break;
    case Family::Knn:
      check_known({"k"});
      require(is_positive_integer(get("k")), fam + ": k must be an integer >= 1");
      break;
    case Family::BernoulliNb:
    case Family::MultinomialNb:
      check_known({"alpha"});
      require(get("alpha") > 0.0, fam + ": alpha must be > 0");
      break;
    case Family::RandomForest:
      check_known({"n_trees", "max_depth"});
      require(is_positive_integer(get("n_trees")), fam + ": n_trees must be an integer >= 1");
      require(is_positive_integer(get("max_depth")), fam + ": max_depth must be an integer >= 1");
      break;
    case Family::LogisticRegression:
    case Family::LinearSvc:
      check_known({"C"});
      require(get("C") > 0.0, fam + ": C must be > 0");
      break;
    case Family::Mlp:
      check_known({"hidden"});
      require(is_positive_integer(get("hidden")), fam + ": hidden must be an integer >= 1");
      break;
  }
}

namespace detail {

void validate_training_input(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                             const std::vector<int>& y) {
  validate_spec(spec);
  const std::string fam = to_string(spec.family);
  require(!X.empty(), fam + ": training set is empty");
  require(X.size() == y.size(), fam + ": " + std::to_string(X.size()) + " vectors vs " +
                                    std::to_string(y.size()) + " labels");
  const std::size_t dim = X.front().dimension;
  bool saw_pos = false;
  bool saw_neg = false;
  for (std::size_t i = 0; i < X.size(); ++i) {
    require(X[i].dimension == dim,
            fam + ": vector dimension mismatch at row " + std::to_string(i));
    require(y[i] == 0 || y[i] == 1, fam + ": labels must be 0 or 1");
    (y[i] == 1 ? saw_pos : saw_neg) = true;
  }
  require(saw_pos && saw_neg, fam + ": both labels must be present in the training data");
}

TrainedModel fit_decision_tree(const LearnerSpec&, const std::vector<SparseVector>&,
                               const std::vector<int>&);
TrainedModel fit_random_forest(const LearnerSpec&, const std::vector<SparseVector>&,
                               const std::vector<int>&);
TrainedModel fit_knn(const LearnerSpec&, const std::vector<SparseVector>&,
                     const std::vector<int>&);
TrainedModel fit_multinomial_nb(const LearnerSpec&, const std::vector<SparseVector>&,
                                const std::vector<int>&);
TrainedModel fit_bernoulli_nb(const LearnerSpec&, const std::vector<SparseVector>&,
                              const std::vector<int>&);
TrainedModel fit_logistic_regression(const LearnerSpec&, const std::vector<SparseVector>&,
                                     const std::vector<int>&);
TrainedModel fit_mlp(const LearnerSpec&, const std::vector<SparseVector>&,
                     const std::vector<int>&);

double tree_decision(const TreePayload&, const SparseVector&);
double forest_decision(const ForestPayload&, const SparseVector&);
double knn_decision(const KnnPayload&, const SparseVector&);
double multinomial_nb_decision(const MultinomialNbPayload&, const SparseVector&);
double bernoulli_nb_decision(const BernoulliNbPayload&, const SparseVector&);
double mlp_decision(const MlpPayload&, const SparseVector&);

}  // namespace detail

TrainedModel fit(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                 const std::vector<int>& y) {
  detail::validate_training_input(spec, X, y);
  switch (spec.family) {
    case Family::DecisionTree:
      return detail::fit_decision_tree(spec, X, y);
    case Family::Knn:
      return detail::fit_knn(spec, X, y);
    case Family::BernoulliNb:
      return detail::fit_bernoulli_nb(spec, X, y);
    case Family::MultinomialNb:
      return detail::fit_multinomial_nb(spec, X, y);
    case Family::RandomForest:
      return detail::fit_random_forest(spec, X, y);
    case Family::LogisticRegression:
      return detail::fit_logistic_regression(spec, X, y);
    case Family::LinearSvc:
      return detail::fit_linear_svc(spec, X, y, nullptr);
    case Family::Mlp:
      return detail::fit_mlp(spec, X, y);
  }
  throw DomainError("fit: unknown family");
}

double decision_function(const TrainedModel& model, const SparseVector& x) {
  if (x.dimension != model.dimension) {
    throw DomainError(to_string(model.family()) + ": input dimension " +
                      std::to_string(x.dimension) + " does not match model dimension " +
                      std::to_string(model.dimension));
  }
  return std::visit(
      [&](const auto& payload) -> double {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, LinearPayload>) {
          return dot_dense(payload.weights, x) + payload.bias;
        } else if constexpr (std::is_same_v<T, MultinomialNbPayload>) {
          return detail::multinomial_nb_decision(payload, x);
        } else if constexpr (std::is_same_v<T, BernoulliNbPayload>) {
          return detail::bernoulli_nb_decision(payload, x);
        } else if constexpr (std::is_same_v<T, TreePayload>) {
          return detail::tree_decision(payload, x);
        } else if constexpr (std::is_same_v<T, ForestPayload>) {
          return detail::forest_decision(payload, x);
        } else if constexpr (std::is_same_v<T, KnnPayload>) {
          return detail::knn_decision(payload, x);
        } else {
          return detail::mlp_decision(payload, x);
        }
      },
      model.payload);
}

int predict_one(const TrainedModel& model, const SparseVector& x) {
  return decision_function(model, x) > 0.0 ? 1 : 0;
}

std::vector<int> predict(const TrainedModel& model, const std::vector<SparseVector>& X) {
  std::vector<int> out;
  out.reserve(X.size());
  for (const SparseVector& x : X) out.push_back(predict_one(model, x));
  return out;
}

}  // namespace commentcat
