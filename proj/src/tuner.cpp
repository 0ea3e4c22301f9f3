#include "commentcat/tuner.hpp"

#include <numeric>
#include <sstream>

#include "commentcat/errors.hpp"
#include "commentcat/metrics.hpp"
#include "commentcat/rng.hpp"
#include "commentcat/sampler.hpp"

namespace commentcat {

ParamGrid default_grid(Family family) {
  switch (family) {
    case Family::DecisionTree: {
      std::vector<double> depths;
      for (int d = 5; d <= 100; d += 5) depths.push_back(d);
      return {family, {{"max_depth", std::move(depths)}}};
    }
    case Family::Knn:
      return {family, {{"k", {1, 3, 5, 7, 9, 11}}}};
    case Family::BernoulliNb:
    case Family::MultinomialNb:
      return {family, {{"alpha", {0.1, 0.5, 1.0}}}};
    case Family::RandomForest:
      return {family, {{"n_trees", {50, 100, 200}}}};
    case Family::LogisticRegression:
    case Family::LinearSvc:
      return {family, {{"C", {0.01, 0.1, 1.0, 10.0}}}};
    case Family::Mlp:
      return {family, {{"hidden", {32, 64, 128}}}};
  }
  return {family, {}};
}

std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k,
                                                    std::uint64_t seed) {
  if (k < 2) throw DomainError("kfold: k must be at least 2, got " + std::to_string(k));
  if (n < k) {
    throw DomainError("kfold: need at least k samples (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  rng.shuffle(order);

  std::vector<std::vector<std::size_t>> folds(k);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::size_t at = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(at),
                    order.begin() + static_cast<std::ptrdiff_t>(at + size));
    at += size;
  }
  return folds;
}

std::vector<std::vector<std::size_t>> stratified_kfold_indices(const std::vector<int>& labels,
                                                               std::size_t k,
                                                               std::uint64_t seed) {
  if (k < 2) throw DomainError("kfold: k must be at least 2, got " + std::to_string(k));
  if (labels.size() < k) {
    throw DomainError("kfold: need at least k samples (n=" + std::to_string(labels.size()) +
                      ", k=" + std::to_string(k) + ")");
  }
  SplitMix64 rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  for (int label = 0; label <= 1; ++label) {
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) indices.push_back(i);
    }
    rng.shuffle(indices);
    const std::size_t base = indices.size() / k;
    const std::size_t extra = indices.size() % k;
    std::size_t at = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const std::size_t size = base + (f < extra ? 1 : 0);
      folds[f].insert(folds[f].end(), indices.begin() + static_cast<std::ptrdiff_t>(at),
                      indices.begin() + static_cast<std::ptrdiff_t>(at + size));
      at += size;
    }
  }
  return folds;
}

namespace {

std::string describe_cell(const LearnerSpec& spec) {
  std::ostringstream out;
  out << to_string(spec.family) << " cell {";
  bool first = true;
  for (const auto& [name, value] : spec.params) {
    if (!first) out << ", ";
    out << name << "=" << value;
    first = false;
  }
  out << "}";
  return out.str();
}

double fold_score(CvMetric metric, const ConfusionCounts& counts) {
  return metric == CvMetric::F1 ? score(counts).f1 : accuracy(counts);
}

}  // namespace

GridSearchResult grid_search(const ParamGrid& grid, const std::vector<SparseVector>& X,
                             const std::vector<int>& y, std::uint64_t seed,
                             const GridSearchOptions& options) {
  for (const auto& [name, values] : grid.axes) {
    if (values.empty()) {
      throw DomainError("grid axis '" + name + "' has no values");
    }
  }

  // row-major cell enumeration: last axis varies fastest
  std::vector<LearnerSpec> cells;
  {
    std::vector<std::size_t> cursor(grid.axes.size(), 0);
    bool done = false;
    while (!done) {
      LearnerSpec spec{grid.family, default_params(grid.family), seed};
      for (std::size_t a = 0; a < grid.axes.size(); ++a) {
        spec.params[grid.axes[a].first] = grid.axes[a].second[cursor[a]];
      }
      validate_spec(spec);
      cells.push_back(std::move(spec));
      done = true;
      for (std::size_t a = grid.axes.size(); a > 0; --a) {
        const std::size_t idx = a - 1;
        if (++cursor[idx] < grid.axes[idx].second.size()) {
          done = false;
          break;
        }
        cursor[idx] = 0;
      }
    }
  }

  const std::vector<std::vector<std::size_t>> folds =
      options.stratified ? stratified_kfold_indices(y, options.folds, derive_seed(seed, "kfold"))
                         : kfold_indices(X.size(), options.folds, derive_seed(seed, "kfold"));

  std::vector<bool> in_fold(X.size());
  std::vector<CvResult> results;
  results.reserve(cells.size());

  for (const LearnerSpec& spec : cells) {
    CvResult result;
    result.spec = spec;
    result.fold_scores.reserve(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
      std::fill(in_fold.begin(), in_fold.end(), false);
      for (std::size_t i : folds[f]) in_fold[i] = true;

      std::vector<SparseVector> train_x;
      std::vector<int> train_y;
      std::vector<SparseVector> held_x;
      std::vector<int> held_y;
      train_x.reserve(X.size() - folds[f].size());
      for (std::size_t i = 0; i < X.size(); ++i) {
        if (in_fold[i]) {
          held_x.push_back(X[i]);
          held_y.push_back(y[i]);
        } else {
          train_x.push_back(X[i]);
          train_y.push_back(y[i]);
        }
      }
      if (options.oversample_within_cv) {
        std::tie(train_x, train_y) = random_oversample(
            train_x, train_y, derive_seed(options.oversample_seed, "fold/" + std::to_string(f)));
      }

      try {
        const TrainedModel model = fit(spec, train_x, train_y);
        result.fold_scores.push_back(
            fold_score(options.metric, confusion(held_y, predict(model, held_x))));
      } catch (const NumericError& e) {
        throw NumericError(describe_cell(spec) + ": " + e.what());
      } catch (const DomainError& e) {
        throw DomainError(describe_cell(spec) + ": " + e.what());
      }
    }
    result.mean_score =
        std::accumulate(result.fold_scores.begin(), result.fold_scores.end(), 0.0) /
        static_cast<double>(result.fold_scores.size());
    results.push_back(std::move(result));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].mean_score > results[best].mean_score) best = i;
  }

  TrainedModel best_model = [&] {
    try {
      if (options.oversample_within_cv) {
        auto [all_x, all_y] = random_oversample(X, y, options.oversample_seed);
        return fit(results[best].spec, all_x, all_y);
      }
      return fit(results[best].spec, X, y);
    } catch (const NumericError& e) {
      throw NumericError(describe_cell(results[best].spec) + " (refit): " + e.what());
    } catch (const DomainError& e) {
      throw DomainError(describe_cell(results[best].spec) + " (refit): " + e.what());
    }
  }();

  return GridSearchResult{std::move(best_model), std::move(results), best};
}

}  // namespace commentcat
