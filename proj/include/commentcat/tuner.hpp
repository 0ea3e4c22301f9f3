#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "commentcat/learners.hpp"
#include "commentcat/sparse.hpp"

namespace commentcat {

// Exhaustive hyperparameter grid: ordered axes, each with at least one
// value. Cells enumerate in row-major order (last axis fastest).
struct ParamGrid {
  Family family;
  std::vector<std::pair<std::string, std::vector<double>>> axes;
};

// Default axes per family; non-axis hyperparameters keep their
// default_params() values.
ParamGrid default_grid(Family family);

struct CvResult {
  LearnerSpec spec;
  std::vector<double> fold_scores;
  double mean_score = 0.0;
};

enum class CvMetric { F1, Accuracy };

struct GridSearchOptions {
  std::size_t folds = 10;
  CvMetric metric = CvMetric::F1;
  bool stratified = false;
  // Leakage-free diagnostic mode: oversample inside each fold's
  // training portion instead of expecting pre-balanced input. Per-fold
  // seeds derive from oversample_seed via "fold/<index>"; the final
  // refit oversamples the full input with oversample_seed itself.
  bool oversample_within_cv = false;
  std::uint64_t oversample_seed = 0;
};

// Seeded shuffle of [0, n), then contiguous chunks; the first (n mod k)
// folds carry the extra element, so fold sizes differ by at most one
// with the larger folds first.
std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k,
                                                    std::uint64_t seed);

// Label-balanced variant: each label's indices are shuffled and chunked
// with the same rule, then fold i concatenates the label-0 and label-1
// chunks i.
std::vector<std::vector<std::size_t>> stratified_kfold_indices(const std::vector<int>& labels,
                                                               std::size_t k, std::uint64_t seed);

struct GridSearchResult {
  TrainedModel best_model;
  std::vector<CvResult> results;
  std::size_t best_index = 0;
};

// Scores every grid cell with k-fold cross-validation (train on k-1
// folds, score the held-out fold; folds are computed once per call from
// derive_seed(seed, "kfold") and shared across cells), selects the best
// mean score with ties going to the earliest cell in grid order, then
// refits the winning spec on all of (X, y). Every cell's LearnerSpec
// uses `seed` directly.
GridSearchResult grid_search(const ParamGrid& grid, const std::vector<SparseVector>& X,
                             const std::vector<int>& y, std::uint64_t seed,
                             const GridSearchOptions& options = {});

}  // namespace commentcat
