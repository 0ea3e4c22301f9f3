#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "commentcat/corpus.hpp"
#include "commentcat/learners.hpp"
#include "commentcat/metrics.hpp"
#include "commentcat/textnorm.hpp"
#include "commentcat/tuner.hpp"

namespace commentcat {

struct DatasetSource {
  std::filesystem::path path;
  std::optional<Language> language;  // nullopt = combined file with a language column
};

struct RunConfig {
  std::vector<DatasetSource> datasets;
  ColumnSchema schema;
  std::uint64_t seed = 0;
  std::vector<Language> languages;      // empty = all present
  std::vector<std::string> categories;  // canonical ids; empty = all present
  std::vector<Family> families{kAllFamilies.begin(), kAllFamilies.end()};
  std::map<Family, ParamGrid> grids;  // filled from defaults + overrides
  std::filesystem::path out_dir;
  bool oversample_after_split = false;  // leakage-free CV diagnostic mode
  CvMetric cv_metric = CvMetric::F1;
  bool stratified_folds = false;
  unsigned workers = 0;  // 0 = hardware concurrency
  NormalizerConfig normalizer = NormalizerConfig::defaults();
  std::string stopwords_source = "embedded";
  std::string contractions_source = "embedded";
};

struct CellResult {
  Language language = Language::Java;
  std::string category;
  Family family = Family::DecisionTree;
  bool ok = false;
  std::string error;
  LearnerSpec best_spec;
  double cv_mean_score = 0.0;
  ConfusionCounts counts;
  ScoreTriple scores;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::size_t fit_rows = 0;  // after oversampling (default mode)
  std::size_t vocabulary_size = 0;
  double wall_ms = 0.0;
};

struct RunManifest {
  std::string version;
  RunConfig config;
  std::size_t record_count = 0;
  std::vector<CellResult> cells;  // deterministic order: language, category, family
  double total_wall_ms = 0.0;

  bool any_failed() const;
};

// Executes the full per-category pipeline for every selected
// (category, family) cell: normalize, fit TF-IDF on the training
// partition, transform both partitions, oversample the training
// vectors, grid-search with cross-validation, refit the winner, predict
// the test partition and score. Each cell writes
//   <out>/<language>/<category>/<family>/{model.txt,predictions.csv,scores.json}
// and the run ends with top-level report.csv, report.md and
// manifest.json. Cell failures are recorded and do not abort the run.
//
// Cell randomness derives from config.seed via
// derive_seed(seed, "<language>/<category>/<family>"), so subsetting a
// run never shifts other cells' draws; outputs are independent of the
// worker count.
RunManifest run_experiment(const RunConfig& config, std::ostream* progress = nullptr);

// CSV with header id,true_label,predicted_label, one row per test
// instance in test-set order.
void write_predictions(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                       const std::vector<std::string>& ids, const std::filesystem::path& path);

struct ClassifyResult {
  int label = 0;
  double margin = 0.0;
  std::string normalized;
};

// Single-sentence inference against a persisted model file, using the
// normalizer config and TF-IDF vocabulary stored inside it.
ClassifyResult classify(const std::filesystem::path& model_path, std::string_view sentence);

// Recomputes every cell's scores from its predictions.csv and checks
// them against scores.json and report.csv. Returns the number of
// mismatches (0 = consistent).
int verify_run(const std::filesystem::path& run_dir, std::ostream& log);

// Report rendering from an in-memory manifest (report subcommand reads
// manifest.json back via load_manifest_cells).
std::string render_report_csv(const RunManifest& manifest);
std::string render_report_md(const RunManifest& manifest);
RunManifest load_manifest(const std::filesystem::path& manifest_path);

}  // namespace commentcat
