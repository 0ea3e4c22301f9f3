#include "commentcat/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "commentcat/csv.hpp"
#include "commentcat/errors.hpp"
#include "commentcat/model_io.hpp"
#include "commentcat/rng.hpp"
#include "commentcat/sampler.hpp"
#include "commentcat/vectorizer.hpp"
#include "commentcat/version.hpp"

namespace commentcat {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", round4(value));
  return buf;
}

std::string cv_metric_name(CvMetric metric) {
  return metric == CvMetric::F1 ? "f1" : "accuracy";
}

// Everything the 8 family cells of one category share; computed once,
// deterministically (no randomness before oversampling).
struct PreparedCategory {
  Language language = Language::Java;
  std::string category;
  std::vector<SparseVector> train_x;
  std::vector<int> train_y;
  std::vector<SparseVector> test_x;
  std::vector<int> test_y;
  TfidfModel tfidf;
  std::string error;  // non-empty marks all cells of this category failed
};

PreparedCategory prepare_category(const std::vector<CommentRecord>& records, Language language,
                                  const std::string& category, const NormalizerConfig& normalizer) {
  PreparedCategory prep;
  prep.language = language;
  prep.category = category;
  try {
    const CategoryDataset dataset = filter_category(records, language, category);
    std::vector<std::string> normalized_train;
    normalized_train.reserve(dataset.train.size());
    for (const LabeledSentence& s : dataset.train) {
      normalized_train.push_back(normalize(s.sentence, normalizer));
      prep.train_y.push_back(s.label);
    }
    prep.tfidf = TfidfModel::fit(normalized_train);
    prep.train_x.reserve(normalized_train.size());
    for (const std::string& s : normalized_train) prep.train_x.push_back(prep.tfidf.transform(s));
    prep.test_x.reserve(dataset.test.size());
    for (const LabeledSentence& s : dataset.test) {
      prep.test_x.push_back(prep.tfidf.transform(normalize(s.sentence, normalizer)));
      prep.test_y.push_back(s.label);
    }
  } catch (const std::exception& e) {
    prep.error = e.what();
  }
  return prep;
}

Json spec_params_json(const LearnerSpec& spec) {
  Json params = Json::object();
  for (const auto& [name, value] : spec.params) {
    if (value == std::floor(value) && std::abs(value) < 1e15) {
      params[name] = static_cast<std::int64_t>(value);
    } else {
      params[name] = value;
    }
  }
  return params;
}

void write_scores_json(const std::filesystem::path& path, const CellResult& cell,
                       std::uint64_t cell_seed) {
  Json doc;
  doc["language"] = to_string(cell.language);
  doc["category"] = cell.category;
  doc["family"] = to_string(cell.family);
  doc["seed"] = cell_seed;
  doc["best_hyperparameters"] = spec_params_json(cell.best_spec);
  doc["cv_mean_score"] = cell.cv_mean_score;
  doc["precision"] = cell.scores.precision;
  doc["recall"] = cell.scores.recall;
  doc["f1"] = cell.scores.f1;
  doc["tp"] = cell.counts.tp;
  doc["fp"] = cell.counts.fp;
  doc["fn"] = cell.counts.fn;
  doc["tn"] = cell.counts.tn;
  doc["degenerate"] = degenerate(cell.counts);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

CellResult run_cell(const RunConfig& config, const PreparedCategory& prep, Family family) {
  const Clock::time_point start = Clock::now();
  CellResult cell;
  cell.language = prep.language;
  cell.category = prep.category;
  cell.family = family;
  cell.train_rows = prep.train_x.size();
  cell.test_rows = prep.test_x.size();
  cell.vocabulary_size = prep.tfidf.vocabulary().size();

  const std::uint64_t cell_seed = derive_seed(
      config.seed, to_string(prep.language) + "/" + prep.category + "/" + to_string(family));
  try {
    if (!prep.error.empty()) throw DomainError(prep.error);

    const std::uint64_t oversample_seed = derive_seed(cell_seed, "oversample");
    GridSearchOptions options;
    options.folds = 10;
    options.metric = config.cv_metric;
    options.stratified = config.stratified_folds;
    options.oversample_within_cv = config.oversample_after_split;
    options.oversample_seed = oversample_seed;

    std::vector<SparseVector> fit_x;
    std::vector<int> fit_y;
    if (config.oversample_after_split) {
      fit_x = prep.train_x;
      fit_y = prep.train_y;
    } else {
      std::tie(fit_x, fit_y) = random_oversample(prep.train_x, prep.train_y, oversample_seed);
    }
    cell.fit_rows = fit_x.size();

    const auto grid_it = config.grids.find(family);
    const ParamGrid grid = grid_it != config.grids.end() ? grid_it->second : default_grid(family);
    GridSearchResult search = grid_search(grid, fit_x, fit_y, cell_seed, options);

    const std::vector<int> y_pred = predict(search.best_model, prep.test_x);
    cell.counts = confusion(prep.test_y, y_pred);
    cell.scores = score(cell.counts);
    cell.best_spec = search.best_model.spec;
    cell.cv_mean_score = search.results[search.best_index].mean_score;

    const std::filesystem::path dir =
        config.out_dir / to_string(prep.language) / prep.category / to_string(family);
    std::filesystem::create_directories(dir);
    save_model(dir / "model.txt", search.best_model, prep.tfidf, config.normalizer);
    std::vector<std::string> ids;
    ids.reserve(prep.test_y.size());
    for (std::size_t i = 0; i < prep.test_y.size(); ++i) ids.push_back(std::to_string(i));
    write_predictions(prep.test_y, y_pred, ids, dir / "predictions.csv");
    write_scores_json(dir / "scores.json", cell, cell_seed);

    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  cell.wall_ms = elapsed_ms(start);
  return cell;
}

Json config_json(const RunConfig& config) {
  Json doc;
  Json datasets = Json::array();
  for (const DatasetSource& source : config.datasets) {
    Json entry;
    entry["path"] = source.path.string();
    entry["language"] = source.language.has_value() ? Json(to_string(*source.language))
                                                    : Json(nullptr);
    datasets.push_back(entry);
  }
  doc["datasets"] = datasets;
  doc["schema"] = {{"sentence", config.schema.sentence},
                   {"category", config.schema.category},
                   {"membership", config.schema.membership},
                   {"partition", config.schema.partition},
                   {"language", config.schema.language}};
  doc["seed"] = config.seed;
  Json languages = Json::array();
  for (Language l : config.languages) languages.push_back(to_string(l));
  doc["languages"] = languages;
  doc["categories"] = config.categories;
  Json families = Json::array();
  for (Family f : config.families) families.push_back(to_string(f));
  doc["families"] = families;
  Json grids = Json::object();
  for (const auto& [family, grid] : config.grids) {
    Json axes = Json::object();
    for (const auto& [name, values] : grid.axes) axes[name] = values;
    grids[to_string(family)] = axes;
  }
  doc["grids"] = grids;
  doc["out_dir"] = config.out_dir.string();
  doc["oversample_after_split"] = config.oversample_after_split;
  doc["cv_metric"] = cv_metric_name(config.cv_metric);
  doc["stratified_folds"] = config.stratified_folds;
  doc["workers"] = config.workers;
  doc["stopwords_source"] = config.stopwords_source;
  doc["contractions_source"] = config.contractions_source;
  return doc;
}

Json cell_json(const CellResult& cell) {
  Json doc;
  doc["language"] = to_string(cell.language);
  doc["category"] = cell.category;
  doc["family"] = to_string(cell.family);
  doc["status"] = cell.ok ? "ok" : "error";
  if (!cell.ok) doc["error"] = cell.error;
  doc["best_hyperparameters"] = cell.ok ? spec_params_json(cell.best_spec) : Json::object();
  doc["cv_mean_score"] = cell.cv_mean_score;
  doc["precision"] = cell.scores.precision;
  doc["recall"] = cell.scores.recall;
  doc["f1"] = cell.scores.f1;
  doc["tp"] = cell.counts.tp;
  doc["fp"] = cell.counts.fp;
  doc["fn"] = cell.counts.fn;
  doc["tn"] = cell.counts.tn;
  doc["degenerate"] = cell.ok && degenerate(cell.counts);
  doc["train_rows"] = cell.train_rows;
  doc["test_rows"] = cell.test_rows;
  doc["fit_rows"] = cell.fit_rows;
  doc["vocabulary_size"] = cell.vocabulary_size;
  doc["wall_ms"] = cell.wall_ms;
  return doc;
}

// Mean F1 per family over successful cells; nullopt when a family has
// no successful cell.
std::map<Family, std::optional<double>> family_averages(const RunManifest& manifest) {
  std::map<Family, std::optional<double>> out;
  for (Family family : manifest.config.families) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const CellResult& cell : manifest.cells) {
      if (cell.family == family && cell.ok) {
        sum += cell.scores.f1;
        ++count;
      }
    }
    out[family] = count > 0 ? std::optional<double>(sum / static_cast<double>(count))
                            : std::nullopt;
  }
  return out;
}

std::optional<Family> best_family(const RunManifest& manifest) {
  const auto averages = family_averages(manifest);
  std::optional<Family> best;
  double best_score = 0.0;
  for (Family family : manifest.config.families) {
    const std::optional<double> avg = averages.at(family);
    if (!avg.has_value()) continue;
    if (!best.has_value() || *avg > best_score) {
      best = family;
      best_score = *avg;
    }
  }
  return best;
}

std::vector<std::pair<Language, std::string>> category_order(const RunManifest& manifest) {
  std::vector<std::pair<Language, std::string>> order;
  for (const CellResult& cell : manifest.cells) {
    const std::pair<Language, std::string> key{cell.language, cell.category};
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
  }
  return order;
}

const CellResult* find_cell(const RunManifest& manifest, Language language,
                            const std::string& category, Family family) {
  for (const CellResult& cell : manifest.cells) {
    if (cell.language == language && cell.category == category && cell.family == family) {
      return &cell;
    }
  }
  return nullptr;
}

}  // namespace

bool RunManifest::any_failed() const {
  return std::any_of(cells.begin(), cells.end(), [](const CellResult& c) { return !c.ok; });
}

void write_predictions(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                       const std::vector<std::string>& ids, const std::filesystem::path& path) {
  if (y_true.size() != y_pred.size() || y_true.size() != ids.size()) {
    throw DomainError("write_predictions: ids/labels/predictions differ in length");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv_row(out, {"id", "true_label", "predicted_label"});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    write_csv_row(out, {ids[i], std::to_string(y_true[i]), std::to_string(y_pred[i])});
  }
  if (!out) throw IoError("failed writing " + path.string());
}

RunManifest run_experiment(const RunConfig& config, std::ostream* progress) {
  const Clock::time_point start = Clock::now();
  if (config.datasets.empty()) throw DomainError("run: no dataset given");
  if (config.out_dir.empty()) throw DomainError("run: no output directory given");
  config.normalizer.validate();

  RunManifest manifest;
  manifest.version = kVersion;
  manifest.config = config;
  for (Family family : config.families) {
    if (manifest.config.grids.find(family) == manifest.config.grids.end()) {
      manifest.config.grids[family] = default_grid(family);
    }
  }

  std::vector<CommentRecord> records;
  for (const DatasetSource& source : config.datasets) {
    std::vector<CommentRecord> part = load_dataset(source.path, config.schema, source.language);
    if (progress != nullptr) {
      *progress << "loaded " << part.size() << " records from " << source.path.string() << "\n";
    }
    records.insert(records.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  manifest.record_count = records.size();

  // job selection in canonical order: language, category, family
  const std::map<Language, std::vector<std::string>> present = list_categories(records);
  std::vector<std::pair<Language, std::string>> selected;
  for (const Language language : {Language::Java, Language::Pharo, Language::Python}) {
    if (!config.languages.empty() &&
        std::find(config.languages.begin(), config.languages.end(), language) ==
            config.languages.end()) {
      continue;
    }
    const auto it = present.find(language);
    if (it == present.end()) continue;
    for (const std::string& category : it->second) {
      if (!config.categories.empty() &&
          std::find(config.categories.begin(), config.categories.end(), category) ==
              config.categories.end()) {
        continue;
      }
      selected.emplace_back(language, category);
    }
  }
  if (selected.empty()) throw DomainError("run: no (language, category) pairs selected");

  std::vector<PreparedCategory> prepared;
  prepared.reserve(selected.size());
  for (const auto& [language, category] : selected) {
    prepared.push_back(prepare_category(records, language, category, manifest.config.normalizer));
  }

  struct CellJob {
    std::size_t prepared_index;
    Family family;
  };
  std::vector<CellJob> jobs;
  for (std::size_t p = 0; p < prepared.size(); ++p) {
    for (Family family : config.families) jobs.push_back({p, family});
  }

  std::filesystem::create_directories(config.out_dir);

  manifest.cells.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      const CellJob& job = jobs[i];
      CellResult cell = run_cell(manifest.config, prepared[job.prepared_index], job.family);
      if (progress != nullptr) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        *progress << "[" << to_string(cell.language) << "/" << cell.category << "/"
                  << to_string(cell.family) << "] "
                  << (cell.ok ? "f1=" + fmt4(cell.scores.f1) : "error: " + cell.error) << " ("
                  << fmt4(cell.wall_ms / 1000.0) << "s)\n";
      }
      manifest.cells[i] = std::move(cell);
    }
  };

  unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  manifest.total_wall_ms = elapsed_ms(start);

  {
    std::ofstream out(config.out_dir / "report.csv", std::ios::binary);
    if (!out) throw IoError("cannot write report.csv");
    out << render_report_csv(manifest);
  }
  {
    std::ofstream out(config.out_dir / "report.md", std::ios::binary);
    if (!out) throw IoError("cannot write report.md");
    out << render_report_md(manifest);
  }
  {
    Json doc;
    doc["toolkit_version"] = manifest.version;
    doc["config"] = config_json(manifest.config);
    doc["record_count"] = manifest.record_count;
    Json cells = Json::array();
    for (const CellResult& cell : manifest.cells) cells.push_back(cell_json(cell));
    doc["cells"] = cells;
    Json averages = Json::object();
    for (const auto& [family, avg] : family_averages(manifest)) {
      averages[to_string(family)] = avg.has_value() ? Json(*avg) : Json(nullptr);
    }
    doc["family_average_f1"] = averages;
    const std::optional<Family> best = best_family(manifest);
    doc["best_family"] = best.has_value() ? Json(to_string(*best)) : Json(nullptr);
    doc["total_wall_ms"] = manifest.total_wall_ms;
    std::ofstream out(config.out_dir / "manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write manifest.json");
    out << doc.dump(2) << '\n';
  }

  return manifest;
}

std::string render_report_csv(const RunManifest& manifest) {
  std::ostringstream out;
  std::vector<std::string> header{"language", "category"};
  for (Family family : manifest.config.families) header.push_back(to_string(family));
  write_csv_row(out, header);

  for (const auto& [language, category] : category_order(manifest)) {
    std::vector<std::string> row{to_string(language), category};
    for (Family family : manifest.config.families) {
      const CellResult* cell = find_cell(manifest, language, category, family);
      row.push_back(cell != nullptr && cell->ok ? fmt4(cell->scores.f1) : "");
    }
    write_csv_row(out, row);
  }

  std::vector<std::string> average_row{"average", ""};
  const auto averages = family_averages(manifest);
  for (Family family : manifest.config.families) {
    const std::optional<double> avg = averages.at(family);
    average_row.push_back(avg.has_value() ? fmt4(*avg) : "");
  }
  write_csv_row(out, average_row);
  return out.str();
}

std::string render_report_md(const RunManifest& manifest) {
  std::ostringstream out;
  out << "# Classifier comparison\n\n";
  out << "Binary F1 per category; best family per row in **bold**.\n\n";

  out << "| Language | Category |";
  for (Family family : manifest.config.families) out << " " << to_string(family) << " |";
  out << "\n|---|---|";
  for (std::size_t i = 0; i < manifest.config.families.size(); ++i) out << "---|";
  out << "\n";

  std::vector<std::string> degenerate_cells;
  for (const auto& [language, category] : category_order(manifest)) {
    double best_f1 = -1.0;
    for (Family family : manifest.config.families) {
      const CellResult* cell = find_cell(manifest, language, category, family);
      if (cell != nullptr && cell->ok) best_f1 = std::max(best_f1, cell->scores.f1);
    }
    out << "| " << to_string(language) << " | " << category << " |";
    for (Family family : manifest.config.families) {
      const CellResult* cell = find_cell(manifest, language, category, family);
      if (cell == nullptr || !cell->ok) {
        out << " error |";
        continue;
      }
      const std::string text = fmt4(cell->scores.f1);
      out << (cell->scores.f1 == best_f1 ? " **" + text + "** |" : " " + text + " |");
      if (degenerate(cell->counts)) {
        degenerate_cells.push_back(to_string(language) + "/" + category + "/" +
                                   to_string(family));
      }
    }
    out << "\n";
  }

  const auto averages = family_averages(manifest);
  out << "| | *average* |";
  for (Family family : manifest.config.families) {
    const std::optional<double> avg = averages.at(family);
    out << " " << (avg.has_value() ? fmt4(*avg) : "-") << " |";
  }
  out << "\n\n";

  const std::optional<Family> best = best_family(manifest);
  if (best.has_value()) {
    out << "Best average F1: **" << to_string(*best) << "** ("
        << fmt4(*averages.at(*best)) << ").\n\n";
    out << "## " << to_string(*best) << " breakdown\n\n";
    out << "| Language | Category | Precision | Recall | F1 |\n|---|---|---|---|---|\n";
    std::vector<ScoreTriple> triples;
    double psum = 0.0, rsum = 0.0;
    for (const auto& [language, category] : category_order(manifest)) {
      const CellResult* cell = find_cell(manifest, language, category, *best);
      if (cell == nullptr || !cell->ok) {
        out << "| " << to_string(language) << " | " << category << " | error | error | error |\n";
        continue;
      }
      out << "| " << to_string(language) << " | " << category << " | "
          << fmt4(cell->scores.precision) << " | " << fmt4(cell->scores.recall) << " | "
          << fmt4(cell->scores.f1) << " |\n";
      triples.push_back(cell->scores);
      psum += cell->scores.precision;
      rsum += cell->scores.recall;
    }
    if (!triples.empty()) {
      const double n = static_cast<double>(triples.size());
      out << "| | *average* | " << fmt4(psum / n) << " | " << fmt4(rsum / n) << " | "
          << fmt4(average_f1(triples)) << " |\n";
    }
    out << "\n";
  }

  if (!degenerate_cells.empty()) {
    out << "Note: precision/recall denominators of 0/0 were scored as 0 in: ";
    for (std::size_t i = 0; i < degenerate_cells.size(); ++i) {
      if (i > 0) out << ", ";
      out << degenerate_cells[i];
    }
    out << ".\n";
  }
  return out.str();
}

ClassifyResult classify(const std::filesystem::path& model_path, std::string_view sentence) {
  const LoadedModel loaded = load_model(model_path);
  ClassifyResult result;
  result.normalized = normalize(sentence, loaded.normalizer);
  const SparseVector vec = loaded.tfidf.transform(result.normalized);
  result.margin = decision_function(loaded.model, vec);
  result.label = result.margin > 0.0 ? 1 : 0;
  return result;
}

int verify_run(const std::filesystem::path& run_dir, std::ostream& log) {
  int mismatches = 0;

  // report.csv -> (language, category) -> family column -> printed F1
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>> report;
  std::vector<std::string> report_families;
  std::map<std::string, std::string> report_averages;
  {
    const auto rows = read_csv_file(run_dir / "report.csv");
    if (rows.empty()) throw FormatError("report.csv is empty");
    const std::vector<std::string>& header = rows.front();
    for (std::size_t c = 2; c < header.size(); ++c) report_families.push_back(header[c]);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const std::vector<std::string>& row = rows[r];
      if (row.size() != header.size()) throw FormatError("report.csv: ragged row");
      for (std::size_t c = 2; c < row.size(); ++c) {
        if (row[0] == "average") {
          report_averages[report_families[c - 2]] = row[c];
        } else {
          report[{row[0], row[1]}][report_families[c - 2]] = row[c];
        }
      }
    }
  }

  std::map<std::string, std::pair<double, std::size_t>> family_f1_sums;
  auto sorted_subdirs = [](const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_directory()) out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  for (const auto& language_dir : sorted_subdirs(run_dir)) {
    for (const auto& category_dir : sorted_subdirs(language_dir)) {
      for (const auto& family_dir : sorted_subdirs(category_dir)) {
        const std::filesystem::path predictions_path = family_dir / "predictions.csv";
        if (!std::filesystem::exists(predictions_path)) continue;
        const std::string language = language_dir.filename().string();
        const std::string category = category_dir.filename().string();
        const std::string family = family_dir.filename().string();
        const std::string tag = language + "/" + category + "/" + family;

        std::vector<int> y_true;
        std::vector<int> y_pred;
        const auto rows = read_csv_file(predictions_path);
        for (std::size_t r = 1; r < rows.size(); ++r) {
          y_true.push_back(std::stoi(rows[r].at(1)));
          y_pred.push_back(std::stoi(rows[r].at(2)));
        }
        const ConfusionCounts counts = confusion(y_true, y_pred);
        const ScoreTriple recomputed = score(counts);

        Json stored;
        {
          std::ifstream in(family_dir / "scores.json");
          if (!in) throw IoError("cannot open " + (family_dir / "scores.json").string());
          in >> stored;
        }
        const bool counts_match =
            stored.at("tp").get<std::size_t>() == counts.tp &&
            stored.at("fp").get<std::size_t>() == counts.fp &&
            stored.at("fn").get<std::size_t>() == counts.fn &&
            stored.at("tn").get<std::size_t>() == counts.tn;
        const bool scores_match =
            std::abs(stored.at("precision").get<double>() - recomputed.precision) < 1e-12 &&
            std::abs(stored.at("recall").get<double>() - recomputed.recall) < 1e-12 &&
            std::abs(stored.at("f1").get<double>() - recomputed.f1) < 1e-12;
        if (!counts_match || !scores_match) {
          log << "MISMATCH " << tag << ": scores.json disagrees with predictions.csv\n";
          ++mismatches;
        }

        const auto report_row = report.find({language, category});
        const std::string printed =
            report_row != report.end() && report_row->second.count(family) != 0
                ? report_row->second.at(family)
                : "";
        if (printed != fmt4(recomputed.f1)) {
          log << "MISMATCH " << tag << ": report.csv shows '" << printed << "', recomputed "
              << fmt4(recomputed.f1) << "\n";
          ++mismatches;
        } else {
          log << "ok " << tag << " f1=" << fmt4(recomputed.f1) << "\n";
        }

        auto& [sum, count] = family_f1_sums[family];
        sum += recomputed.f1;
        ++count;
      }
    }
  }

  for (const auto& [family, printed] : report_averages) {
    if (printed.empty()) continue;
    const auto it = family_f1_sums.find(family);
    if (it == family_f1_sums.end()) {
      log << "MISMATCH average/" << family << ": no cells found\n";
      ++mismatches;
      continue;
    }
    const double mean = it->second.first / static_cast<double>(it->second.second);
    if (fmt4(mean) != printed) {
      log << "MISMATCH average/" << family << ": report.csv shows '" << printed
          << "', recomputed " << fmt4(mean) << "\n";
      ++mismatches;
    }
  }

  if (mismatches == 0) log << "verified: reports are consistent with predictions\n";
  return mismatches;
}

RunManifest load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open " + manifest_path.string());
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw FormatError("manifest parse error: " + std::string(e.what()));
  }

  RunManifest manifest;
  try {
    manifest.version = doc.at("toolkit_version").get<std::string>();
    manifest.record_count = doc.at("record_count").get<std::size_t>();
    manifest.total_wall_ms = doc.value("total_wall_ms", 0.0);
    manifest.config.families.clear();
    for (const auto& name : doc.at("config").at("families")) {
      const std::optional<Family> family = parse_family(name.get<std::string>());
      if (!family.has_value()) throw FormatError("manifest: unknown family");
      manifest.config.families.push_back(*family);
    }
    for (const auto& cell_doc : doc.at("cells")) {
      CellResult cell;
      const std::optional<Language> language =
          parse_language(cell_doc.at("language").get<std::string>());
      const std::optional<Family> family = parse_family(cell_doc.at("family").get<std::string>());
      if (!language.has_value() || !family.has_value()) {
        throw FormatError("manifest: bad cell identity");
      }
      cell.language = *language;
      cell.category = cell_doc.at("category").get<std::string>();
      cell.family = *family;
      cell.ok = cell_doc.at("status").get<std::string>() == "ok";
      cell.error = cell_doc.value("error", "");
      cell.cv_mean_score = cell_doc.at("cv_mean_score").get<double>();
      cell.scores.precision = cell_doc.at("precision").get<double>();
      cell.scores.recall = cell_doc.at("recall").get<double>();
      cell.scores.f1 = cell_doc.at("f1").get<double>();
      cell.counts.tp = cell_doc.at("tp").get<std::size_t>();
      cell.counts.fp = cell_doc.at("fp").get<std::size_t>();
      cell.counts.fn = cell_doc.at("fn").get<std::size_t>();
      cell.counts.tn = cell_doc.at("tn").get<std::size_t>();
      cell.train_rows = cell_doc.value("train_rows", std::size_t{0});
      cell.test_rows = cell_doc.value("test_rows", std::size_t{0});
      cell.fit_rows = cell_doc.value("fit_rows", std::size_t{0});
      cell.vocabulary_size = cell_doc.value("vocabulary_size", std::size_t{0});
      cell.wall_ms = cell_doc.value("wall_ms", 0.0);
      manifest.cells.push_back(std::move(cell));
    }
  } catch (const Json::exception& e) {
    throw FormatError("manifest structure error: " + std::string(e.what()));
  }
  return manifest;
}

}  // namespace commentcat
