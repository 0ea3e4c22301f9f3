#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "commentcat/errors.hpp"
#include "commentcat/model_io.hpp"
#include "commentcat/runner.hpp"
#include "commentcat/version.hpp"

namespace {

using commentcat::Family;
using commentcat::Language;

// "--dataset java=path.csv" fixes the file language; a bare path means
// a combined file carrying a language column.
commentcat::DatasetSource parse_dataset_arg(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos) {
    return {arg, std::nullopt};
  }
  const auto language = commentcat::parse_language(arg.substr(0, eq));
  if (!language.has_value()) {
    throw CLI::ValidationError("--dataset", "unknown language prefix in '" + arg + "'");
  }
  return {arg.substr(eq + 1), language};
}

void apply_schema_overrides(commentcat::ColumnSchema& schema,
                            const std::vector<std::string>& pairs) {
  for (const std::string& pair : pairs) {
    const std::size_t eq = pair.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--schema", "expected key=value, got '" + pair + "'");
    }
    const std::string key = pair.substr(0, eq);
    const std::string value = pair.substr(eq + 1);
    if (key == "sentence") {
      schema.sentence = value;
    } else if (key == "category") {
      schema.category = value;
    } else if (key == "membership") {
      schema.membership = value;
    } else if (key == "partition") {
      schema.partition = value;
    } else if (key == "language") {
      schema.language = value;
    } else {
      throw CLI::ValidationError("--schema", "unknown schema key '" + key + "'");
    }
  }
}

std::map<Family, commentcat::ParamGrid> load_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw commentcat::IoError("cannot open grid file: " + path.string());
  nlohmann::ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw commentcat::FormatError("grid file parse error: " + std::string(e.what()));
  }
  std::map<Family, commentcat::ParamGrid> grids;
  for (const auto& [family_name, axes_doc] : doc.items()) {
    const auto family = commentcat::parse_family(family_name);
    if (!family.has_value()) {
      throw commentcat::FormatError("grid file: unknown family '" + family_name + "'");
    }
    commentcat::ParamGrid grid;
    grid.family = *family;
    for (const auto& [axis, values_doc] : axes_doc.items()) {
      std::vector<double> values;
      for (const auto& v : values_doc) values.push_back(v.get<double>());
      grid.axes.emplace_back(axis, std::move(values));
    }
    grids[*family] = std::move(grid);
  }
  return grids;
}

int command_run(const commentcat::RunConfig& config) {
  const commentcat::RunManifest manifest = commentcat::run_experiment(config, &std::cerr);
  std::size_t failed = 0;
  for (const auto& cell : manifest.cells) {
    if (!cell.ok) ++failed;
  }
  std::cerr << manifest.cells.size() - failed << "/" << manifest.cells.size()
            << " cells succeeded in " << manifest.total_wall_ms / 1000.0 << "s; outputs in "
            << config.out_dir.string() << "\n";
  return manifest.any_failed() ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"commentcat: per-category binary classifiers over code-comment sentences"};
  app.set_version_flag("--version", commentcat::kVersion);
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "train, tune and evaluate all selected cells");
  std::vector<std::string> dataset_args;
  std::vector<std::string> schema_pairs;
  std::vector<std::string> language_names;
  std::vector<std::string> category_names;
  std::vector<std::string> family_names;
  std::string grid_file;
  std::string stopwords_file;
  std::string contractions_file;
  std::string cv_metric_name = "f1";
  commentcat::RunConfig config;
  run->add_option("--dataset", dataset_args,
                  "dataset CSV; 'java=file.csv' fixes the language, a bare "
                  "path expects a language column")
      ->required();
  run->add_option("--schema", schema_pairs, "column overrides, e.g. sentence=comment_sentence");
  run->add_option("--languages", language_names, "subset of java,pharo,python");
  run->add_option("--categories", category_names, "subset of category names");
  run->add_option("--families", family_names, "subset of classifier families");
  run->add_option("--seed", config.seed, "base seed (default 0)");
  run->add_option("--grid", grid_file, "JSON grid override file");
  run->add_option("--out", config.out_dir, "output directory")->required();
  run->add_flag("--oversample-after-split", config.oversample_after_split,
                "diagnostic: oversample inside each CV fold instead of before the search");
  run->add_option("--cv-metric", cv_metric_name, "fold scoring metric: f1 (default) or accuracy");
  run->add_flag("--stratified-folds", config.stratified_folds,
                "stratify cross-validation folds by label");
  run->add_option("--workers", config.workers, "worker threads (default: hardware concurrency)");
  run->add_option("--stopwords", stopwords_file, "stopword list file (default: embedded)");
  run->add_option("--contractions", contractions_file, "contraction table file (default: embedded)");

  // --- classify ---
  auto* classify_cmd = app.add_subcommand("classify", "classify one sentence with a saved model");
  std::string model_path;
  std::string text;
  classify_cmd->add_option("--model", model_path, "model file")->required();
  classify_cmd->add_option("--text", text, "sentence to classify")->required();

  // --- verify ---
  auto* verify_cmd = app.add_subcommand("verify", "recompute scores from a run's predictions");
  std::string verify_dir;
  verify_cmd->add_option("--run", verify_dir, "run directory")->required();

  // --- report ---
  auto* report_cmd = app.add_subcommand("report", "re-render a run report from its manifest");
  std::string report_dir;
  std::string report_format = "csv";
  report_cmd->add_option("--run", report_dir, "run directory")->required();
  report_cmd->add_option("--format", report_format, "csv (default) or md");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      for (const std::string& arg : dataset_args) {
        config.datasets.push_back(parse_dataset_arg(arg));
      }
      apply_schema_overrides(config.schema, schema_pairs);
      for (const std::string& name : language_names) {
        const auto language = commentcat::parse_language(name);
        if (!language.has_value()) throw commentcat::DomainError("unknown language: " + name);
        config.languages.push_back(*language);
      }
      config.categories = category_names;
      if (!family_names.empty()) {
        config.families.clear();
        for (const std::string& name : family_names) {
          const auto family = commentcat::parse_family(name);
          if (!family.has_value()) throw commentcat::DomainError("unknown family: " + name);
          config.families.push_back(*family);
        }
      }
      if (!grid_file.empty()) config.grids = load_grid_file(grid_file);
      if (cv_metric_name == "f1") {
        config.cv_metric = commentcat::CvMetric::F1;
      } else if (cv_metric_name == "accuracy") {
        config.cv_metric = commentcat::CvMetric::Accuracy;
      } else {
        throw commentcat::DomainError("unknown cv metric: " + cv_metric_name);
      }
      if (!stopwords_file.empty()) {
        config.normalizer.stopwords = commentcat::load_stopwords(stopwords_file);
        config.stopwords_source = stopwords_file;
      }
      if (!contractions_file.empty()) {
        config.normalizer.contractions = commentcat::load_contractions(contractions_file);
        config.contractions_source = contractions_file;
      }
      return command_run(config);
    }
    if (classify_cmd->parsed()) {
      const commentcat::ClassifyResult result = commentcat::classify(model_path, text);
      std::cout << "label: " << result.label << "\n";
      std::cout << "margin: " << commentcat::format_double(result.margin) << "\n";
      std::cout << "normalized: " << result.normalized << "\n";
      return 0;
    }
    if (verify_cmd->parsed()) {
      return commentcat::verify_run(verify_dir, std::cout) == 0 ? 0 : 1;
    }
    if (report_cmd->parsed()) {
      const commentcat::RunManifest manifest =
          commentcat::load_manifest(std::filesystem::path(report_dir) / "manifest.json");
      if (report_format == "csv") {
        std::cout << commentcat::render_report_csv(manifest);
      } else if (report_format == "md") {
        std::cout << commentcat::render_report_md(manifest);
      } else {
        throw commentcat::DomainError("unknown report format: " + report_format);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
