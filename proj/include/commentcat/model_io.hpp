#pragma once

#include <filesystem>

#include "commentcat/learners.hpp"
#include "commentcat/textnorm.hpp"
#include "commentcat/vectorizer.hpp"

namespace commentcat {

struct LoadedModel {
  TrainedModel model;
  TfidfModel tfidf;
  NormalizerConfig normalizer;
};

// Self-contained, human-readable text format carrying the normalizer
// config, the fitted TF-IDF vocabulary/idf table, and the learner
// payload. Floating-point values use shortest round-trip decimals, so
// load(save(m)) reproduces predictions bit-for-bit.
void save_model(const std::filesystem::path& path, const TrainedModel& model,
                const TfidfModel& tfidf, const NormalizerConfig& normalizer);

// Throws FormatError on truncated or corrupt files; never returns a
// partially parsed model.
LoadedModel load_model(const std::filesystem::path& path);

// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);
double parse_double(const std::string& text);

}  // namespace commentcat
