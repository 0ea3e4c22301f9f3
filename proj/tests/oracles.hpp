// Independent reference implementations used as test oracles. These
// deliberately recompute everything from first principles (dense
// matrices, full enumeration, finite differences) and must not call the
// code paths they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace oracles {

struct NaiveScores {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

inline NaiveScores naive_scores(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
  NaiveScores s;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] == 1) {
      if (y_pred[i] == 1)
        s.tp++;
      else
        s.fn++;
    } else {
      if (y_pred[i] == 1)
        s.fp++;
      else
        s.tn++;
    }
  }
  const double tp = static_cast<double>(s.tp);
  if (s.tp + s.fp > 0) s.precision = tp / static_cast<double>(s.tp + s.fp);
  if (s.tp + s.fn > 0) s.recall = tp / static_cast<double>(s.tp + s.fn);
  if (s.precision + s.recall > 0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

// Dense TF-IDF recomputation: vocabulary in first-occurrence order, raw
// counts times ln((1+N)/(1+df))+1, then L2 row normalization.
struct DenseTfidf {
  std::vector<std::string> vocab;
  std::vector<double> idf;
  std::vector<std::vector<double>> rows;  // transformed training rows

  std::vector<double> transform(const std::string& sentence) const {
    std::vector<double> row(vocab.size(), 0.0);
    std::istringstream stream(sentence);
    std::string tok;
    while (stream >> tok) {
      for (std::size_t t = 0; t < vocab.size(); ++t) {
        if (vocab[t] == tok) row[t] += 1.0;
      }
    }
    double norm = 0.0;
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      row[t] *= idf[t];
      norm += row[t] * row[t];
    }
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (double& v : row) v /= norm;
    }
    return row;
  }
};

inline DenseTfidf dense_tfidf(const std::vector<std::string>& corpus) {
  DenseTfidf model;
  for (const std::string& doc : corpus) {
    std::istringstream stream(doc);
    std::string tok;
    while (stream >> tok) {
      bool seen = false;
      for (const std::string& v : model.vocab) {
        if (v == tok) seen = true;
      }
      if (!seen) model.vocab.push_back(tok);
    }
  }
  model.idf.resize(model.vocab.size());
  const double n = static_cast<double>(corpus.size());
  for (std::size_t t = 0; t < model.vocab.size(); ++t) {
    double df = 0.0;
    for (const std::string& doc : corpus) {
      std::istringstream stream(doc);
      std::string tok;
      bool contains = false;
      while (stream >> tok) {
        if (tok == model.vocab[t]) contains = true;
      }
      if (contains) df += 1.0;
    }
    model.idf[t] = std::log((1.0 + n) / (1.0 + df)) + 1.0;
  }
  for (const std::string& doc : corpus) model.rows.push_back(model.transform(doc));
  return model;
}

// Full-enumeration multinomial NB log-odds with Laplace smoothing:
// log P(1|x) - log P(0|x) over dense documents.
inline double enum_multinomial_log_odds(const std::vector<std::vector<double>>& docs,
                                        const std::vector<int>& labels, double alpha,
                                        const std::vector<double>& x) {
  const std::size_t dim = docs.front().size();
  double log_posterior[2];
  for (int c = 0; c < 2; ++c) {
    double class_docs = 0.0;
    std::vector<double> counts(dim, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (labels[i] != c) continue;
      class_docs += 1.0;
      for (std::size_t t = 0; t < dim; ++t) {
        counts[t] += docs[i][t];
        total += docs[i][t];
      }
    }
    double lp = std::log(class_docs / static_cast<double>(docs.size()));
    for (std::size_t t = 0; t < dim; ++t) {
      const double theta = (counts[t] + alpha) / (total + alpha * static_cast<double>(dim));
      lp += x[t] * std::log(theta);
    }
    log_posterior[c] = lp;
  }
  return log_posterior[1] - log_posterior[0];
}

// Bernoulli NB with presence threshold > 0 and absence terms.
inline double enum_bernoulli_log_odds(const std::vector<std::vector<double>>& docs,
                                      const std::vector<int>& labels, double alpha,
                                      const std::vector<double>& x) {
  const std::size_t dim = docs.front().size();
  double log_posterior[2];
  for (int c = 0; c < 2; ++c) {
    double class_docs = 0.0;
    std::vector<double> present(dim, 0.0);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (labels[i] != c) continue;
      class_docs += 1.0;
      for (std::size_t t = 0; t < dim; ++t) {
        if (docs[i][t] > 0.0) present[t] += 1.0;
      }
    }
    double lp = std::log(class_docs / static_cast<double>(docs.size()));
    for (std::size_t t = 0; t < dim; ++t) {
      const double theta = (present[t] + alpha) / (class_docs + 2.0 * alpha);
      lp += x[t] > 0.0 ? std::log(theta) : std::log(1.0 - theta);
    }
    log_posterior[c] = lp;
  }
  return log_posterior[1] - log_posterior[0];
}

// Central finite difference d f / d p at the given step.
inline double central_difference(const std::function<double(double)>& f, double p, double h) {
  return (f(p + h) - f(p - h)) / (2.0 * h);
}

// Scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix) {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() /
            (prefix + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const std::filesystem::path p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace oracles
