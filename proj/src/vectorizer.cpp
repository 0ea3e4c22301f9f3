#include "commentcat/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "commentcat/errors.hpp"

namespace commentcat {

TfidfModel TfidfModel::fit(const std::vector<std::string>& train_sentences) {
  if (train_sentences.empty()) {
    throw DomainError("tfidf: cannot fit on an empty corpus");
  }

  TfidfModel model;
  std::vector<std::size_t> df;
  std::vector<std::size_t> last_doc;  // last document that touched each term

  for (std::size_t d = 0; d < train_sentences.size(); ++d) {
    std::istringstream stream(train_sentences[d]);
    std::string token;
    while (stream >> token) {
      auto [it, inserted] = model.vocabulary_.index.try_emplace(
          token, static_cast<std::uint32_t>(model.vocabulary_.terms.size()));
      if (inserted) {
        model.vocabulary_.terms.push_back(token);
        df.push_back(0);
        last_doc.push_back(static_cast<std::size_t>(-1));
      }
      const std::uint32_t t = it->second;
      if (last_doc[t] != d) {
        last_doc[t] = d;
        ++df[t];
      }
    }
  }

  model.doc_count_ = train_sentences.size();
  const double n = static_cast<double>(model.doc_count_);
  model.idf_.resize(df.size());
  for (std::size_t t = 0; t < df.size(); ++t) {
    model.idf_[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[t]))) + 1.0;
  }
  return model;
}

TfidfModel TfidfModel::from_parts(std::vector<std::string> terms, std::vector<double> idf,
                                  std::size_t doc_count) {
  if (terms.size() != idf.size()) {
    throw DomainError("tfidf: vocabulary and idf sizes differ");
  }
  TfidfModel model;
  model.vocabulary_.terms = std::move(terms);
  for (std::uint32_t i = 0; i < model.vocabulary_.terms.size(); ++i) {
    model.vocabulary_.index[model.vocabulary_.terms[i]] = i;
  }
  if (model.vocabulary_.index.size() != model.vocabulary_.terms.size()) {
    throw DomainError("tfidf: duplicate vocabulary term");
  }
  model.idf_ = std::move(idf);
  model.doc_count_ = doc_count;
  return model;
}

SparseVector TfidfModel::transform(std::string_view sentence) const {
  std::vector<std::pair<std::uint32_t, std::size_t>> counts;  // (term index, raw count)
  {
    std::istringstream stream{std::string(sentence)};
    std::string token;
    while (stream >> token) {
      const auto it = vocabulary_.index.find(token);
      if (it == vocabulary_.index.end()) continue;  // out-of-vocabulary tokens are dropped
      auto pos = std::find_if(counts.begin(), counts.end(),
                              [&](const auto& p) { return p.first == it->second; });
      if (pos == counts.end()) {
        counts.emplace_back(it->second, 1);
      } else {
        ++pos->second;
      }
    }
  }
  std::sort(counts.begin(), counts.end());

  SparseVector vec;
  vec.dimension = vocabulary_.size();
  vec.entries.reserve(counts.size());
  double norm_sq = 0.0;
  for (const auto& [term, count] : counts) {
    const double value = static_cast<double>(count) * idf_[term];
    vec.entries.push_back({term, value});
    norm_sq += value * value;
  }
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (SparseEntry& e : vec.entries) e.value *= inv;
  }
  return vec;
}

}  // namespace commentcat
