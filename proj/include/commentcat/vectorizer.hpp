#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "commentcat/sparse.hpp"

namespace commentcat {

// Term -> dense 0-based index, insertion-ordered by first occurrence in
// the training corpus.
struct Vocabulary {
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::string> terms;  // terms[i] has index i

  std::size_t size() const { return terms.size(); }
};

// Fitted TF-IDF model over normalized (whitespace-tokenized) sentences.
//
// idf[t] = ln((1 + N) / (1 + df(t))) + 1, where N is the number of
// training sentences and df(t) counts the sentences containing t.
// transform multiplies raw term counts by idf and L2-normalizes the
// result; tokens outside the training vocabulary are dropped, which is
// what keeps train and test matrices over the same columns.
class TfidfModel {
 public:
  static TfidfModel fit(const std::vector<std::string>& train_sentences);
  static TfidfModel from_parts(std::vector<std::string> terms, std::vector<double> idf,
                               std::size_t doc_count);

  SparseVector transform(std::string_view sentence) const;

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t doc_count() const { return doc_count_; }

 private:
  TfidfModel() = default;

  Vocabulary vocabulary_;
  std::vector<double> idf_;
  std::size_t doc_count_ = 0;
};

}  // namespace commentcat
