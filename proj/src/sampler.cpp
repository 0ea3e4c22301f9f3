#include "commentcat/sampler.hpp"

#include <string>

#include "commentcat/errors.hpp"
#include "commentcat/rng.hpp"

namespace commentcat {

std::pair<std::vector<SparseVector>, std::vector<int>> random_oversample(
    const std::vector<SparseVector>& vectors, const std::vector<int>& labels,
    std::uint64_t seed) {
  if (vectors.size() != labels.size()) {
    throw DomainError("oversample: " + std::to_string(vectors.size()) + " vectors vs " +
                      std::to_string(labels.size()) + " labels");
  }

  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      positives.push_back(i);
    } else if (labels[i] == 0) {
      negatives.push_back(i);
    } else {
      throw DomainError("oversample: labels must be 0 or 1 (position " + std::to_string(i) + ")");
    }
  }
  if (positives.empty() || negatives.empty()) {
    throw DomainError("oversample: both labels must be present in the training data");
  }

  const std::vector<std::size_t>& minority =
      positives.size() < negatives.size() ? positives : negatives;
  const std::size_t deficit = positives.size() < negatives.size()
                                  ? negatives.size() - positives.size()
                                  : positives.size() - negatives.size();

  std::pair<std::vector<SparseVector>, std::vector<int>> out{vectors, labels};
  out.first.reserve(vectors.size() + deficit);
  out.second.reserve(labels.size() + deficit);

  SplitMix64 rng(seed);
  for (std::size_t d = 0; d < deficit; ++d) {
    const std::size_t pick = minority[rng.below(minority.size())];
    out.first.push_back(vectors[pick]);
    out.second.push_back(labels[pick]);
  }
  return out;
}

}  // namespace commentcat
