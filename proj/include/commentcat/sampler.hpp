#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "commentcat/sparse.hpp"

namespace commentcat {

// Balances a binary training set by duplicating minority rows, drawn
// uniformly with replacement, until both label counts are equal. The
// output keeps every input row first (in input order), followed by the
// duplicates in draw order; duplicates are exact copies, never
// synthesized points. Deterministic for a given seed.
//
// Requires both labels to be present; test data must never be passed
// through here (the pipeline only ever feeds it training rows).
std::pair<std::vector<SparseVector>, std::vector<int>> random_oversample(
    const std::vector<SparseVector>& vectors, const std::vector<int>& labels,
    std::uint64_t seed);

}  // namespace commentcat
