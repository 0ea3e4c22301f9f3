#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace commentcat {

struct SparseEntry {
  std::uint32_t index;
  double value;

  bool operator==(const SparseEntry&) const = default;
};

// One vectorized sentence: index/value pairs with strictly increasing
// indices, all below `dimension`. Zero values are never stored.
struct SparseVector {
  std::vector<SparseEntry> entries;
  std::size_t dimension = 0;

  bool operator==(const SparseVector&) const = default;
};

inline double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    const std::uint32_t ai = a.entries[i].index;
    const std::uint32_t bj = b.entries[j].index;
    if (ai == bj) {
      sum += a.entries[i].value * b.entries[j].value;
      ++i;
      ++j;
    } else if (ai < bj) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

inline double dot_dense(const std::vector<double>& w, const SparseVector& x) {
  double sum = 0.0;
  for (const SparseEntry& e : x.entries) sum += w[e.index] * e.value;
  return sum;
}

inline double l2_norm(const SparseVector& v) {
  double sum = 0.0;
  for (const SparseEntry& e : v.entries) sum += e.value * e.value;
  return std::sqrt(sum);
}

// 0.0 for absent indices.
inline double value_at(const SparseVector& v, std::uint32_t index) {
  std::size_t lo = 0, hi = v.entries.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (v.entries[mid].index < index)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < v.entries.size() && v.entries[lo].index == index) return v.entries[lo].value;
  return 0.0;
}

}  // namespace commentcat
