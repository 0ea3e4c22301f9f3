#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "commentcat/learners.hpp"
#include "commentcat/rng.hpp"

namespace commentcat::detail {

namespace {

struct ColumnEntry {
  std::uint32_t row;
  double value;
};

struct ValueGroup {
  double value;
  std::size_t count;
  std::size_t positives;
};

double gini(std::size_t positives, std::size_t total) {
  const double p = static_cast<double>(positives) / static_cast<double>(total);
  const double q = 1.0 - p;
  return 1.0 - p * p - q * q;
}

// CART-style growth on sparse columns. Split thresholds are midpoints
// of consecutive distinct feature values (implicit zeros included);
// rows with value <= threshold go left. The best split maximizes Gini
// decrease, ties resolved by lowest feature index then lowest
// threshold. Leaves take the majority label, ties resolving to 0.
class TreeBuilder {
 public:
  TreeBuilder(const std::vector<SparseVector>& X, const std::vector<int>& y, int max_depth,
              std::size_t features_per_split, SplitMix64* rng)
      : X_(X), y_(y), max_depth_(max_depth), features_per_split_(features_per_split), rng_(rng) {
    dim_ = X.front().dimension;
    columns_.resize(dim_);
    for (std::uint32_t r = 0; r < X_.size(); ++r) {
      for (const SparseEntry& e : X_[r].entries) {
        columns_[e.index].push_back({r, e.value});
      }
    }
    in_node_.assign(X_.size(), false);
  }

  TreePayload build() {
    std::vector<std::uint32_t> rows(X_.size());
    std::iota(rows.begin(), rows.end(), 0u);
    nodes_.clear();
    build_node(std::move(rows), 0);
    return TreePayload{std::move(nodes_)};
  }

 private:
  static constexpr std::size_t kMinSamplesSplit = 2;

  const std::vector<SparseVector>& X_;
  const std::vector<int>& y_;
  const int max_depth_;
  const std::size_t features_per_split_;
  SplitMix64* const rng_;  // feature subsampling only; null = use all features

  std::size_t dim_ = 0;
  std::vector<std::vector<ColumnEntry>> columns_;
  std::vector<bool> in_node_;
  std::vector<TreeNode> nodes_;
  std::vector<std::pair<double, int>> scratch_values_;
  std::vector<ValueGroup> scratch_groups_;
  std::vector<std::uint32_t> scratch_features_;

  void make_leaf(std::size_t node_id, std::size_t positives, std::size_t total) {
    TreeNode& node = nodes_[node_id];
    node.leaf = true;
    node.label = 2 * positives > total ? 1 : 0;
    node.positive_fraction = static_cast<double>(positives) / static_cast<double>(total);
  }

  const std::vector<std::uint32_t>& candidate_features() {
    scratch_features_.resize(dim_);
    std::iota(scratch_features_.begin(), scratch_features_.end(), 0u);
    if (rng_ == nullptr || features_per_split_ >= dim_) return scratch_features_;
    for (std::size_t i = 0; i < features_per_split_; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng_->below(dim_ - i));
      std::swap(scratch_features_[i], scratch_features_[j]);
    }
    scratch_features_.resize(features_per_split_);
    std::sort(scratch_features_.begin(), scratch_features_.end());
    return scratch_features_;
  }

  std::size_t build_node(std::vector<std::uint32_t> rows, int depth) {
    const std::size_t node_id = nodes_.size();
    nodes_.emplace_back();

    const std::size_t n = rows.size();
    std::size_t positives = 0;
    for (std::uint32_t r : rows) positives += static_cast<std::size_t>(y_[r]);

    if (positives == 0 || positives == n || n < kMinSamplesSplit || depth >= max_depth_) {
      make_leaf(node_id, positives, n);
      return node_id;
    }

    for (std::uint32_t r : rows) in_node_[r] = true;
    const double parent_gini = gini(positives, n);
    const double n_inv = 1.0 / static_cast<double>(n);

    bool found = false;
    double best_decrease = 0.0;
    std::uint32_t best_feature = 0;
    double best_threshold = 0.0;

    for (const std::uint32_t f : candidate_features()) {
      scratch_values_.clear();
      std::size_t nonzero_pos = 0;
      for (const ColumnEntry& ce : columns_[f]) {
        if (!in_node_[ce.row]) continue;
        scratch_values_.push_back({ce.value, y_[ce.row]});
        nonzero_pos += static_cast<std::size_t>(y_[ce.row]);
      }
      const std::size_t nonzeros = scratch_values_.size();
      const std::size_t zeros = n - nonzeros;
      if (nonzeros == 0) continue;  // feature constant at zero within this node
      std::sort(scratch_values_.begin(), scratch_values_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      scratch_groups_.clear();
      bool zero_placed = zeros == 0;
      std::size_t i = 0;
      while (i < nonzeros) {
        const double v = scratch_values_[i].first;
        if (!zero_placed && v > 0.0) {
          scratch_groups_.push_back({0.0, zeros, positives - nonzero_pos});
          zero_placed = true;
        }
        std::size_t count = 0;
        std::size_t pos = 0;
        while (i < nonzeros && scratch_values_[i].first == v) {
          ++count;
          pos += static_cast<std::size_t>(scratch_values_[i].second);
          ++i;
        }
        scratch_groups_.push_back({v, count, pos});
      }
      if (!zero_placed) scratch_groups_.push_back({0.0, zeros, positives - nonzero_pos});
      if (scratch_groups_.size() < 2) continue;

      std::size_t left_n = 0;
      std::size_t left_pos = 0;
      for (std::size_t g = 0; g + 1 < scratch_groups_.size(); ++g) {
        left_n += scratch_groups_[g].count;
        left_pos += scratch_groups_[g].positives;
        const std::size_t right_n = n - left_n;
        const std::size_t right_pos = positives - left_pos;
        const double decrease = parent_gini -
                                static_cast<double>(left_n) * n_inv * gini(left_pos, left_n) -
                                static_cast<double>(right_n) * n_inv * gini(right_pos, right_n);
        if (decrease > best_decrease) {
          double threshold =
              0.5 * (scratch_groups_[g].value + scratch_groups_[g + 1].value);
          // midpoint may round up to the higher value; fall back to the
          // lower one so "value <= threshold" reproduces the counted split
          if (!(threshold < scratch_groups_[g + 1].value)) threshold = scratch_groups_[g].value;
          best_decrease = decrease;
          best_feature = f;
          best_threshold = threshold;
          found = true;
        }
      }
    }

    for (std::uint32_t r : rows) in_node_[r] = false;

    if (!found) {
      make_leaf(node_id, positives, n);
      return node_id;
    }

    std::vector<std::uint32_t> left_rows;
    std::vector<std::uint32_t> right_rows;
    for (std::uint32_t r : rows) {
      if (value_at(X_[r], best_feature) <= best_threshold) {
        left_rows.push_back(r);
      } else {
        right_rows.push_back(r);
      }
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes_[node_id].leaf = false;
    nodes_[node_id].feature = best_feature;
    nodes_[node_id].threshold = best_threshold;
    nodes_[node_id].label = 2 * positives > n ? 1 : 0;
    nodes_[node_id].positive_fraction = static_cast<double>(positives) / static_cast<double>(n);

    const std::size_t left_id = build_node(std::move(left_rows), depth + 1);
    nodes_[node_id].left = static_cast<std::int32_t>(left_id);
    const std::size_t right_id = build_node(std::move(right_rows), depth + 1);
    nodes_[node_id].right = static_cast<std::int32_t>(right_id);
    return node_id;
  }
};

const TreeNode& walk_to_leaf(const TreePayload& tree, const SparseVector& x) {
  std::size_t node = 0;
  while (!tree.nodes[node].leaf) {
    const TreeNode& t = tree.nodes[node];
    node = value_at(x, t.feature) <= t.threshold ? static_cast<std::size_t>(t.left)
                                                 : static_cast<std::size_t>(t.right);
  }
  return tree.nodes[node];
}

}  // namespace

TrainedModel fit_decision_tree(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                               const std::vector<int>& y) {
  const int max_depth = static_cast<int>(spec.params.at("max_depth"));
  TreeBuilder builder(X, y, max_depth, X.front().dimension, nullptr);
  return TrainedModel{spec, X.front().dimension, builder.build()};
}

double tree_decision(const TreePayload& tree, const SparseVector& x) {
  return 2.0 * walk_to_leaf(tree, x).positive_fraction - 1.0;
}

// Bootstrap aggregation: each tree trains on n rows drawn with
// replacement and considers ceil(sqrt(p)) features per split. Per-tree
// seeds derive from spec.seed via the "tree/<index>" tag.
TrainedModel fit_random_forest(const LearnerSpec& spec, const std::vector<SparseVector>& X,
                               const std::vector<int>& y) {
  const std::size_t n_trees = static_cast<std::size_t>(spec.params.at("n_trees"));
  const int max_depth = static_cast<int>(spec.params.at("max_depth"));
  const std::size_t n = X.size();
  const std::size_t dim = X.front().dimension;
  const std::size_t features_per_split =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dim))));

  ForestPayload payload;
  payload.trees.reserve(n_trees);
  for (std::size_t b = 0; b < n_trees; ++b) {
    SplitMix64 rng(derive_seed(spec.seed, "tree/" + std::to_string(b)));
    std::vector<SparseVector> boot_x;
    std::vector<int> boot_y;
    boot_x.reserve(n);
    boot_y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t pick = static_cast<std::size_t>(rng.below(n));
      boot_x.push_back(X[pick]);
      boot_y.push_back(y[pick]);
    }
    TreeBuilder builder(boot_x, boot_y, max_depth, features_per_split, &rng);
    payload.trees.push_back(builder.build());
  }
  return TrainedModel{spec, dim, std::move(payload)};
}

double forest_decision(const ForestPayload& forest, const SparseVector& x) {
  std::size_t votes_one = 0;
  for (const TreePayload& tree : forest.trees) {
    votes_one += static_cast<std::size_t>(walk_to_leaf(tree, x).label);
  }
  const double total = static_cast<double>(forest.trees.size());
  return (2.0 * static_cast<double>(votes_one) - total) / total;
}

}  // namespace commentcat::detail
