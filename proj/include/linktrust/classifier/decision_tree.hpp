//
// Copyright 2026 The LinkTrust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "linktrust/classifier/common.hpp"

namespace linktrust {

inline double entropy_bits(std::size_t positives, std::size_t total) {
  if (total == 0 || positives == 0 || positives == total) return 0.0;
  const double p = static_cast<double>(positives) / static_cast<double>(total);
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

struct TreeOptions {
  int min_leaf = 2;
  // When > 0, each split considers only a random subset of this many
  // features (random-forest style); requires an rng.
  int feature_subset = 0;
};

// C4.5-flavoured binary decision tree: numeric thresholds at midpoints
// between sorted distinct values, per-feature threshold chosen by information
// gain, feature chosen by gain ratio. No pruning beyond the min_leaf floor.
// All tie-breaks are deterministic (lower threshold, lower feature index).
class DecisionTreeClassifier final : public ClassifierImpl {
 public:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t count = 0;
    std::uint32_t positives = 0;

    bool is_leaf() const { return feature < 0; }
  };

  static DecisionTreeClassifier fit(const TrainingData& data,
                                    const TreeOptions& options,
                                    SplitMix64* rng = nullptr) {
    if (data.rows == 0) {
      throw Error(Errc::EmptyTrainingSet, "no training instances");
    }
    DecisionTreeClassifier tree;
    std::vector<std::size_t> indices(data.rows);
    for (std::size_t i = 0; i < data.rows; ++i) indices[i] = i;
    tree.build(data, options, rng, indices);
    return tree;
  }

  double predict(std::span<const double> row) const override {
    std::int32_t node = 0;
    while (!nodes_[node].is_leaf()) {
      node = row[nodes_[node].feature] <= nodes_[node].threshold
                 ? nodes_[node].left
                 : nodes_[node].right;
    }
    return static_cast<double>(nodes_[node].positives) /
           static_cast<double>(nodes_[node].count);
  }

  const std::vector<Node>& nodes() const { return nodes_; }

  const char* kind() const override { return "decision_tree"; }

  void fitted_to_json(OrderedJson& out) const override {
    out["kind"] = kind();
    OrderedJson nodes = OrderedJson::array();
    for (const Node& n : nodes_) {
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.count,
                       n.positives});
    }
    out["nodes"] = std::move(nodes);
  }

  static DecisionTreeClassifier tree_from_json(const OrderedJson& in) {
    DecisionTreeClassifier tree;
    for (const auto& entry : in.at("nodes")) {
      Node n;
      n.feature = entry.at(0).get<std::int32_t>();
      n.threshold = entry.at(1).get<double>();
      n.left = entry.at(2).get<std::int32_t>();
      n.right = entry.at(3).get<std::int32_t>();
      n.count = entry.at(4).get<std::uint32_t>();
      n.positives = entry.at(5).get<std::uint32_t>();
      tree.nodes_.push_back(n);
    }
    if (tree.nodes_.empty()) {
      throw Error(Errc::InvalidArgument, "decision tree without nodes");
    }
    return tree;
  }

  static std::shared_ptr<ClassifierImpl> from_json(const OrderedJson& in) {
    return std::make_shared<DecisionTreeClassifier>(tree_from_json(in));
  }

 private:
  struct Split {
    double gain = 0.0;
    double gain_ratio = 0.0;
    double threshold = 0.0;
    std::int32_t feature = -1;
  };

  std::int32_t build(const TrainingData& data, const TreeOptions& options,
                     SplitMix64* rng, std::vector<std::size_t>& indices) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{});
    const std::size_t n = indices.size();
    std::size_t positives = 0;
    for (std::size_t i : indices) positives += data.labels[i];
    nodes_[id].count = static_cast<std::uint32_t>(n);
    nodes_[id].positives = static_cast<std::uint32_t>(positives);

    const std::size_t min_leaf = static_cast<std::size_t>(options.min_leaf);
    if (positives == 0 || positives == n || n < 2 * min_leaf) {
      return id;
    }

    const Split best = best_split(data, options, rng, indices, positives);
    if (best.feature < 0) {
      return id;
    }

    std::vector<std::size_t> left, right;
    left.reserve(n);
    right.reserve(n);
    for (std::size_t i : indices) {
      (data.at(i, best.feature) <= best.threshold ? left : right).push_back(i);
    }
    indices.clear();
    indices.shrink_to_fit();

    nodes_[id].feature = best.feature;
    nodes_[id].threshold = best.threshold;
    const std::int32_t left_id = build(data, options, rng, left);
    nodes_[id].left = left_id;
    const std::int32_t right_id = build(data, options, rng, right);
    nodes_[id].right = right_id;
    return id;
  }

  Split best_split(const TrainingData& data, const TreeOptions& options,
                   SplitMix64* rng, const std::vector<std::size_t>& indices,
                   std::size_t positives) const {
    const std::size_t n = indices.size();
    const std::size_t min_leaf = static_cast<std::size_t>(options.min_leaf);
    const double parent_entropy = entropy_bits(positives, n);

    std::vector<std::size_t> candidate_features;
    if (options.feature_subset > 0 &&
        static_cast<std::size_t>(options.feature_subset) < data.cols) {
      SplitMix64& r = *rng;
      candidate_features = sample_without_replacement(
          data.cols, static_cast<std::size_t>(options.feature_subset), r);
      std::sort(candidate_features.begin(), candidate_features.end());
    } else {
      candidate_features.resize(data.cols);
      for (std::size_t c = 0; c < data.cols; ++c) candidate_features[c] = c;
    }

    std::vector<std::pair<double, int>> column(n);
    Split best;
    for (std::size_t f : candidate_features) {
      for (std::size_t i = 0; i < n; ++i) {
        column[i] = {data.at(indices[i], f), data.labels[indices[i]]};
      }
      std::sort(column.begin(), column.end());

      double feature_gain = 0.0;
      double feature_threshold = 0.0;
      std::size_t feature_left = 0;
      bool found = false;
      std::size_t left_positives = 0;
      for (std::size_t i = 1; i < n; ++i) {
        left_positives += column[i - 1].second;
        if (i < min_leaf || n - i < min_leaf) continue;
        if (column[i - 1].first == column[i].first) continue;
        const double gain =
            parent_entropy -
            (static_cast<double>(i) / n) * entropy_bits(left_positives, i) -
            (static_cast<double>(n - i) / n) *
                entropy_bits(positives - left_positives, n - i);
        if (!found || gain > feature_gain) {
          found = true;
          feature_gain = gain;
          feature_threshold =
              column[i - 1].first + (column[i].first - column[i - 1].first) / 2;
          feature_left = i;
        }
      }
      if (!found || feature_gain <= 1e-12) continue;
      const double split_info =
          entropy_bits(feature_left, n);  // binary split entropy
      const double ratio = feature_gain / split_info;
      if (best.feature < 0 || ratio > best.gain_ratio) {
        best.feature = static_cast<std::int32_t>(f);
        best.gain = feature_gain;
        best.gain_ratio = ratio;
        best.threshold = feature_threshold;
      }
    }
    return best;
  }

  std::vector<Node> nodes_;
};

}  // namespace linktrust
