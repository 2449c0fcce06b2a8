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
// Bagging, random-subspace forests and AdaBoost.M1 over the C4.5-style base
// tree. Per-iteration seeds are derived from the master seed, so fitting is
// reproducible for any worker count.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "linktrust/classifier/common.hpp"
#include "linktrust/classifier/decision_tree.hpp"

namespace linktrust {

struct EnsembleOptions {
  int min_leaf = 6;
  int iterations = 100;
  std::uint64_t seed = 0;
};

// Bootstrap-aggregated trees; with random_subspace set, each split samples
// round(sqrt(cols)) candidate features, which is the random-forest variant.
class BaggedForest final : public ClassifierImpl {
 public:
  static BaggedForest fit(const TrainingData& data,
                          const EnsembleOptions& options, bool random_subspace,
                          int threads = 1) {
    if (data.rows == 0) {
      throw Error(Errc::EmptyTrainingSet, "no training instances");
    }
    BaggedForest model;
    model.random_subspace_ = random_subspace;
    model.trees_.resize(options.iterations);
    const int feature_subset =
        random_subspace
            ? std::max(1, static_cast<int>(std::llround(
                              std::sqrt(static_cast<double>(data.cols)))))
            : 0;
    parallel_for(options.iterations, threads, [&](std::size_t i) {
      SplitMix64 rng(derive_seed(options.seed, i));
      std::vector<std::size_t> bootstrap(data.rows);
      for (std::size_t j = 0; j < data.rows; ++j) {
        bootstrap[j] = static_cast<std::size_t>(rng.next_below(data.rows));
      }
      const TrainingData sample = data.take_rows(bootstrap);
      TreeOptions tree_options;
      tree_options.min_leaf = options.min_leaf;
      tree_options.feature_subset = feature_subset;
      model.trees_[i] = DecisionTreeClassifier::fit(sample, tree_options, &rng);
    });
    return model;
  }

  double predict(std::span<const double> row) const override {
    double sum = 0.0;
    for (const DecisionTreeClassifier& tree : trees_) {
      sum += tree.predict(row);
    }
    return sum / static_cast<double>(trees_.size());
  }

  const std::vector<DecisionTreeClassifier>& trees() const { return trees_; }

  const char* kind() const override {
    return random_subspace_ ? "random_forest" : "bagging";
  }

  void fitted_to_json(OrderedJson& out) const override {
    out["kind"] = kind();
    OrderedJson trees = OrderedJson::array();
    for (const DecisionTreeClassifier& tree : trees_) {
      OrderedJson t;
      tree.fitted_to_json(t);
      trees.push_back(std::move(t));
    }
    out["trees"] = std::move(trees);
  }

  static std::shared_ptr<ClassifierImpl> from_json(const OrderedJson& in) {
    auto model = std::make_shared<BaggedForest>();
    model->random_subspace_ = in.at("kind").get<std::string>() == "random_forest";
    for (const auto& entry : in.at("trees")) {
      model->trees_.push_back(DecisionTreeClassifier::tree_from_json(entry));
    }
    if (model->trees_.empty()) {
      throw Error(Errc::InvalidArgument, "ensemble without trees");
    }
    return model;
  }

 private:
  bool random_subspace_ = false;
  std::vector<DecisionTreeClassifier> trees_;
};

// AdaBoost.M1 with weighted resampling: each round draws a training-set-sized
// sample with probability proportional to the instance weights, fits a tree,
// and reweights by the weighted error on the original set. Boosting halts
// early when a round's base error reaches 0 or 0.5.
class AdaBoostClassifier final : public ClassifierImpl {
 public:
  static AdaBoostClassifier fit(const TrainingData& data,
                                const EnsembleOptions& options) {
    if (data.rows == 0) {
      throw Error(Errc::EmptyTrainingSet, "no training instances");
    }
    AdaBoostClassifier model;
    const std::size_t n = data.rows;
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<double> cumulative(n);

    for (int t = 0; t < options.iterations; ++t) {
      SplitMix64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(t)));

      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        total += weights[i];
        cumulative[i] = total;
      }
      std::vector<std::size_t> sample(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double u = rng.next_double() * total;
        sample[j] = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                    cumulative.begin();
        if (sample[j] >= n) sample[j] = n - 1;
      }
      TreeOptions tree_options;
      tree_options.min_leaf = options.min_leaf;
      DecisionTreeClassifier tree =
          DecisionTreeClassifier::fit(data.take_rows(sample), tree_options);

      double error = 0.0;
      std::vector<bool> correct(n);
      for (std::size_t i = 0; i < n; ++i) {
        const int vote = tree.predict(data.row(i)) >= 0.5 ? 1 : 0;
        correct[i] = vote == data.labels[i];
        if (!correct[i]) error += weights[i];
      }

      if (error >= 0.5) {
        if (model.trees_.empty()) {
          model.trees_.push_back(std::move(tree));
          model.alphas_.push_back(1.0);
        }
        break;
      }
      if (error <= 0.0) {
        model.trees_.push_back(std::move(tree));
        model.alphas_.push_back(std::log(1.0 / 1e-10));
        break;
      }

      const double beta = error / (1.0 - error);
      model.trees_.push_back(std::move(tree));
      model.alphas_.push_back(std::log(1.0 / beta));
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (correct[i]) weights[i] *= beta;
        sum += weights[i];
      }
      double normalized_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        weights[i] /= sum;
        normalized_sum += weights[i];
      }
      model.round_weight_sums_.push_back(normalized_sum);
    }
    return model;
  }

  double predict(std::span<const double> row) const override {
    double voting = 0.0;
    double total = 0.0;
    for (std::size_t t = 0; t < trees_.size(); ++t) {
      total += alphas_[t];
      if (trees_[t].predict(row) >= 0.5) voting += alphas_[t];
    }
    return total > 0.0 ? voting / total : 0.5;
  }

  const std::vector<DecisionTreeClassifier>& trees() const { return trees_; }
  const std::vector<double>& alphas() const { return alphas_; }
  // Instance-weight sums recorded after each completed reweighting round.
  const std::vector<double>& round_weight_sums() const {
    return round_weight_sums_;
  }

  const char* kind() const override { return "ada_boost_m1"; }

  void fitted_to_json(OrderedJson& out) const override {
    out["kind"] = kind();
    out["alphas"] = alphas_;
    OrderedJson trees = OrderedJson::array();
    for (const DecisionTreeClassifier& tree : trees_) {
      OrderedJson t;
      tree.fitted_to_json(t);
      trees.push_back(std::move(t));
    }
    out["trees"] = std::move(trees);
  }

  static std::shared_ptr<ClassifierImpl> from_json(const OrderedJson& in) {
    auto model = std::make_shared<AdaBoostClassifier>();
    model->alphas_ = in.at("alphas").get<std::vector<double>>();
    for (const auto& entry : in.at("trees")) {
      model->trees_.push_back(DecisionTreeClassifier::tree_from_json(entry));
    }
    if (model->trees_.size() != model->alphas_.size() ||
        model->trees_.empty()) {
      throw Error(Errc::InvalidArgument, "inconsistent boosted ensemble");
    }
    return model;
  }

 private:
  std::vector<DecisionTreeClassifier> trees_;
  std::vector<double> alphas_;
  std::vector<double> round_weight_sums_;
};

}  // namespace linktrust
