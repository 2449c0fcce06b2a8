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
#include <span>
#include <vector>

#include "linktrust/classifier/common.hpp"

namespace linktrust {

// One-rule baseline: equal-frequency discretization (buckets of at least six
// instances, never splitting equal values) of every feature, then the single
// feature with the lowest training error wins. Probability output is the
// chosen interval's class frequency.
class OneRClassifier final : public ClassifierImpl {
 public:
  static constexpr std::size_t kMinBucket = 6;

  static OneRClassifier fit(const TrainingData& data) {
    if (data.rows == 0) {
      throw Error(Errc::EmptyTrainingSet, "no training instances");
    }
    OneRClassifier model;
    std::size_t best_errors = data.rows + 1;
    std::vector<std::pair<double, int>> column(data.rows);
    for (std::size_t f = 0; f < data.cols; ++f) {
      for (std::size_t r = 0; r < data.rows; ++r) {
        column[r] = {data.at(r, f), data.labels[r]};
      }
      std::sort(column.begin(), column.end());

      std::vector<double> cuts;
      std::vector<double> probabilities;
      std::size_t errors = 0;
      std::size_t start = 0;
      while (start < data.rows) {
        std::size_t end = std::min(start + kMinBucket, data.rows);
        while (end < data.rows && column[end].first == column[end - 1].first) {
          ++end;
        }
        if (data.rows - end < kMinBucket) end = data.rows;
        std::size_t positives = 0;
        for (std::size_t i = start; i < end; ++i) positives += column[i].second;
        const std::size_t total = end - start;
        errors += std::min(positives, total - positives);
        probabilities.push_back(static_cast<double>(positives) /
                                static_cast<double>(total));
        if (end < data.rows) {
          cuts.push_back(column[end - 1].first +
                         (column[end].first - column[end - 1].first) / 2);
        }
        start = end;
      }
      if (errors < best_errors) {
        best_errors = errors;
        model.feature_ = static_cast<std::int32_t>(f);
        model.cuts_ = std::move(cuts);
        model.probabilities_ = std::move(probabilities);
      }
    }
    return model;
  }

  double predict(std::span<const double> row) const override {
    const double x = row[feature_];
    const std::size_t interval =
        std::lower_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin();
    return probabilities_[interval];
  }

  std::int32_t feature() const { return feature_; }
  const std::vector<double>& cut_points() const { return cuts_; }

  const char* kind() const override { return "one_r"; }

  void fitted_to_json(OrderedJson& out) const override {
    out["kind"] = kind();
    out["feature"] = feature_;
    out["cut_points"] = cuts_;
    out["interval_probabilities"] = probabilities_;
  }

  static std::shared_ptr<ClassifierImpl> from_json(const OrderedJson& in) {
    auto model = std::make_shared<OneRClassifier>();
    model->feature_ = in.at("feature").get<std::int32_t>();
    model->cuts_ = in.at("cut_points").get<std::vector<double>>();
    model->probabilities_ =
        in.at("interval_probabilities").get<std::vector<double>>();
    if (model->probabilities_.size() != model->cuts_.size() + 1) {
      throw Error(Errc::InvalidArgument, "inconsistent one-r intervals");
    }
    return model;
  }

 private:
  std::int32_t feature_ = 0;
  std::vector<double> cuts_;
  std::vector<double> probabilities_;
};

}  // namespace linktrust
