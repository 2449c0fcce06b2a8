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

// k-nearest-neighbours vote on min-max normalized features. Distance ties
// break toward the lower training index; k is clamped to the training size.
class KNearestClassifier final : public ClassifierImpl {
 public:
  static KNearestClassifier fit(const TrainingData& data,
                                const FeatureStats& stats, int k) {
    if (data.rows == 0) {
      throw Error(Errc::EmptyTrainingSet, "no training instances");
    }
    KNearestClassifier model;
    model.k_ = k;
    model.rows_ = data.rows;
    model.cols_ = data.cols;
    model.mins_ = stats.mins;
    model.ranges_.resize(data.cols);
    for (std::size_t c = 0; c < data.cols; ++c) {
      model.ranges_[c] = stats.maxs[c] - stats.mins[c];
    }
    model.normalized_.resize(data.rows * data.cols);
    for (std::size_t r = 0; r < data.rows; ++r) {
      for (std::size_t c = 0; c < data.cols; ++c) {
        model.normalized_[r * data.cols + c] =
            model.normalize(data.at(r, c), c);
      }
    }
    model.labels_ = data.labels;
    return model;
  }

  double predict(std::span<const double> row) const override {
    std::vector<double> query(cols_);
    for (std::size_t c = 0; c < cols_; ++c) query[c] = normalize(row[c], c);

    std::vector<std::pair<double, std::size_t>> distances(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      double d2 = 0.0;
      const double* basis = normalized_.data() + r * cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        const double diff = query[c] - basis[c];
        d2 += diff * diff;
      }
      distances[r] = {d2, r};
    }
    const std::size_t k = std::min<std::size_t>(k_, rows_);
    std::partial_sort(distances.begin(), distances.begin() + k,
                      distances.end());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < k; ++i) {
      positives += labels_[distances[i].second];
    }
    return static_cast<double>(positives) / static_cast<double>(k);
  }

  const char* kind() const override { return "k_nearest"; }

  void fitted_to_json(OrderedJson& out) const override {
    out["kind"] = kind();
    out["k"] = k_;
    out["rows"] = rows_;
    out["cols"] = cols_;
    out["mins"] = mins_;
    out["ranges"] = ranges_;
    out["normalized"] = normalized_;
    out["labels"] = labels_;
  }

  static std::shared_ptr<ClassifierImpl> from_json(const OrderedJson& in) {
    auto model = std::make_shared<KNearestClassifier>();
    model->k_ = in.at("k").get<int>();
    model->rows_ = in.at("rows").get<std::size_t>();
    model->cols_ = in.at("cols").get<std::size_t>();
    model->mins_ = in.at("mins").get<std::vector<double>>();
    model->ranges_ = in.at("ranges").get<std::vector<double>>();
    model->normalized_ = in.at("normalized").get<std::vector<double>>();
    model->labels_ = in.at("labels").get<std::vector<int>>();
    if (model->normalized_.size() != model->rows_ * model->cols_ ||
        model->labels_.size() != model->rows_) {
      throw Error(Errc::InvalidArgument, "inconsistent k-nearest state");
    }
    return model;
  }

 private:
  double normalize(double value, std::size_t c) const {
    if (ranges_[c] <= 0.0) return 0.0;
    return (value - mins_[c]) / ranges_[c];
  }

  int k_ = 10;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> mins_;
  std::vector<double> ranges_;
  std::vector<double> normalized_;
  std::vector<int> labels_;
};

}  // namespace linktrust
