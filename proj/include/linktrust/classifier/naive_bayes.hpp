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

#include <cmath>
#include <span>
#include <vector>

#include "linktrust/classifier/common.hpp"

namespace linktrust {

// Gaussian naive Bayes with a variance floor; features whose training values
// are all 0/1 get a Bernoulli treatment with Laplace smoothing instead.
class NaiveBayesClassifier final : public ClassifierImpl {
 public:
  static constexpr double kVarianceFloor = 1e-9;

  static NaiveBayesClassifier fit(const TrainingData& data) {
    if (data.rows == 0) {
      throw Error(Errc::EmptyTrainingSet, "no training instances");
    }
    NaiveBayesClassifier model;
    model.cols_ = data.cols;
    std::size_t class_count[2] = {0, 0};
    for (int label : data.labels) ++class_count[label];
    for (int c = 0; c < 2; ++c) {
      model.log_prior_[c] =
          class_count[c] > 0
              ? std::log(static_cast<double>(class_count[c]) /
                         static_cast<double>(data.rows))
              : -1e9;
    }

    model.features_.resize(data.cols);
    for (std::size_t f = 0; f < data.cols; ++f) {
      FeaturePart& part = model.features_[f];
      part.binary = true;
      for (std::size_t r = 0; r < data.rows; ++r) {
        const double v = data.at(r, f);
        if (v != 0.0 && v != 1.0) {
          part.binary = false;
          break;
        }
      }
      for (int c = 0; c < 2; ++c) {
        double sum = 0.0;
        std::size_t ones = 0;
        for (std::size_t r = 0; r < data.rows; ++r) {
          if (data.labels[r] != c) continue;
          sum += data.at(r, f);
          if (data.at(r, f) == 1.0) ++ones;
        }
        const double n = static_cast<double>(class_count[c]);
        if (part.binary) {
          part.p_one[c] = (static_cast<double>(ones) + 1.0) / (n + 2.0);
        } else {
          const double mean = class_count[c] ? sum / n : 0.0;
          double ss = 0.0;
          for (std::size_t r = 0; r < data.rows; ++r) {
            if (data.labels[r] != c) continue;
            const double d = data.at(r, f) - mean;
            ss += d * d;
          }
          part.mean[c] = mean;
          part.variance[c] =
              std::max(class_count[c] ? ss / n : kVarianceFloor,
                       kVarianceFloor);
        }
      }
    }
    return model;
  }

  double predict(std::span<const double> row) const override {
    double log_likelihood[2] = {log_prior_[0], log_prior_[1]};
    for (std::size_t f = 0; f < cols_; ++f) {
      const FeaturePart& part = features_[f];
      for (int c = 0; c < 2; ++c) {
        if (part.binary) {
          const double p = row[f] >= 0.5 ? part.p_one[c] : 1.0 - part.p_one[c];
          log_likelihood[c] += std::log(p);
        } else {
          const double d = row[f] - part.mean[c];
          log_likelihood[c] += -0.5 * std::log(2.0 * M_PI * part.variance[c]) -
                               d * d / (2.0 * part.variance[c]);
        }
      }
    }
    // Stable logistic of the log-likelihood difference.
    const double delta = log_likelihood[0] - log_likelihood[1];
    if (delta > 500.0) return 0.0;
    if (delta < -500.0) return 1.0;
    return 1.0 / (1.0 + std::exp(delta));
  }

  const char* kind() const override { return "naive_bayes"; }

  void fitted_to_json(OrderedJson& out) const override {
    out["kind"] = kind();
    out["log_prior"] = {log_prior_[0], log_prior_[1]};
    OrderedJson features = OrderedJson::array();
    for (const FeaturePart& part : features_) {
      if (part.binary) {
        features.push_back({{"binary", true},
                            {"p_one", {part.p_one[0], part.p_one[1]}}});
      } else {
        features.push_back({{"binary", false},
                            {"mean", {part.mean[0], part.mean[1]}},
                            {"variance", {part.variance[0], part.variance[1]}}});
      }
    }
    out["features"] = std::move(features);
  }

  static std::shared_ptr<ClassifierImpl> from_json(const OrderedJson& in) {
    auto model = std::make_shared<NaiveBayesClassifier>();
    model->log_prior_[0] = in.at("log_prior").at(0).get<double>();
    model->log_prior_[1] = in.at("log_prior").at(1).get<double>();
    for (const auto& entry : in.at("features")) {
      FeaturePart part;
      part.binary = entry.at("binary").get<bool>();
      if (part.binary) {
        part.p_one[0] = entry.at("p_one").at(0).get<double>();
        part.p_one[1] = entry.at("p_one").at(1).get<double>();
      } else {
        part.mean[0] = entry.at("mean").at(0).get<double>();
        part.mean[1] = entry.at("mean").at(1).get<double>();
        part.variance[0] = entry.at("variance").at(0).get<double>();
        part.variance[1] = entry.at("variance").at(1).get<double>();
      }
      model->features_.push_back(part);
    }
    model->cols_ = model->features_.size();
    return model;
  }

 private:
  struct FeaturePart {
    bool binary = false;
    double mean[2] = {0.0, 0.0};
    double variance[2] = {kVarianceFloor, kVarianceFloor};
    double p_one[2] = {0.5, 0.5};
  };

  std::size_t cols_ = 0;
  double log_prior_[2] = {0.0, 0.0};
  std::vector<FeaturePart> features_;
};

}  // namespace linktrust
