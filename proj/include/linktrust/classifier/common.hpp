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
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "linktrust/core.hpp"
#include "linktrust/dataset.hpp"
#include "linktrust/features.hpp"
#include "linktrust/rng.hpp"

namespace linktrust {

using OrderedJson = nlohmann::ordered_json;

enum class Family {
  OneR,
  DecisionTree,
  KNearest,
  NaiveBayes,
  Bagging,
  AdaBoostM1,
  RotationForest,
  RandomForest,
};

inline constexpr std::array<Family, 8> kAllFamilies = {
    Family::OneR,       Family::DecisionTree,   Family::KNearest,
    Family::NaiveBayes, Family::Bagging,        Family::AdaBoostM1,
    Family::RotationForest, Family::RandomForest};

inline const char* family_name(Family family) {
  switch (family) {
    case Family::OneR: return "one-r";
    case Family::DecisionTree: return "decision-tree";
    case Family::KNearest: return "k-nearest";
    case Family::NaiveBayes: return "naive-bayes";
    case Family::Bagging: return "bagging";
    case Family::AdaBoostM1: return "ada-boost-m1";
    case Family::RotationForest: return "rotation-forest";
    case Family::RandomForest: return "random-forest";
  }
  return "";
}

inline std::optional<Family> family_from_name(const std::string& name) {
  for (Family family : kAllFamilies) {
    if (name == family_name(family)) return family;
  }
  return std::nullopt;
}

struct ClassifierSpec {
  Family family = Family::RotationForest;
  int min_leaf = 6;     // tree families and ensemble bases
  int k = 10;           // k-nearest
  int iterations = 100; // ensembles
  std::uint64_t seed = 0;
};

inline void validate_spec(const ClassifierSpec& spec) {
  if (spec.min_leaf < 1 || spec.k < 1 || spec.iterations < 1) {
    throw Error(Errc::InvalidConfig,
                "min_leaf, k and iterations must all be >= 1");
  }
}

// Dense row-major numeric training set. Missing values are NaN until imputed.
struct TrainingData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<int> labels;  // 0 = unrestricted, 1 = restricted

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values).subspan(r * cols, cols);
  }

  static TrainingData from_dataset(const LabeledDataset& dataset) {
    TrainingData data;
    data.rows = dataset.vectors.size();
    data.cols = kFeatureCount;
    data.values.reserve(data.rows * data.cols);
    data.labels.reserve(data.rows);
    for (const FeatureVector& v : dataset.vectors) {
      const auto row = v.to_row();
      data.values.insert(data.values.end(), row.begin(), row.end());
      data.labels.push_back(v.label == Label::Restricted ? 1 : 0);
    }
    return data;
  }

  TrainingData take_rows(std::span<const std::size_t> indices) const {
    TrainingData out;
    out.rows = indices.size();
    out.cols = cols;
    out.values.reserve(out.rows * cols);
    out.labels.reserve(out.rows);
    for (std::size_t i : indices) {
      const auto r = row(i);
      out.values.insert(out.values.end(), r.begin(), r.end());
      out.labels.push_back(labels[i]);
    }
    return out;
  }
};

// Per-feature training statistics kept with every model: means of observed
// values (used to impute absences) and observed ranges (used by distance
// normalization).
struct FeatureStats {
  std::vector<double> imputation_means;
  std::vector<double> mins;
  std::vector<double> maxs;
};

inline FeatureStats compute_feature_stats(const TrainingData& data) {
  FeatureStats stats;
  stats.imputation_means.assign(data.cols, 0.0);
  stats.mins.assign(data.cols, 0.0);
  stats.maxs.assign(data.cols, 0.0);
  for (std::size_t c = 0; c < data.cols; ++c) {
    double sum = 0.0;
    std::size_t observed = 0;
    double lo = 0.0, hi = 0.0;
    for (std::size_t r = 0; r < data.rows; ++r) {
      const double v = data.at(r, c);
      if (std::isnan(v)) continue;
      if (observed == 0) {
        lo = hi = v;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      sum += v;
      ++observed;
    }
    stats.imputation_means[c] = observed ? sum / static_cast<double>(observed)
                                         : 0.0;
    stats.mins[c] = lo;
    stats.maxs[c] = hi;
  }
  return stats;
}

inline void impute_in_place(TrainingData& data,
                            std::span<const double> means) {
  for (std::size_t r = 0; r < data.rows; ++r) {
    for (std::size_t c = 0; c < data.cols; ++c) {
      if (std::isnan(data.at(r, c))) data.at(r, c) = means[c];
    }
  }
}

inline std::vector<double> impute_row(std::span<const double> row,
                                      std::span<const double> means) {
  std::vector<double> out(row.begin(), row.end());
  for (std::size_t c = 0; c < out.size(); ++c) {
    if (std::isnan(out[c])) out[c] = means[c];
  }
  return out;
}

// Fitted per-family state. Rows handed to predict() are already imputed.
class ClassifierImpl {
 public:
  virtual ~ClassifierImpl() = default;
  virtual double predict(std::span<const double> row) const = 0;
  virtual const char* kind() const = 0;
  virtual void fitted_to_json(OrderedJson& out) const = 0;
};

// Degenerate model for single-class training sets.
class ConstantClassifier final : public ClassifierImpl {
 public:
  explicit ConstantClassifier(double probability)
      : probability_(probability) {}

  double predict(std::span<const double>) const override {
    return probability_;
  }
  const char* kind() const override { return "constant"; }
  void fitted_to_json(OrderedJson& out) const override {
    out["kind"] = kind();
    out["probability"] = probability_;
  }
  static std::shared_ptr<ClassifierImpl> from_json(const OrderedJson& in) {
    return std::make_shared<ConstantClassifier>(in.at("probability").get<double>());
  }

 private:
  double probability_;
};

// A trained classifier: spec, feature statistics, and the fitted state.
// Immutable after construction; predict_proba is safe for concurrent callers.
class ClassifierModel {
 public:
  ClassifierModel(ClassifierSpec spec, FeatureStats stats,
                  std::shared_ptr<const ClassifierImpl> impl)
      : spec_(spec), stats_(std::move(stats)), impl_(std::move(impl)) {}

  double predict_proba(std::span<const double> row) const {
    if (row.size() != stats_.imputation_means.size()) {
      throw Error(Errc::ArityMismatch,
                  "expected " +
                      std::to_string(stats_.imputation_means.size()) +
                      " features, got " + std::to_string(row.size()));
    }
    const std::vector<double> imputed =
        impute_row(row, stats_.imputation_means);
    return impl_->predict(imputed);
  }

  double predict_proba(const FeatureVector& v) const {
    const auto row = v.to_row();
    return predict_proba(std::span<const double>(row));
  }

  const ClassifierSpec& spec() const { return spec_; }
  const FeatureStats& stats() const { return stats_; }
  const ClassifierImpl& impl() const { return *impl_; }

  OrderedJson to_json() const {
    OrderedJson out;
    out["family"] = family_name(spec_.family);
    out["hyperparameters"] = {{"min_leaf", spec_.min_leaf},
                              {"k", spec_.k},
                              {"iterations", spec_.iterations},
                              {"seed", spec_.seed}};
    out["feature_arity"] = stats_.imputation_means.size();
    out["imputation_means"] = stats_.imputation_means;
    out["feature_mins"] = stats_.mins;
    out["feature_maxs"] = stats_.maxs;
    OrderedJson fitted;
    impl_->fitted_to_json(fitted);
    out["fitted"] = std::move(fitted);
    return out;
  }

 private:
  ClassifierSpec spec_;
  FeatureStats stats_;
  std::shared_ptr<const ClassifierImpl> impl_;
};

// Runs fn(0..count) across up to `threads` workers in fixed contiguous
// chunks. Results must be written to disjoint slots so that the outcome is
// identical for any worker count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace linktrust
