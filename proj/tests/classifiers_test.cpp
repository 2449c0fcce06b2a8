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

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "linktrust/classifier/suite.hpp"
#include "test_util.hpp"

namespace linktrust {
namespace {

TrainingData make_data(const std::vector<std::vector<double>>& rows,
                       const std::vector<int>& labels) {
  TrainingData data;
  data.rows = rows.size();
  data.cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& row : rows) {
    data.values.insert(data.values.end(), row.begin(), row.end());
  }
  data.labels = labels;
  return data;
}

// Two well-separated Gaussian blobs in `cols` dimensions.
TrainingData gaussian_blobs(SplitMix64& rng, std::size_t per_class,
                            std::size_t cols, double separation) {
  TrainingData data;
  data.cols = cols;
  auto normal = [&rng]() {
    const double u1 = 1.0 - rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  for (int label = 0; label < 2; ++label) {
    for (std::size_t i = 0; i < per_class; ++i) {
      for (std::size_t c = 0; c < cols; ++c) {
        data.values.push_back(normal() + (label ? separation : 0.0));
      }
      data.labels.push_back(label);
    }
  }
  data.rows = 2 * per_class;
  return data;
}

TEST(DecisionTreeTest, SeparableTwentyPointsReachTrainingAccuracyOne) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 10; ++i) {
    rows.push_back({static_cast<double>(i), static_cast<double>(i % 3)});
    labels.push_back(0);
    rows.push_back({static_cast<double>(i) + 100.0, static_cast<double>(i % 3)});
    labels.push_back(1);
  }
  const TrainingData data = make_data(rows, labels);
  ClassifierSpec spec;
  spec.family = Family::DecisionTree;
  spec.min_leaf = 2;
  const ClassifierModel model = fit_rows(spec, data);
  for (std::size_t r = 0; r < data.rows; ++r) {
    const int predicted = model.predict_proba(data.row(r)) >= 0.5 ? 1 : 0;
    EXPECT_EQ(predicted, data.labels[r]);
  }
}

TEST(DecisionTreeTest, EveryLeafHoldsAtLeastMinLeafInstances) {
  SplitMix64 rng(301);
  for (int trial = 0; trial < 20; ++trial) {
    const TrainingData data = gaussian_blobs(rng, 60, 4, 1.5);
    TreeOptions options;
    options.min_leaf = 2 + static_cast<int>(rng.next_below(9));
    const auto tree = DecisionTreeClassifier::fit(data, options);
    for (const auto& node : tree.nodes()) {
      if (node.is_leaf()) {
        EXPECT_GE(node.count, static_cast<std::uint32_t>(options.min_leaf));
      }
    }
  }
}

TEST(SuiteTest, SingleClassTrainingGivesConstantProbability) {
  SplitMix64 rng(302);
  TrainingData data = gaussian_blobs(rng, 20, 3, 1.0);
  for (int& label : data.labels) label = 1;
  for (Family family : kAllFamilies) {
    ClassifierSpec spec;
    spec.family = family;
    spec.iterations = 5;
    const ClassifierModel model = fit_rows(spec, data);
    const double p = model.predict_proba(data.row(0));
    EXPECT_EQ(p, 1.0);
    std::vector<double> other(3, -100.0);
    EXPECT_EQ(model.predict_proba(other), p);
  }
}

TEST(KNearestTest, UnanimousNeighboursGiveProbabilityOne) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 5; ++i) {
    rows.push_back({static_cast<double>(i) * 0.01, 0.0});
    labels.push_back(1);
  }
  for (int i = 0; i < 5; ++i) {
    rows.push_back({100.0 + i, 50.0});
    labels.push_back(0);
  }
  ClassifierSpec spec;
  spec.family = Family::KNearest;
  spec.k = 5;
  const ClassifierModel model = fit_rows(spec, make_data(rows, labels));
  const std::vector<double> query = {0.0, 0.0};
  EXPECT_EQ(model.predict_proba(query), 1.0);
}

TEST(NaiveBayesTest, MidpointOfSymmetricClassesIsHalf) {
  SplitMix64 rng(303);
  auto normal = [&rng]() {
    const double u1 = 1.0 - rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 200; ++i) {
    const double a = normal() + 5.0;
    const double b = normal() + 5.0;
    rows.push_back({a, b});
    labels.push_back(1);
    rows.push_back({-a, -b});  // exact mirror
    labels.push_back(0);
  }
  ClassifierSpec spec;
  spec.family = Family::NaiveBayes;
  const ClassifierModel model = fit_rows(spec, make_data(rows, labels));
  const std::vector<double> midpoint = {0.0, 0.0};
  EXPECT_NEAR(model.predict_proba(midpoint), 0.5, 1e-9);
}

TEST(BaggingTest, ProbabilityIsConvexCombinationOfLeaves) {
  SplitMix64 rng(304);
  const TrainingData data = gaussian_blobs(rng, 50, 3, 1.0);
  ClassifierSpec spec;
  spec.family = Family::Bagging;
  spec.iterations = 25;
  spec.min_leaf = 4;
  const ClassifierModel model = fit_rows(spec, data);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> query(3);
    for (double& q : query) q = rng.next_double() * 6.0 - 3.0;
    const double p = model.predict_proba(query);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(OneRTest, ConstantFeatureFallsBackToClassFrequency) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 12; ++i) {
    rows.push_back({1.0});
    labels.push_back(i < 4 ? 1 : 0);
  }
  ClassifierSpec spec;
  spec.family = Family::OneR;
  const ClassifierModel model = fit_rows(spec, make_data(rows, labels));
  const std::vector<double> query = {1.0};
  EXPECT_NEAR(model.predict_proba(query), 4.0 / 12.0, 1e-12);
}

TEST(AdaBoostTest, WeightsStayANormalizedDistribution) {
  SplitMix64 rng(305);
  for (int trial = 0; trial < 20; ++trial) {
    const TrainingData data = gaussian_blobs(rng, 40, 3, 0.8);
    EnsembleOptions options;
    options.min_leaf = 4 + static_cast<int>(rng.next_below(7));
    options.iterations = 30;
    options.seed = rng.next();
    const auto model = AdaBoostClassifier::fit(data, options);
    for (double sum : model.round_weight_sums()) {
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(RotationForestTest, BlocksAreOrthonormalAndPreserveDistances) {
  SplitMix64 rng(306);
  for (int trial = 0; trial < 20; ++trial) {
    const TrainingData data = gaussian_blobs(rng, 40, 7, 1.0);
    RotationForestOptions options;
    options.iterations = 5;
    options.min_leaf = 4;
    options.seed = rng.next();
    const auto model = RotationForestClassifier::fit(data, options);
    for (const Rotation& rotation : model.rotations()) {
      std::size_t covered = 0;
      for (const RotationBlock& block : rotation.blocks) {
        const std::size_t k = block.features.size();
        covered += k;
        for (std::size_t a = 0; a < k; ++a) {
          for (std::size_t b = 0; b < k; ++b) {
            double dot = 0.0;
            for (std::size_t r = 0; r < k; ++r) {
              dot += block.basis[a * k + r] * block.basis[b * k + r];
            }
            EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-9);
          }
        }
        // Orthonormal projection preserves pairwise distances in the block.
        const auto block_distance = [&](std::size_t r1, std::size_t r2,
                                        bool rotated) {
          double d2 = 0.0;
          if (!rotated) {
            for (std::size_t d = 0; d < k; ++d) {
              const double diff = data.at(r1, block.features[d]) -
                                  data.at(r2, block.features[d]);
              d2 += diff * diff;
            }
            return d2;
          }
          for (std::size_t component = 0; component < k; ++component) {
            double p1 = 0.0, p2 = 0.0;
            for (std::size_t d = 0; d < k; ++d) {
              p1 += (data.at(r1, block.features[d]) - block.center[d]) *
                    block.basis[component * k + d];
              p2 += (data.at(r2, block.features[d]) - block.center[d]) *
                    block.basis[component * k + d];
            }
            const double diff = p1 - p2;
            d2 += diff * diff;
          }
          return d2;
        };
        for (int pair = 0; pair < 5; ++pair) {
          const std::size_t r1 = rng.next_below(data.rows);
          const std::size_t r2 = rng.next_below(data.rows);
          EXPECT_NEAR(block_distance(r1, r2, false),
                      block_distance(r1, r2, true), 1e-6);
        }
      }
      EXPECT_EQ(covered, data.cols);
    }
  }
}

TEST(SuiteTest, FitIsDeterministicAcrossThreadCounts) {
  SplitMix64 rng(307);
  const TrainingData data = gaussian_blobs(rng, 60, 5, 1.0);
  for (Family family : {Family::Bagging, Family::RandomForest,
                        Family::RotationForest, Family::AdaBoostM1}) {
    ClassifierSpec spec;
    spec.family = family;
    spec.iterations = 12;
    spec.seed = 42;
    const ClassifierModel one = fit_rows(spec, data, 1);
    const ClassifierModel two = fit_rows(spec, data, 4);
    const ClassifierModel again = fit_rows(spec, data, 1);
    EXPECT_EQ(one.to_json().dump(), two.to_json().dump());
    EXPECT_EQ(one.to_json().dump(), again.to_json().dump());
  }
}

TEST(SuiteTest, SerializedModelsReproducePredictions) {
  SplitMix64 rng(308);
  TrainingData data = gaussian_blobs(rng, 40, 15, 1.2);
  // Sprinkle missing values to exercise imputation.
  for (int i = 0; i < 40; ++i) {
    data.values[rng.next_below(data.values.size())] =
        std::numeric_limits<double>::quiet_NaN();
  }
  for (Family family : kAllFamilies) {
    ClassifierSpec spec;
    spec.family = family;
    spec.iterations = 8;
    spec.seed = 5;
    const ClassifierModel model = fit_rows(spec, data);
    const ClassifierModel loaded = model_from_json(
        OrderedJson::parse(model.to_json().dump()));
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<double> query(data.cols);
      for (double& q : query) q = rng.next_double() * 4.0 - 2.0;
      const double a = model.predict_proba(query);
      const double b = loaded.predict_proba(query);
      EXPECT_EQ(a, b) << family_name(family);
    }
  }
}

TEST(SuiteTest, MissingValuesImputedWithTrainingMean) {
  std::vector<std::vector<double>> rows = {
      {1.0, 10.0}, {3.0, 20.0}, {std::numeric_limits<double>::quiet_NaN(), 30.0},
      {5.0, 40.0}};
  const TrainingData data = make_data(rows, {0, 0, 1, 1});
  ClassifierSpec spec;
  spec.family = Family::DecisionTree;
  spec.min_leaf = 1;
  const ClassifierModel model = fit_rows(spec, data);
  EXPECT_DOUBLE_EQ(model.stats().imputation_means[0], 3.0);
  // Predicting with a missing first feature must not throw.
  const std::vector<double> query = {
      std::numeric_limits<double>::quiet_NaN(), 35.0};
  EXPECT_NO_THROW(model.predict_proba(query));
}

TEST(SuiteTest, ArityMismatchIsRejected) {
  SplitMix64 rng(309);
  const TrainingData data = gaussian_blobs(rng, 10, 3, 1.0);
  ClassifierSpec spec;
  spec.family = Family::NaiveBayes;
  const ClassifierModel model = fit_rows(spec, data);
  const std::vector<double> query = {0.0, 0.0};
  try {
    model.predict_proba(query);
    FAIL() << "expected ArityMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ArityMismatch);
  }
}

TEST(SuiteTest, EmptyTrainingSetIsRejected) {
  TrainingData data;
  data.cols = 3;
  ClassifierSpec spec;
  try {
    fit_rows(spec, data);
    FAIL() << "expected EmptyTrainingSet";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyTrainingSet);
  }
}

}  // namespace
}  // namespace linktrust
