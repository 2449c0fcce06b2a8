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
// Fit/predict/serialize entry points over the whole classifier family set.
#pragma once

#include <algorithm>
#include <memory>

#include "linktrust/classifier/common.hpp"
#include "linktrust/classifier/decision_tree.hpp"
#include "linktrust/classifier/ensembles.hpp"
#include "linktrust/classifier/info_gain.hpp"
#include "linktrust/classifier/knn.hpp"
#include "linktrust/classifier/naive_bayes.hpp"
#include "linktrust/classifier/one_r.hpp"
#include "linktrust/classifier/rotation_forest.hpp"

namespace linktrust {

// Trains a model of the requested family on an imputed numeric matrix.
// A single-class training set yields a constant-probability model.
inline ClassifierModel fit_rows(const ClassifierSpec& spec,
                                const TrainingData& data, int threads = 1) {
  validate_spec(spec);
  if (data.rows == 0) {
    throw Error(Errc::EmptyTrainingSet, "no training instances");
  }
  FeatureStats stats = compute_feature_stats(data);
  TrainingData imputed = data;
  impute_in_place(imputed, stats.imputation_means);

  const bool any_positive =
      std::any_of(data.labels.begin(), data.labels.end(),
                  [](int label) { return label == 1; });
  const bool any_negative =
      std::any_of(data.labels.begin(), data.labels.end(),
                  [](int label) { return label == 0; });
  if (!any_positive || !any_negative) {
    return ClassifierModel(
        spec, std::move(stats),
        std::make_shared<ConstantClassifier>(any_positive ? 1.0 : 0.0));
  }

  std::shared_ptr<const ClassifierImpl> impl;
  switch (spec.family) {
    case Family::OneR:
      impl = std::make_shared<OneRClassifier>(OneRClassifier::fit(imputed));
      break;
    case Family::DecisionTree: {
      TreeOptions options;
      options.min_leaf = spec.min_leaf;
      impl = std::make_shared<DecisionTreeClassifier>(
          DecisionTreeClassifier::fit(imputed, options));
      break;
    }
    case Family::KNearest:
      impl = std::make_shared<KNearestClassifier>(
          KNearestClassifier::fit(imputed, stats, spec.k));
      break;
    case Family::NaiveBayes:
      impl = std::make_shared<NaiveBayesClassifier>(
          NaiveBayesClassifier::fit(imputed));
      break;
    case Family::Bagging: {
      EnsembleOptions options{spec.min_leaf, spec.iterations, spec.seed};
      impl = std::make_shared<BaggedForest>(
          BaggedForest::fit(imputed, options, false, threads));
      break;
    }
    case Family::RandomForest: {
      // Random forests grow unpruned trees: min_leaf is pinned to 1.
      EnsembleOptions options{1, spec.iterations, spec.seed};
      impl = std::make_shared<BaggedForest>(
          BaggedForest::fit(imputed, options, true, threads));
      break;
    }
    case Family::AdaBoostM1: {
      EnsembleOptions options{spec.min_leaf, spec.iterations, spec.seed};
      impl = std::make_shared<AdaBoostClassifier>(
          AdaBoostClassifier::fit(imputed, options));
      break;
    }
    case Family::RotationForest: {
      RotationForestOptions options;
      options.min_leaf = spec.min_leaf;
      options.iterations = spec.iterations;
      options.seed = spec.seed;
      impl = std::make_shared<RotationForestClassifier>(
          RotationForestClassifier::fit(imputed, options, threads));
      break;
    }
  }
  return ClassifierModel(spec, std::move(stats), std::move(impl));
}

inline ClassifierModel fit(const ClassifierSpec& spec,
                           const LabeledDataset& dataset, int threads = 1) {
  return fit_rows(spec, TrainingData::from_dataset(dataset), threads);
}

inline ClassifierModel model_from_json(const OrderedJson& in) {
  ClassifierSpec spec;
  const auto family = family_from_name(in.at("family").get<std::string>());
  if (!family) {
    throw Error(Errc::InvalidArgument,
                "unknown classifier family '" +
                    in.at("family").get<std::string>() + "'");
  }
  spec.family = *family;
  const auto& hp = in.at("hyperparameters");
  spec.min_leaf = hp.at("min_leaf").get<int>();
  spec.k = hp.at("k").get<int>();
  spec.iterations = hp.at("iterations").get<int>();
  spec.seed = hp.at("seed").get<std::uint64_t>();

  FeatureStats stats;
  stats.imputation_means = in.at("imputation_means").get<std::vector<double>>();
  stats.mins = in.at("feature_mins").get<std::vector<double>>();
  stats.maxs = in.at("feature_maxs").get<std::vector<double>>();
  if (stats.imputation_means.size() != in.at("feature_arity").get<std::size_t>()) {
    throw Error(Errc::InvalidArgument, "feature arity mismatch in model file");
  }

  const auto& fitted = in.at("fitted");
  const std::string kind = fitted.at("kind").get<std::string>();
  std::shared_ptr<ClassifierImpl> impl;
  if (kind == "constant") {
    impl = ConstantClassifier::from_json(fitted);
  } else if (kind == "one_r") {
    impl = OneRClassifier::from_json(fitted);
  } else if (kind == "decision_tree") {
    impl = DecisionTreeClassifier::from_json(fitted);
  } else if (kind == "k_nearest") {
    impl = KNearestClassifier::from_json(fitted);
  } else if (kind == "naive_bayes") {
    impl = NaiveBayesClassifier::from_json(fitted);
  } else if (kind == "bagging" || kind == "random_forest") {
    impl = BaggedForest::from_json(fitted);
  } else if (kind == "ada_boost_m1") {
    impl = AdaBoostClassifier::from_json(fitted);
  } else if (kind == "rotation_forest") {
    impl = RotationForestClassifier::from_json(fitted);
  } else {
    throw Error(Errc::InvalidArgument, "unknown fitted kind '" + kind + "'");
  }
  return ClassifierModel(spec, std::move(stats), std::move(impl));
}

}  // namespace linktrust
