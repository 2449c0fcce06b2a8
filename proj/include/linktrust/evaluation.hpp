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
// Evaluation metrics and protocols: AUC, thresholded binary metrics,
// stratified cross-validation, ranked precision@k protocols, and the
// Connection-Strength diagnostic statistics.
#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <vector>

#include "linktrust/classifier/suite.hpp"
#include "linktrust/dataset.hpp"
#include "linktrust/heuristic.hpp"

namespace linktrust {

// Mann-Whitney AUC: P(score_pos > score_neg) + 0.5 P(tie), computed from
// midranks.
inline double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(Errc::LengthMismatch, "scores and labels differ in length");
  }
  std::size_t positives = 0;
  for (int label : labels) positives += label;
  const std::size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(Errc::SingleClass, "AUC needs both classes");
  }

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) positive_rank_sum += midrank;
    }
    i = j;
  }
  const double p = static_cast<double>(positives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) /
         (p * static_cast<double>(negatives));
}

struct BinaryMetrics {
  double f_measure = 0.0;
  double true_positive_rate = 0.0;
  double false_positive_rate = 0.0;
};

// F-measure of the restricted class, TPR and FPR at a decision already made
// upstream. Precision is defined as 0 when nothing is predicted positive.
inline BinaryMetrics classification_metrics(std::span<const int> predictions,
                                            std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    throw Error(Errc::LengthMismatch,
                "predictions and labels differ in length");
  }
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] == 1) {
      (labels[i] == 1 ? tp : fp) += 1;
    } else {
      (labels[i] == 1 ? fn : tn) += 1;
    }
  }
  BinaryMetrics m;
  const double precision =
      (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                    : 0.0;
  const double recall =
      (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn)
                    : 0.0;
  m.f_measure = (precision + recall) > 0.0
                    ? 2.0 * precision * recall / (precision + recall)
                    : 0.0;
  m.true_positive_rate = recall;
  m.false_positive_rate =
      (fp + tn) > 0 ? static_cast<double>(fp) / static_cast<double>(fp + tn)
                    : 0.0;
  return m;
}

struct CvReport {
  double auc = 0.0;
  double f_measure = 0.0;
  double true_positive_rate = 0.0;
  double false_positive_rate = 0.0;
  std::vector<double> fold_auc;
  std::vector<double> fold_f_measure;
  std::vector<double> fold_true_positive_rate;
  std::vector<double> fold_false_positive_rate;
};

namespace eval_detail {

// Stratified fold assignment: each class is shuffled with its own derived
// stream and dealt round-robin, keeping class proportions within one
// instance per fold.
inline std::vector<int> stratified_folds(std::span<const int> labels, int folds,
                                         std::uint64_t seed) {
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i]].push_back(i);
  }
  std::vector<int> assignment(labels.size(), 0);
  for (int c = 0; c < 2; ++c) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(c) + 1));
    fisher_yates_shuffle(by_class[c], rng);
    for (std::size_t i = 0; i < by_class[c].size(); ++i) {
      assignment[by_class[c][i]] = static_cast<int>(i % folds);
    }
  }
  return assignment;
}

inline double mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

}  // namespace eval_detail

// 10-fold (by default) stratified cross-validation of one classifier spec.
// Deterministic given (spec, seed); per-fold fits use seeds derived from the
// spec seed so folds stay independent of evaluation order.
inline CvReport stratified_cv(const ClassifierSpec& spec,
                              const LabeledDataset& dataset, int folds,
                              std::uint64_t seed, int threads = 1) {
  const TrainingData data = TrainingData::from_dataset(dataset);
  std::size_t positives = 0;
  for (int label : data.labels) positives += label;
  const std::size_t negatives = data.rows - positives;
  if (folds < 2 || positives < static_cast<std::size_t>(folds) ||
      negatives < static_cast<std::size_t>(folds)) {
    throw Error(Errc::TooFewInstances,
                "each class must have at least one instance per fold");
  }

  const std::vector<int> assignment =
      eval_detail::stratified_folds(data.labels, folds, seed);
  CvReport report;
  for (int fold = 0; fold < folds; ++fold) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < data.rows; ++i) {
      (assignment[i] == fold ? test_idx : train_idx).push_back(i);
    }
    ClassifierSpec fold_spec = spec;
    fold_spec.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(fold));
    const ClassifierModel model =
        fit_rows(fold_spec, data.take_rows(train_idx), threads);

    std::vector<double> scores(test_idx.size());
    std::vector<int> predictions(test_idx.size());
    std::vector<int> labels(test_idx.size());
    for (std::size_t i = 0; i < test_idx.size(); ++i) {
      scores[i] = model.predict_proba(data.row(test_idx[i]));
      predictions[i] = scores[i] >= 0.5 ? 1 : 0;
      labels[i] = data.labels[test_idx[i]];
    }
    report.fold_auc.push_back(auc(scores, labels));
    const BinaryMetrics m = classification_metrics(predictions, labels);
    report.fold_f_measure.push_back(m.f_measure);
    report.fold_true_positive_rate.push_back(m.true_positive_rate);
    report.fold_false_positive_rate.push_back(m.false_positive_rate);
  }
  report.auc = eval_detail::mean(report.fold_auc);
  report.f_measure = eval_detail::mean(report.fold_f_measure);
  report.true_positive_rate = eval_detail::mean(report.fold_true_positive_rate);
  report.false_positive_rate =
      eval_detail::mean(report.fold_false_positive_rate);
  return report;
}

struct PrecisionCurve {
  std::vector<std::pair<std::size_t, double>> points;  // k strictly increasing
};

// 2/3-1/3 protocol: seeded shuffle, train on the first two thirds, rank the
// held-out third by predicted probability (descending, ties kept in input
// order) and report precision among the top k for each requested k.
inline PrecisionCurve precision_at_k_split(const ClassifierSpec& spec,
                                           const LabeledDataset& dataset,
                                           std::span<const std::size_t> k_list,
                                           std::uint64_t seed,
                                           int threads = 1) {
  const TrainingData data = TrainingData::from_dataset(dataset);
  if (data.rows < 3) {
    throw Error(Errc::TooFewInstances, "need at least 3 instances to split");
  }
  std::vector<std::size_t> order(data.rows);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(derive_seed(seed, 0));
  fisher_yates_shuffle(order, rng);

  const std::size_t test_size = data.rows / 3;
  const std::size_t train_size = data.rows - test_size;
  std::vector<std::size_t> train_idx(order.begin(), order.begin() + train_size);
  std::vector<std::size_t> test_idx(order.begin() + train_size, order.end());
  for (std::size_t k : k_list) {
    if (k == 0 || k > test_size) {
      throw Error(Errc::KExceedsTestSize,
                  "k=" + std::to_string(k) + " outside test size " +
                      std::to_string(test_size));
    }
  }

  const ClassifierModel model =
      fit_rows(spec, data.take_rows(train_idx), threads);
  std::vector<std::pair<double, std::size_t>> scored(test_idx.size());
  for (std::size_t i = 0; i < test_idx.size(); ++i) {
    scored[i] = {model.predict_proba(data.row(test_idx[i])), i};
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  PrecisionCurve curve;
  for (std::size_t k : k_list) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k; ++i) {
      hits += data.labels[test_idx[scored[i].second]];
    }
    curve.points.emplace_back(k, static_cast<double>(hits) /
                                     static_cast<double>(k));
  }
  return curve;
}

// Leave-one-user-out protocol: for each owner, train on everyone else's
// vectors (re-balanced with the standard undersampler), rank the held-out
// owner's links and average the per-user precision@k. Owners with fewer than
// k links do not contribute to that k point.
inline PrecisionCurve avg_users_precision_at_k(
    const ClassifierSpec& spec, const LabeledDataset& dataset,
    std::span<const std::size_t> k_list, std::uint64_t seed, int threads = 1) {
  std::map<UserId, std::vector<std::size_t>> owners;
  for (std::size_t i = 0; i < dataset.vectors.size(); ++i) {
    owners[dataset.vectors[i].owner].push_back(i);
  }
  if (owners.size() < 2) {
    throw Error(Errc::TooFewOwners, "need at least 2 owners");
  }

  std::vector<double> precision_sum(k_list.size(), 0.0);
  std::vector<std::size_t> eligible(k_list.size(), 0);
  std::size_t owner_index = 0;
  for (const auto& [owner, test_idx] : owners) {
    LabeledDataset training;
    training.kind = dataset.kind;
    for (std::size_t i = 0; i < dataset.vectors.size(); ++i) {
      if (dataset.vectors[i].owner != owner) {
        training.vectors.push_back(dataset.vectors[i]);
      }
    }
    const std::uint64_t user_seed = derive_seed(seed, owner_index++);
    LabeledDataset balanced;
    try {
      balanced = balance_undersample(training, user_seed);
    } catch (const Error& e) {
      if (e.code() == Errc::NoPositives) continue;  // nothing to learn from
      throw;
    }
    ClassifierSpec user_spec = spec;
    user_spec.seed = user_seed;
    const ClassifierModel model = fit(user_spec, balanced, threads);

    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(test_idx.size());
    for (std::size_t i = 0; i < test_idx.size(); ++i) {
      scored.emplace_back(model.predict_proba(dataset.vectors[test_idx[i]]), i);
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a,
                                                      const auto& b) {
      return a.first > b.first;
    });
    for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
      const std::size_t k = k_list[ki];
      if (k == 0 || scored.size() < k) continue;
      std::size_t hits = 0;
      for (std::size_t i = 0; i < k; ++i) {
        hits += dataset.vectors[test_idx[scored[i].second]].label ==
                        Label::Restricted
                    ? 1
                    : 0;
      }
      precision_sum[ki] += static_cast<double>(hits) / static_cast<double>(k);
      eligible[ki] += 1;
    }
  }

  PrecisionCurve curve;
  for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
    if (eligible[ki] == 0) continue;
    curve.points.emplace_back(k_list[ki],
                              precision_sum[ki] /
                                  static_cast<double>(eligible[ki]));
  }
  if (curve.points.empty()) {
    throw Error(Errc::NoEligibleUsers, "no owner has enough links for any k");
  }
  return curve;
}

// Mean over owners with at least k friends of the restricted fraction among
// their k lowest-Connection-Strength friends (heuristic ranking tie-breaks).
inline double cs_avg_precision(std::span<const LinkRecord> corpus,
                               std::size_t k) {
  if (k == 0) {
    throw Error(Errc::InvalidArgument, "k must be >= 1");
  }
  double total = 0.0;
  std::size_t eligible = 0;
  for (const auto& [owner, indices] : group_indices_by_owner(corpus)) {
    if (indices.size() < k) continue;
    std::vector<LinkRecord> links;
    links.reserve(indices.size());
    for (std::size_t i : indices) links.push_back(corpus[i]);
    const std::vector<ScoredFriend> ranked = rank_friends(links);

    std::size_t restricted = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (const LinkRecord& link : links) {
        if (link.friend_id == ranked[i].friend_id) {
          restricted += is_restricted(link.disposition) ? 1 : 0;
          break;
        }
      }
    }
    total += static_cast<double>(restricted) / static_cast<double>(k);
    ++eligible;
  }
  if (eligible == 0) {
    throw Error(Errc::NoEligibleUsers,
                "no user has at least " + std::to_string(k) + " friends");
  }
  return total / static_cast<double>(eligible);
}

// Restricted fraction at each observed Connection-Strength value.
inline std::map<std::uint64_t, double> restriction_precision_by_cs_value(
    std::span<const LinkRecord> corpus) {
  std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> counts;
  for (const LinkRecord& link : corpus) {
    auto& [restricted, total] = counts[connection_strength(link)];
    restricted += is_restricted(link.disposition) ? 1 : 0;
    total += 1;
  }
  std::map<std::uint64_t, double> result;
  for (const auto& [score, pair] : counts) {
    result[score] = static_cast<double>(pair.first) /
                    static_cast<double>(pair.second);
  }
  return result;
}

// Restricted fraction by position in the restriction interface, i.e. within
// each owner's recommended (bottom-10%) list.
inline std::map<std::size_t, double> restriction_rate_by_rank_position(
    std::span<const LinkRecord> corpus) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& [owner, indices] : group_indices_by_owner(corpus)) {
    std::vector<LinkRecord> links;
    links.reserve(indices.size());
    for (std::size_t i : indices) links.push_back(corpus[i]);
    const std::vector<ScoredFriend> recommended = recommend_restrictions(links);
    for (const ScoredFriend& entry : recommended) {
      for (const LinkRecord& link : links) {
        if (link.friend_id == entry.friend_id) {
          auto& [restricted, total] = counts[entry.rank_position];
          restricted += is_restricted(link.disposition) ? 1 : 0;
          total += 1;
          break;
        }
      }
    }
  }
  std::map<std::size_t, double> result;
  for (const auto& [position, pair] : counts) {
    result[position] = static_cast<double>(pair.first) /
                       static_cast<double>(pair.second);
  }
  return result;
}

}  // namespace linktrust
