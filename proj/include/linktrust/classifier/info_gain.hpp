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
#include <string>
#include <vector>

#include "linktrust/classifier/common.hpp"
#include "linktrust/classifier/decision_tree.hpp"

namespace linktrust {

// Numeric features are discretized by recursive supervised binary splitting
// with the Fayyad-Irani MDL stopping rule; this struct is the hook for the
// discretization choice.
struct DiscretizationSpec {
  std::size_t max_cut_points = 64;
};

namespace infogain_detail {

struct Range {
  std::size_t begin;
  std::size_t end;
};

// Entropy of the label distribution over sorted[begin, end).
inline double range_entropy(std::span<const std::pair<double, int>> sorted,
                            std::size_t begin, std::size_t end,
                            std::size_t positives) {
  (void)sorted;
  return entropy_bits(positives, end - begin);
}

inline void find_cuts(std::span<const std::pair<double, int>> sorted,
                      std::size_t begin, std::size_t end,
                      const DiscretizationSpec& spec,
                      std::vector<double>& cuts) {
  const std::size_t n = end - begin;
  if (n < 2 || cuts.size() >= spec.max_cut_points) return;

  std::size_t positives = 0;
  for (std::size_t i = begin; i < end; ++i) positives += sorted[i].second;
  if (positives == 0 || positives == n) return;
  const double parent_entropy = entropy_bits(positives, n);

  double best_gain = 0.0;
  std::size_t best_cut = 0;
  std::size_t best_left_pos = 0;
  std::size_t left_positives = 0;
  for (std::size_t i = begin + 1; i < end; ++i) {
    left_positives += sorted[i - 1].second;
    if (sorted[i - 1].first == sorted[i].first) continue;
    const std::size_t left = i - begin;
    const std::size_t right = n - left;
    const double gain =
        parent_entropy -
        (static_cast<double>(left) / n) * entropy_bits(left_positives, left) -
        (static_cast<double>(right) / n) *
            entropy_bits(positives - left_positives, right);
    if (best_cut == 0 || gain > best_gain) {
      best_gain = gain;
      best_cut = i;
      best_left_pos = left_positives;
    }
  }
  if (best_cut == 0) return;

  // Fayyad-Irani MDL acceptance criterion, entropies in bits.
  const std::size_t left = best_cut - begin;
  const std::size_t right = n - left;
  const auto class_count = [](std::size_t pos, std::size_t total) {
    return (pos > 0 && pos < total) ? 2.0 : 1.0;
  };
  const double k = class_count(positives, n);
  const double k1 = class_count(best_left_pos, left);
  const double k2 = class_count(positives - best_left_pos, right);
  const double entropy_s = parent_entropy;
  const double entropy_1 = entropy_bits(best_left_pos, left);
  const double entropy_2 = entropy_bits(positives - best_left_pos, right);
  const double delta = std::log2(std::pow(3.0, k) - 2.0) -
                       (k * entropy_s - k1 * entropy_1 - k2 * entropy_2);
  const double threshold =
      (std::log2(static_cast<double>(n) - 1.0) + delta) / static_cast<double>(n);
  if (best_gain <= threshold) return;

  cuts.push_back(sorted[best_cut - 1].first +
                 (sorted[best_cut].first - sorted[best_cut - 1].first) / 2);
  find_cuts(sorted, begin, best_cut, spec, cuts);
  find_cuts(sorted, best_cut, end, spec, cuts);
}

}  // namespace infogain_detail

// Cut points chosen by the MDL discretizer for one feature, ascending.
inline std::vector<double> mdl_cut_points(std::span<const double> values,
                                          std::span<const int> labels,
                                          const DiscretizationSpec& spec = {}) {
  if (values.size() != labels.size()) {
    throw Error(Errc::LengthMismatch, "values and labels differ in length");
  }
  std::vector<std::pair<double, int>> sorted(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    sorted[i] = {values[i], labels[i]};
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  infogain_detail::find_cuts(sorted, 0, sorted.size(), spec, cuts);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

// H(label) - H(label | discretized feature), in bits.
inline double information_gain(std::span<const double> values,
                               std::span<const int> labels,
                               const DiscretizationSpec& spec = {}) {
  const std::vector<double> cuts = mdl_cut_points(values, labels, spec);
  const std::size_t bins = cuts.size() + 1;
  std::vector<std::size_t> total(bins, 0);
  std::vector<std::size_t> positives(bins, 0);
  std::size_t all_positives = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t bin =
        std::lower_bound(cuts.begin(), cuts.end(), values[i]) - cuts.begin();
    ++total[bin];
    positives[bin] += labels[i];
    all_positives += labels[i];
  }
  double conditional = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (total[b] == 0) continue;
    conditional += (static_cast<double>(total[b]) / values.size()) *
                   entropy_bits(positives[b], total[b]);
  }
  return entropy_bits(all_positives, values.size()) - conditional;
}

struct FeatureRanking {
  struct Entry {
    std::string feature;
    double gain = 0.0;
  };
  // Sorted by descending gain; equal gains keep canonical feature order.
  std::vector<Entry> entries;

  // Competition rank: 1 + the number of features with strictly larger gain,
  // so exactly tied features share a rank.
  std::size_t rank_of(const std::string& feature) const {
    double gain = 0.0;
    bool found = false;
    for (const Entry& e : entries) {
      if (e.feature == feature) {
        gain = e.gain;
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(Errc::InvalidArgument, "unknown feature '" + feature + "'");
    }
    std::size_t rank = 1;
    for (const Entry& e : entries) {
      if (e.gain > gain) ++rank;
    }
    return rank;
  }
};

// Information-gain ranking over a dataset's 15 features. Absent values are
// imputed with the dataset mean before discretization.
inline FeatureRanking information_gain_ranking(
    const LabeledDataset& dataset, const DiscretizationSpec& spec = {}) {
  if (dataset.vectors.empty()) {
    throw Error(Errc::EmptyDataset, "cannot rank features of an empty dataset");
  }
  TrainingData data = TrainingData::from_dataset(dataset);
  const FeatureStats stats = compute_feature_stats(data);
  impute_in_place(data, stats.imputation_means);

  FeatureRanking ranking;
  std::vector<double> column(data.rows);
  for (std::size_t f = 0; f < data.cols; ++f) {
    for (std::size_t r = 0; r < data.rows; ++r) column[r] = data.at(r, f);
    ranking.entries.push_back(
        {kFeatureNames[f], information_gain(column, data.labels, spec)});
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const FeatureRanking::Entry& a,
                      const FeatureRanking::Entry& b) { return a.gain > b.gain; });
  return ranking;
}

}  // namespace linktrust
