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
#include <array>
#include <span>
#include <vector>

#include "linktrust/core.hpp"
#include "linktrust/features.hpp"
#include "linktrust/rng.hpp"

namespace linktrust {

enum class DatasetKind { FakeProfiles, FriendsRestriction, AllLinks };

inline const char* dataset_kind_name(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::FakeProfiles: return "fake_profiles";
    case DatasetKind::FriendsRestriction: return "friends_restriction";
    case DatasetKind::AllLinks: return "all_links";
  }
  return "";
}

inline constexpr std::array<DatasetKind, 3> kAllDatasetKinds = {
    DatasetKind::FakeProfiles, DatasetKind::FriendsRestriction,
    DatasetKind::AllLinks};

// Disjoint, exhaustive partition of corpus indices by link disposition.
struct LinkPartition {
  std::array<std::vector<std::size_t>, kDispositionCount> by_disposition;

  const std::vector<std::size_t>& of(LinkDisposition d) const {
    return by_disposition[static_cast<std::size_t>(d)];
  }
};

inline LinkPartition partition_links(std::span<const LinkRecord> corpus) {
  LinkPartition partition;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    partition.by_disposition[static_cast<std::size_t>(corpus[i].disposition)]
        .push_back(i);
  }
  return partition;
}

struct LabeledDataset {
  DatasetKind kind = DatasetKind::AllLinks;
  std::vector<FeatureVector> vectors;

  std::size_t positives() const {
    std::size_t count = 0;
    for (const FeatureVector& v : vectors) {
      if (v.label == Label::Restricted) ++count;
    }
    return count;
  }
  std::size_t negatives() const { return vectors.size() - positives(); }
};

// Assembles one of the three dataset kinds from a partition. All three share
// the All-unrestricted links as their negative pool:
//   FakeProfiles       = RecommendedRestricted(+) | AllUnrestricted(-) |
//                        RecommendedUnrestricted(-)
//   FriendsRestriction = AlphabeticallyRestricted(+) | AllUnrestricted(-)
//   AllLinks           = everything, positives = both restricted sets
// Membership is emitted in corpus-index order.
inline LabeledDataset build_dataset(DatasetKind kind,
                                    const LinkPartition& partition,
                                    std::span<const FeatureVector> features) {
  std::vector<std::size_t> selected;
  auto append = [&](LinkDisposition d) {
    const auto& indices = partition.of(d);
    selected.insert(selected.end(), indices.begin(), indices.end());
  };
  switch (kind) {
    case DatasetKind::FakeProfiles:
      append(LinkDisposition::RecommendedRestricted);
      append(LinkDisposition::AllUnrestricted);
      append(LinkDisposition::RecommendedUnrestricted);
      break;
    case DatasetKind::FriendsRestriction:
      append(LinkDisposition::AlphabeticallyRestricted);
      append(LinkDisposition::AllUnrestricted);
      break;
    case DatasetKind::AllLinks:
      append(LinkDisposition::AllUnrestricted);
      append(LinkDisposition::RecommendedUnrestricted);
      append(LinkDisposition::RecommendedRestricted);
      append(LinkDisposition::AlphabeticallyRestricted);
      break;
  }
  std::sort(selected.begin(), selected.end());

  LabeledDataset dataset;
  dataset.kind = kind;
  dataset.vectors.reserve(selected.size());
  for (std::size_t i : selected) {
    if (i >= features.size()) {
      throw Error(Errc::InvalidArgument,
                  "partition index outside the feature table");
    }
    dataset.vectors.push_back(features[i]);
  }
  return dataset;
}

// Undersamples the majority class: keeps every positive and a seeded uniform
// draw (without replacement) of equally many negatives. Output preserves the
// input's relative order.
inline LabeledDataset balance_undersample(const LabeledDataset& dataset,
                                          std::uint64_t seed) {
  std::vector<std::size_t> positive_indices;
  std::vector<std::size_t> negative_indices;
  for (std::size_t i = 0; i < dataset.vectors.size(); ++i) {
    (dataset.vectors[i].label == Label::Restricted ? positive_indices
                                                   : negative_indices)
        .push_back(i);
  }
  if (positive_indices.empty()) {
    throw Error(Errc::NoPositives, "dataset has no restricted links");
  }
  if (negative_indices.size() < positive_indices.size()) {
    throw Error(Errc::InvalidArgument,
                "fewer negatives than positives; cannot undersample");
  }

  SplitMix64 rng(seed);
  std::vector<std::size_t> picks = sample_without_replacement(
      negative_indices.size(), positive_indices.size(), rng);
  std::vector<std::size_t> keep = positive_indices;
  keep.reserve(2 * positive_indices.size());
  for (std::size_t p : picks) keep.push_back(negative_indices[p]);
  std::sort(keep.begin(), keep.end());

  LabeledDataset balanced;
  balanced.kind = dataset.kind;
  balanced.vectors.reserve(keep.size());
  for (std::size_t i : keep) balanced.vectors.push_back(dataset.vectors[i]);
  return balanced;
}

}  // namespace linktrust
