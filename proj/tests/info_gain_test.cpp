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

#include "gtest/gtest.h"
#include "linktrust/classifier/info_gain.hpp"
#include "test_util.hpp"

namespace linktrust {
namespace {

TEST(InformationGainTest, PerfectBinaryPredictorOfBalancedSplitIsOneBit) {
  std::vector<double> values;
  std::vector<int> labels;
  for (int i = 0; i < 16; ++i) {
    values.push_back(i < 8 ? 0.0 : 1.0);
    labels.push_back(i < 8 ? 0 : 1);
  }
  EXPECT_NEAR(information_gain(values, labels), 1.0, 1e-12);
}

TEST(InformationGainTest, ConstantFeatureHasZeroGain) {
  std::vector<double> values(20, 3.5);
  std::vector<int> labels;
  for (int i = 0; i < 20; ++i) labels.push_back(i % 2);
  EXPECT_EQ(information_gain(values, labels), 0.0);
}

// Brute-force entropy oracle on a hand-built 8-row table with one known cut.
TEST(InformationGainTest, MatchesBruteForceEntropyOnHandBuiltTable) {
  const std::vector<double> values = {1, 2, 3, 4, 10, 11, 12, 13};
  const std::vector<int> labels = {0, 0, 0, 1, 1, 1, 1, 1};
  // The discretizer accepts exactly the clean cut between 3 and 4; both
  // resulting bins are pure, so no further cuts survive the MDL test.
  const auto cuts = mdl_cut_points(values, labels);
  ASSERT_EQ(cuts.size(), 1u);
  EXPECT_EQ(cuts[0], 3.5);

  auto entropy = [](double p) {
    return p <= 0 || p >= 1 ? 0.0
                            : -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  };
  const double h_label = entropy(5.0 / 8.0);
  const double h_cond = (3.0 / 8.0) * entropy(0.0) + (5.0 / 8.0) * entropy(1.0);
  EXPECT_NEAR(information_gain(values, labels), h_label - h_cond, 1e-12);
}

TEST(InformationGainTest, MdlRejectsCutsOnRandomLabels) {
  SplitMix64 rng(51);
  std::vector<double> values;
  std::vector<int> labels;
  for (int i = 0; i < 400; ++i) {
    values.push_back(rng.next_double());
    labels.push_back(static_cast<int>(rng.next_below(2)));
  }
  // Independent feature: gains should be negligible.
  EXPECT_LT(information_gain(values, labels), 0.05);
}

TEST(RankingTest, OrderedByGainWithCompetitionRanks) {
  SplitMix64 rng(53);
  LabeledDataset dataset;
  for (int i = 0; i < 200; ++i) {
    FeatureVector v;
    const bool restricted = i % 2 == 0;
    v.label = restricted ? Label::Restricted : Label::Unrestricted;
    v.owner = UserId{"u"};
    // common_friends separates perfectly, jaccard partially, the rest noise.
    v.common_friends = restricted ? rng.next_below(5) : 20 + rng.next_below(5);
    v.jaccard_coefficient =
        (restricted ? 0.0 : 0.3) + rng.next_double() * 0.4;
    v.common_chat_messages = rng.next_below(10);
    v.friend_friend_count = 100.0;
    dataset.vectors.push_back(v);
  }
  const FeatureRanking ranking = information_gain_ranking(dataset);
  ASSERT_EQ(ranking.entries.size(), kFeatureCount);
  EXPECT_EQ(ranking.entries[0].feature, "common_friends");
  for (std::size_t i = 1; i < ranking.entries.size(); ++i) {
    EXPECT_GE(ranking.entries[i - 1].gain, ranking.entries[i].gain);
  }
  EXPECT_EQ(ranking.rank_of("common_friends"), 1u);
  EXPECT_LE(ranking.rank_of("jaccard_coefficient"), 3u);
  // Constant features tie at zero gain and share a competition rank.
  const std::size_t zero_rank = ranking.rank_of("tagged_videos");
  EXPECT_EQ(ranking.rank_of("common_video_ratio"), zero_rank);
}

TEST(RankingTest, EmptyDatasetIsRejected) {
  LabeledDataset dataset;
  try {
    information_gain_ranking(dataset);
    FAIL() << "expected EmptyDataset";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyDataset);
  }
}

}  // namespace
}  // namespace linktrust
