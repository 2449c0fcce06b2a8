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
#include "linktrust/evaluation.hpp"
#include "test_util.hpp"

namespace linktrust {
namespace {

using testing::make_link;

TEST(AucTest, PerfectSeparationIsOne) {
  const std::vector<double> scores = {.9, .8, .2, .1};
  const std::vector<int> labels = {1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(auc(scores, labels), 1.0);
}

TEST(AucTest, InvertedIsZero) {
  const std::vector<double> scores = {.9, .1};
  const std::vector<int> labels = {0, 1};
  EXPECT_DOUBLE_EQ(auc(scores, labels), 0.0);
}

TEST(AucTest, AllTiedIsHalf) {
  const std::vector<double> scores = {.5, .5, .5, .5};
  const std::vector<int> labels = {1, 0, 1, 0};
  EXPECT_DOUBLE_EQ(auc(scores, labels), 0.5);
}

TEST(AucTest, SingleClassIsRejected) {
  const std::vector<double> scores = {.5, .6};
  const std::vector<int> labels = {1, 1};
  try {
    auc(scores, labels);
    FAIL() << "expected SingleClass";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingleClass);
  }
}

TEST(AucTest, MatchesBruteForceOnRandomInputsWithTies) {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.next_below(199);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse grid forces plenty of ties.
      scores[i] = static_cast<double>(rng.next_below(8)) / 7.0;
      labels[i] = static_cast<int>(rng.next_below(2));
      (labels[i] ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) continue;
    EXPECT_NEAR(auc(scores, labels), testing::brute_force_auc(scores, labels),
                1e-12);
  }
}

TEST(MetricsTest, PerfectPredictions) {
  const std::vector<int> predictions = {1, 1, 0, 0};
  const std::vector<int> labels = {1, 1, 0, 0};
  const BinaryMetrics m = classification_metrics(predictions, labels);
  EXPECT_DOUBLE_EQ(m.f_measure, 1.0);
  EXPECT_DOUBLE_EQ(m.true_positive_rate, 1.0);
  EXPECT_DOUBLE_EQ(m.false_positive_rate, 0.0);
}

TEST(MetricsTest, AllPredictedNegativeGivesZeroes) {
  const std::vector<int> predictions = {0, 0, 0};
  const std::vector<int> labels = {1, 0, 1};
  const BinaryMetrics m = classification_metrics(predictions, labels);
  EXPECT_DOUBLE_EQ(m.f_measure, 0.0);
  EXPECT_DOUBLE_EQ(m.true_positive_rate, 0.0);
  EXPECT_DOUBLE_EQ(m.false_positive_rate, 0.0);
}

TEST(MetricsTest, HandCountedConfusionMatrix) {
  // TP=2, FP=1, FN=1, TN=4: P=2/3, R=1/2, F=4/7.
  const std::vector<int> predictions = {1, 1, 1, 0, 0, 0, 0, 0};
  const std::vector<int> labels = {1, 1, 0, 1, 0, 0, 0, 0};
  const BinaryMetrics m = classification_metrics(predictions, labels);
  EXPECT_NEAR(m.f_measure, 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(m.true_positive_rate, 0.5, 1e-15);
  EXPECT_NEAR(m.false_positive_rate, 0.2, 1e-15);
}

TEST(MetricsTest, LengthMismatchIsRejected) {
  const std::vector<int> predictions = {1};
  const std::vector<int> labels = {1, 0};
  EXPECT_THROW(classification_metrics(predictions, labels), Error);
}

LabeledDataset blob_dataset(SplitMix64& rng, std::size_t per_class,
                            double separation) {
  LabeledDataset dataset;
  auto normal = [&rng]() {
    const double u1 = 1.0 - rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  for (int label = 0; label < 2; ++label) {
    for (std::size_t i = 0; i < per_class; ++i) {
      FeatureVector v;
      v.label = label ? Label::Restricted : Label::Unrestricted;
      v.owner = UserId{"u" + std::to_string(i % 7)};
      v.common_friends = normal() + (label ? separation : 0.0);
      v.common_chat_messages = normal() + (label ? separation : 0.0);
      v.jaccard_coefficient = normal();
      v.friend_friend_count = 50.0;
      dataset.vectors.push_back(v);
    }
  }
  return dataset;
}

TEST(CvTest, StratificationBalancesEveryFold) {
  SplitMix64 rng(67);
  LabeledDataset dataset = blob_dataset(rng, 50, 3.0);
  const TrainingData data = TrainingData::from_dataset(dataset);
  const auto assignment = eval_detail::stratified_folds(data.labels, 10, 3);
  std::vector<int> fold_pos(10, 0), fold_neg(10, 0);
  for (std::size_t i = 0; i < data.rows; ++i) {
    (data.labels[i] ? fold_pos : fold_neg)[assignment[i]] += 1;
  }
  for (int fold = 0; fold < 10; ++fold) {
    EXPECT_EQ(fold_pos[fold], 5);
    EXPECT_EQ(fold_neg[fold], 5);
  }
}

TEST(CvTest, DeterministicGivenSeed) {
  SplitMix64 rng(71);
  LabeledDataset dataset = blob_dataset(rng, 40, 2.0);
  ClassifierSpec spec;
  spec.family = Family::DecisionTree;
  spec.min_leaf = 4;
  const CvReport a = stratified_cv(spec, dataset, 10, 5);
  const CvReport b = stratified_cv(spec, dataset, 10, 5);
  EXPECT_EQ(a.auc, b.auc);
  EXPECT_EQ(a.fold_auc, b.fold_auc);
  EXPECT_EQ(a.f_measure, b.f_measure);
}

TEST(CvTest, AggregateIsTheMeanOfFolds) {
  SplitMix64 rng(73);
  LabeledDataset dataset = blob_dataset(rng, 30, 2.0);
  ClassifierSpec spec;
  spec.family = Family::NaiveBayes;
  const CvReport report = stratified_cv(spec, dataset, 10, 11);
  double sum = 0.0;
  for (double v : report.fold_auc) sum += v;
  EXPECT_NEAR(report.auc, sum / 10.0, 1e-15);
  EXPECT_EQ(report.fold_auc.size(), 10u);
}

TEST(CvTest, TooFewInstancesRejected) {
  SplitMix64 rng(79);
  LabeledDataset dataset = blob_dataset(rng, 4, 2.0);
  ClassifierSpec spec;
  try {
    stratified_cv(spec, dataset, 10, 1);
    FAIL() << "expected TooFewInstances";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooFewInstances);
  }
}

TEST(CvTest, PermutedLabelsScoreNearChance) {
  SplitMix64 rng(83);
  LabeledDataset dataset = blob_dataset(rng, 100, 3.0);
  double sum = 0.0;
  for (std::uint64_t repeat = 0; repeat < 3; ++repeat) {
    LabeledDataset permuted = dataset;
    std::vector<Label> labels;
    for (const auto& v : permuted.vectors) labels.push_back(v.label);
    SplitMix64 shuffle_rng(derive_seed(1234, repeat));
    fisher_yates_shuffle(labels, shuffle_rng);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      permuted.vectors[i].label = labels[i];
    }
    ClassifierSpec spec;
    spec.family = Family::DecisionTree;
    spec.min_leaf = 8;
    sum += stratified_cv(spec, permuted, 10, repeat).auc;
  }
  const double mean_auc = sum / 3.0;
  EXPECT_GT(mean_auc, 0.4);
  EXPECT_LT(mean_auc, 0.6);
}

TEST(PrecisionAtKTest, CountsTopKRestrictions) {
  // Top-4 probabilities with labels 1,0,1,1 -> precision@2 = 0.5.
  SplitMix64 rng(89);
  LabeledDataset dataset = blob_dataset(rng, 60, 4.0);
  ClassifierSpec spec;
  spec.family = Family::DecisionTree;
  const std::vector<std::size_t> k_list = {1, 2, 5, 10, 20, 40};
  const PrecisionCurve curve =
      precision_at_k_split(spec, dataset, k_list, 3);
  ASSERT_EQ(curve.points.size(), k_list.size());
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    EXPECT_EQ(curve.points[i].first, k_list[i]);
    EXPECT_GE(curve.points[i].second, 0.0);
    EXPECT_LE(curve.points[i].second, 1.0);
  }
}

TEST(PrecisionAtKTest, FullTestSizeEqualsBaseRate) {
  SplitMix64 rng(97);
  LabeledDataset dataset = blob_dataset(rng, 60, 0.0);  // no signal
  const TrainingData data = TrainingData::from_dataset(dataset);
  const std::size_t test_size = data.rows / 3;
  ClassifierSpec spec;
  spec.family = Family::NaiveBayes;
  const std::vector<std::size_t> k_list = {test_size};
  const PrecisionCurve curve = precision_at_k_split(spec, dataset, k_list, 9);
  // Exhausting the test set yields its base rate regardless of ranking.
  std::size_t restricted = 0;
  // Recompute the split to count the test base rate.
  std::vector<std::size_t> order(data.rows);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 split_rng(derive_seed(9, 0));
  fisher_yates_shuffle(order, split_rng);
  for (std::size_t i = data.rows - test_size; i < data.rows; ++i) {
    restricted += data.labels[order[i]];
  }
  EXPECT_NEAR(curve.points[0].second,
              static_cast<double>(restricted) / test_size, 1e-12);
}

TEST(PrecisionAtKTest, KBeyondTestSizeRejected) {
  SplitMix64 rng(101);
  LabeledDataset dataset = blob_dataset(rng, 30, 1.0);
  ClassifierSpec spec;
  const std::vector<std::size_t> k_list = {1000};
  try {
    precision_at_k_split(spec, dataset, k_list, 1);
    FAIL() << "expected KExceedsTestSize";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::KExceedsTestSize);
  }
}

// Two owners; each has one restricted friend that separates perfectly.
TEST(AvgUsersTest, PerfectRankerScoresOneAtKOne) {
  LabeledDataset dataset;
  for (int u = 0; u < 2; ++u) {
    for (int i = 0; i < 12; ++i) {
      FeatureVector v;
      v.owner = UserId{"owner" + std::to_string(u)};
      const bool restricted = i == 0;
      v.label = restricted ? Label::Restricted : Label::Unrestricted;
      v.common_friends = restricted ? 0.0 : 30.0 + i;
      v.friend_friend_count = 100.0;
      dataset.vectors.push_back(v);
    }
  }
  ClassifierSpec spec;
  spec.family = Family::DecisionTree;
  spec.min_leaf = 2;
  const std::vector<std::size_t> k_list = {1};
  const PrecisionCurve curve = avg_users_precision_at_k(spec, dataset, k_list, 4);
  ASSERT_EQ(curve.points.size(), 1u);
  EXPECT_DOUBLE_EQ(curve.points[0].second, 1.0);
}

TEST(AvgUsersTest, ConstantScorerMatchesBaseRateOnAverage) {
  // With a constant scorer, ties keep input order, so precision@k equals the
  // base rate in expectation over label placements. Averaged over seeds.
  SplitMix64 rng(103);
  double sum = 0.0;
  const int repeats = 40;
  const std::size_t links_per_owner = 20;
  const std::size_t k = 5;
  for (int repeat = 0; repeat < repeats; ++repeat) {
    LabeledDataset dataset;
    for (int u = 0; u < 3; ++u) {
      for (std::size_t i = 0; i < links_per_owner; ++i) {
        FeatureVector v;
        v.owner = UserId{"o" + std::to_string(u)};
        v.label = rng.next_bernoulli(0.3) ? Label::Restricted
                                          : Label::Unrestricted;
        v.common_friends = 1.0;  // constant; nothing to learn
        dataset.vectors.push_back(v);
      }
    }
    std::size_t restricted = 0;
    for (const auto& v : dataset.vectors) {
      restricted += v.label == Label::Restricted ? 1 : 0;
    }
    if (restricted == 0 || restricted == dataset.vectors.size()) continue;
    ClassifierSpec spec;
    spec.family = Family::OneR;
    const std::vector<std::size_t> k_list = {k};
    const PrecisionCurve curve =
        avg_users_precision_at_k(spec, dataset, k_list, repeat);
    double expected = 0.0;
    int owners = 0;
    // Expected value: per-owner base rate among the first k by input order
    // is estimated by the owner's overall base rate; average over owners.
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_owner;
    for (const auto& v : dataset.vectors) {
      auto& [r, n] = per_owner[v.owner.value];
      r += v.label == Label::Restricted ? 1 : 0;
      n += 1;
    }
    for (const auto& [owner, pair] : per_owner) {
      expected += static_cast<double>(pair.first) / pair.second;
      ++owners;
    }
    expected /= owners;
    sum += curve.points[0].second - expected;
  }
  EXPECT_NEAR(sum / repeats, 0.0, 0.06);
}

TEST(CsAvgPrecisionTest, SingleUserLowestRestricted) {
  std::vector<LinkRecord> corpus;
  LinkRecord low = make_link("u", "a", LinkDisposition::RecommendedRestricted);
  LinkRecord high = make_link("u", "b");
  high.common_chat_messages = 50;
  corpus = {high, low};
  EXPECT_DOUBLE_EQ(cs_avg_precision(corpus, 1), 1.0);
}

TEST(CsAvgPrecisionTest, MeanOverUsers) {
  std::vector<LinkRecord> corpus;
  corpus.push_back(make_link("u", "a", LinkDisposition::RecommendedRestricted));
  corpus.push_back(make_link("v", "b", LinkDisposition::AllUnrestricted));
  EXPECT_DOUBLE_EQ(cs_avg_precision(corpus, 1), 0.5);
}

TEST(CsAvgPrecisionTest, MatchesBruteForceOnThreeUserFixture) {
  std::vector<LinkRecord> corpus;
  auto add = [&](const std::string& owner, const std::string& peer,
                 std::uint64_t chat, LinkDisposition d) {
    LinkRecord link = make_link(owner, peer, d);
    link.common_chat_messages = chat;
    corpus.push_back(link);
  };
  add("u1", "a", 0, LinkDisposition::RecommendedRestricted);
  add("u1", "b", 0, LinkDisposition::AllUnrestricted);  // tie with a
  add("u1", "c", 9, LinkDisposition::AllUnrestricted);
  add("u2", "a", 3, LinkDisposition::AlphabeticallyRestricted);
  add("u2", "b", 2, LinkDisposition::AllUnrestricted);
  add("u3", "a", 5, LinkDisposition::RecommendedUnrestricted);
  add("u3", "b", 7, LinkDisposition::RecommendedRestricted);
  for (std::size_t k = 1; k <= 2; ++k) {
    EXPECT_DOUBLE_EQ(cs_avg_precision(corpus, k),
                     testing::brute_force_cs_avg_precision(corpus, k));
  }
}

TEST(CsAvgPrecisionTest, MatchesBruteForceOnRandomCorpora) {
  SplitMix64 rng(107);
  for (int trial = 0; trial < 60; ++trial) {
    const auto corpus = testing::random_corpus(rng, 2 + rng.next_below(8), 20);
    const std::size_t k = 1 + rng.next_below(5);
    bool eligible = false;
    for (const auto& [owner, indices] : group_indices_by_owner(corpus)) {
      if (indices.size() >= k) eligible = true;
    }
    if (!eligible) continue;
    EXPECT_DOUBLE_EQ(cs_avg_precision(corpus, k),
                     testing::brute_force_cs_avg_precision(corpus, k));
  }
}

TEST(CsAvgPrecisionTest, NoEligibleUsersRejected) {
  std::vector<LinkRecord> corpus = {make_link("u", "a")};
  try {
    cs_avg_precision(corpus, 5);
    FAIL() << "expected NoEligibleUsers";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoEligibleUsers);
  }
}

TEST(CsValuePrecisionTest, AllRestrictedAtZero) {
  std::vector<LinkRecord> corpus = {
      make_link("u", "a", LinkDisposition::RecommendedRestricted),
      make_link("v", "b", LinkDisposition::AlphabeticallyRestricted)};
  const auto by_value = restriction_precision_by_cs_value(corpus);
  ASSERT_EQ(by_value.size(), 1u);
  EXPECT_DOUBLE_EQ(by_value.at(0), 1.0);
}

TEST(CsValuePrecisionTest, EmptyCorpusGivesEmptyMap) {
  EXPECT_TRUE(restriction_precision_by_cs_value(std::vector<LinkRecord>{})
                  .empty());
}

TEST(RankPositionTest, FirstPositionFractions) {
  std::vector<LinkRecord> corpus;
  for (int u = 0; u < 4; ++u) {
    const std::string owner = "u" + std::to_string(u);
    LinkRecord weak = make_link(
        owner, "weak", u < 3 ? LinkDisposition::RecommendedRestricted
                             : LinkDisposition::RecommendedUnrestricted);
    for (int i = 0; i < 9; ++i) {
      LinkRecord strong = make_link(owner, testing::padded("s", i));
      strong.common_chat_messages = 10 + i;
      corpus.push_back(strong);
    }
    corpus.push_back(weak);
  }
  const auto by_position = restriction_rate_by_rank_position(corpus);
  // Ten friends each: exactly one recommended position per user.
  ASSERT_EQ(by_position.size(), 1u);
  EXPECT_DOUBLE_EQ(by_position.at(1), 0.75);
}

}  // namespace
}  // namespace linktrust
