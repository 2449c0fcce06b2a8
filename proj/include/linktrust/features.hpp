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

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linktrust/core.hpp"

namespace linktrust {

// Per-owner denominators for the ratio features.
struct UserAggregates {
  UserId owner;
  std::uint64_t total_chat_messages = 0;
  std::uint64_t max_common_groups = 0;
  std::uint64_t total_posts = 0;
  std::uint64_t total_tagged_photos = 0;
  std::uint64_t total_tagged_videos = 0;
};

inline UserAggregates compute_user_aggregates(
    std::span<const LinkRecord> links) {
  if (links.empty()) {
    throw Error(Errc::InvalidArgument, "no links given");
  }
  UserAggregates agg;
  agg.owner = links.front().owner;
  for (const LinkRecord& link : links) {
    if (link.owner != agg.owner) {
      throw Error(Errc::MixedOwners, "links of '" + agg.owner.value +
                                         "' mixed with '" + link.owner.value +
                                         "'");
    }
    agg.total_chat_messages += link.common_chat_messages;
    agg.max_common_groups = std::max(agg.max_common_groups, link.common_groups);
    agg.total_posts += link.common_posts;
    agg.total_tagged_photos += link.tagged_photos;
    agg.total_tagged_videos += link.tagged_videos;
  }
  return agg;
}

enum class Label { Unrestricted = 0, Restricted = 1 };

inline const char* label_token(Label label) {
  return label == Label::Restricted ? "restricted" : "unrestricted";
}

inline std::optional<Label> label_from_token(const std::string& token) {
  if (token == "restricted") return Label::Restricted;
  if (token == "unrestricted") return Label::Unrestricted;
  return std::nullopt;
}

inline constexpr std::size_t kFeatureCount = 15;

inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "are_family",
    "common_chat_messages",
    "common_friends",
    "common_groups",
    "common_posts",
    "tagged_photos",
    "tagged_videos",
    "friend_friend_count",
    "chat_messages_ratio",
    "common_groups_ratio",
    "common_posts_ratio",
    "common_photos_ratio",
    "common_video_ratio",
    "is_friend_profile_private",
    "jaccard_coefficient",
};

// The 15 numeric features of one link plus its label and owner. Missing
// friend_friend_count stays missing here; imputation is a model concern.
struct FeatureVector {
  double are_family = 0;
  double common_chat_messages = 0;
  double common_friends = 0;
  double common_groups = 0;
  double common_posts = 0;
  double tagged_photos = 0;
  double tagged_videos = 0;
  std::optional<double> friend_friend_count;
  double chat_messages_ratio = 0;
  double common_groups_ratio = 0;
  double common_posts_ratio = 0;
  double common_photos_ratio = 0;
  double common_video_ratio = 0;
  double is_friend_profile_private = 0;
  double jaccard_coefficient = 0;
  Label label = Label::Unrestricted;
  UserId owner;

  // Dense row in canonical feature order; absent values become NaN.
  std::array<double, kFeatureCount> to_row() const {
    return {are_family,
            common_chat_messages,
            common_friends,
            common_groups,
            common_posts,
            tagged_photos,
            tagged_videos,
            friend_friend_count ? *friend_friend_count
                                : std::numeric_limits<double>::quiet_NaN(),
            chat_messages_ratio,
            common_groups_ratio,
            common_posts_ratio,
            common_photos_ratio,
            common_video_ratio,
            is_friend_profile_private,
            jaccard_coefficient};
  }
};

namespace detail {

inline double ratio_or_zero(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) return 0.0;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

}  // namespace detail

// Ratio features use the owner's aggregates as denominators; a zero
// denominator yields 0. Jaccard falls back to 0 when the friend's degree is
// unobservable, with is_friend_profile_private carrying that signal.
inline FeatureVector extract_features(const LinkRecord& link,
                                      const UserAggregates& agg) {
  if (agg.owner != link.owner) {
    throw Error(Errc::AggregateMismatch,
                "aggregates of '" + agg.owner.value + "' used for a link of '" +
                    link.owner.value + "'");
  }
  if (link.common_chat_messages > agg.total_chat_messages ||
      link.common_groups > agg.max_common_groups ||
      link.common_posts > agg.total_posts ||
      link.tagged_photos > agg.total_tagged_photos ||
      link.tagged_videos > agg.total_tagged_videos) {
    throw Error(Errc::AggregateMismatch,
                "aggregate smaller than a per-link value for '" +
                    link.owner.value + "'");
  }

  FeatureVector v;
  v.are_family = link.are_family ? 1.0 : 0.0;
  v.common_chat_messages = static_cast<double>(link.common_chat_messages);
  v.common_friends = static_cast<double>(link.common_friends);
  v.common_groups = static_cast<double>(link.common_groups);
  v.common_posts = static_cast<double>(link.common_posts);
  v.tagged_photos = static_cast<double>(link.tagged_photos);
  v.tagged_videos = static_cast<double>(link.tagged_videos);
  if (link.friend_friend_count) {
    v.friend_friend_count = static_cast<double>(*link.friend_friend_count);
  }
  v.chat_messages_ratio =
      detail::ratio_or_zero(link.common_chat_messages, agg.total_chat_messages);
  v.common_groups_ratio =
      detail::ratio_or_zero(link.common_groups, agg.max_common_groups);
  v.common_posts_ratio =
      detail::ratio_or_zero(link.common_posts, agg.total_posts);
  v.common_photos_ratio =
      detail::ratio_or_zero(link.tagged_photos, agg.total_tagged_photos);
  v.common_video_ratio =
      detail::ratio_or_zero(link.tagged_videos, agg.total_tagged_videos);
  v.is_friend_profile_private =
      (!link.friend_friend_count && link.common_friends > 0) ? 1.0 : 0.0;
  if (link.friend_friend_count) {
    const double denominator =
        static_cast<double>(link.owner_friend_count) +
        static_cast<double>(*link.friend_friend_count) -
        static_cast<double>(link.common_friends);
    v.jaccard_coefficient =
        denominator > 0
            ? static_cast<double>(link.common_friends) / denominator
            : 0.0;
  }
  v.label = is_restricted(link.disposition) ? Label::Restricted
                                            : Label::Unrestricted;
  v.owner = link.owner;
  return v;
}

// Owner -> indices into the corpus, input order preserved within an owner.
inline std::map<UserId, std::vector<std::size_t>> group_indices_by_owner(
    std::span<const LinkRecord> corpus) {
  std::map<UserId, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    groups[corpus[i].owner].push_back(i);
  }
  return groups;
}

// Feature vectors for a whole corpus, aligned with the corpus order.
inline std::vector<FeatureVector> extract_all_features(
    std::span<const LinkRecord> corpus) {
  std::vector<FeatureVector> vectors(corpus.size());
  for (const auto& [owner, indices] : group_indices_by_owner(corpus)) {
    std::vector<LinkRecord> links;
    links.reserve(indices.size());
    for (std::size_t i : indices) links.push_back(corpus[i]);
    const UserAggregates agg = compute_user_aggregates(links);
    for (std::size_t j = 0; j < indices.size(); ++j) {
      vectors[indices[j]] = extract_features(links[j], agg);
    }
  }
  return vectors;
}

}  // namespace linktrust
