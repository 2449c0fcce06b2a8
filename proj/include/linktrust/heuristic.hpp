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
#include <cstdint>
#include <span>
#include <vector>

#include "linktrust/core.hpp"

namespace linktrust {

// Connection-Strength: common friends and chat messages at weight 1, the
// remaining interaction counters at weight 2, and a dominating family term.
inline std::uint64_t connection_strength(const LinkRecord& link) noexcept {
  return link.common_friends + link.common_chat_messages +
         2 * link.common_groups + 2 * link.common_posts +
         2 * link.tagged_photos + 2 * link.tagged_videos +
         (link.are_family ? 1000u : 0u);
}

struct ScoredFriend {
  UserId friend_id;
  std::uint64_t score = 0;
  std::size_t rank_position = 0;  // 1-based, ascending by score
};

namespace detail {

inline void require_single_owner(std::span<const LinkRecord> links) {
  if (links.empty()) {
    throw Error(Errc::InvalidArgument, "no links given");
  }
  for (const LinkRecord& link : links) {
    if (link.owner != links.front().owner) {
      throw Error(Errc::MixedOwners,
                  "links of '" + links.front().owner.value + "' mixed with '" +
                      link.owner.value + "'");
    }
  }
}

}  // namespace detail

// Ranks one owner's friends ascending by score, weakest ties first. Ties are
// broken by friend id so rankings are reproducible. The weakest-looking
// links surface at the top of the list.
inline std::vector<ScoredFriend> rank_friends(
    std::span<const LinkRecord> links) {
  detail::require_single_owner(links);
  std::vector<ScoredFriend> ranked;
  ranked.reserve(links.size());
  for (const LinkRecord& link : links) {
    ranked.push_back(ScoredFriend{link.friend_id, connection_strength(link), 0});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredFriend& a, const ScoredFriend& b) {
              if (a.score != b.score) return a.score < b.score;
              return a.friend_id < b.friend_id;
            });
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    ranked[i].rank_position = i + 1;
  }
  return ranked;
}

// Number of restriction recommendations for n friends: ceil(n / 10), so a
// non-empty list always yields at least one.
inline std::size_t recommendation_count(std::size_t n) {
  return (n + 9) / 10;
}

// The lowest-scored 10% of one owner's friends, the set presented for
// restriction.
inline std::vector<ScoredFriend> recommend_restrictions(
    std::span<const LinkRecord> links) {
  std::vector<ScoredFriend> ranked = rank_friends(links);
  ranked.resize(recommendation_count(links.size()));
  return ranked;
}

}  // namespace linktrust
