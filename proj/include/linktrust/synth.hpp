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
// Seeded generation of a labeled link corpus. Per-link counters are Poisson
// draws around calibrated per-class means; dispositions couple the
// recommended-restricted set to actual bottom-10% Connection-Strength
// membership so the fake-profiles dataset semantics hold by construction.
#pragma once

#include <array>
#include <cstdio>
#include <iterator>
#include <string>
#include <thread>
#include <vector>

#include "linktrust/core.hpp"
#include "linktrust/heuristic.hpp"
#include "linktrust/rng.hpp"

namespace linktrust {

// Mean per-link counter values for one link class.
struct ClassMeans {
  double chat_messages = 0.0;
  double common_friends = 0.0;
  double common_groups = 0.0;
  double common_posts = 0.0;
  double tagged_photos = 0.0;
  double tagged_videos = 0.0;
  double friend_degree = 0.0;
};

enum class LinkClass {
  GenuineUnrestricted = 0,
  Fake = 1,
  GenuineRestricted = 2,
};

struct PopulationConfig {
  std::size_t n_users = 300;
  double friends_per_user = 138.0;
  double fake_fraction = 0.087;
  double alpha_restrict_fraction = 0.0425;
  ClassMeans means[3] = {
      // genuine unrestricted
      {30.86, 36.78, 0.689, 0.147, 0.3, 0.017, 703.31},
      // fake
      {0.02, 1.44, 0.028, 0.008, 0.004, 0.0, 627.31},
      // genuine restricted (alphabetical interface)
      {6.35, 19.8, 0.56, 0.069, 0.208, 0.007, 819.57},
  };
  double private_profile_prob[3] = {0.0981, 0.0587, 0.1079};
  double family_prob[3] = {9.0 / 138286.0, 0.0, 1.0 / 6145.0};
  std::uint64_t seed = 0;
};

inline void validate_config(const PopulationConfig& config) {
  auto fraction = [](double p) { return p >= 0.0 && p <= 1.0; };
  bool ok = config.n_users >= 1 && config.friends_per_user > 0.0 &&
            fraction(config.fake_fraction) &&
            fraction(config.alpha_restrict_fraction);
  for (int c = 0; c < 3 && ok; ++c) {
    const ClassMeans& m = config.means[c];
    ok = m.chat_messages >= 0 && m.common_friends >= 0 &&
         m.common_groups >= 0 && m.common_posts >= 0 && m.tagged_photos >= 0 &&
         m.tagged_videos >= 0 && m.friend_degree >= 0 &&
         fraction(config.private_profile_prob[c]) &&
         fraction(config.family_prob[c]);
  }
  if (!ok) {
    throw Error(Errc::InvalidConfig,
                "population config has an out-of-range value");
  }
}

// A generated corpus plus the latent class of every link, aligned by index.
// The classes are not part of the interchange format; they exist so that
// calibration checks can condition on the exact generative class.
struct PopulationSample {
  std::vector<LinkRecord> links;
  std::vector<LinkClass> classes;
};

namespace synth_detail {

inline std::string padded_id(const char* prefix, std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s%06zu", prefix, index);
  return buffer;
}

inline void generate_user(const PopulationConfig& config, std::size_t user,
                          PopulationSample& out) {
  SplitMix64 rng(derive_seed(config.seed, user));
  const std::size_t n =
      std::max<std::uint64_t>(1, rng.next_poisson(config.friends_per_user));
  const UserId owner{synth_detail::padded_id("u", user)};

  std::vector<LinkClass> classes(n);
  std::vector<LinkRecord> links(n);
  for (std::size_t j = 0; j < n; ++j) {
    LinkClass link_class;
    if (rng.next_bernoulli(config.fake_fraction)) {
      link_class = LinkClass::Fake;
    } else if (rng.next_bernoulli(config.alpha_restrict_fraction)) {
      link_class = LinkClass::GenuineRestricted;
    } else {
      link_class = LinkClass::GenuineUnrestricted;
    }
    classes[j] = link_class;
    const int c = static_cast<int>(link_class);
    const ClassMeans& means = config.means[c];

    LinkRecord link;
    link.owner = owner;
    link.friend_id = UserId{owner.value + "_f" + padded_id("", j)};
    link.are_family = rng.next_bernoulli(config.family_prob[c]);
    link.common_chat_messages = rng.next_poisson(means.chat_messages);
    link.common_friends = rng.next_poisson(means.common_friends);
    link.common_groups = rng.next_poisson(means.common_groups);
    link.common_posts = rng.next_poisson(means.common_posts);
    link.tagged_photos = rng.next_poisson(means.tagged_photos);
    link.tagged_videos = rng.next_poisson(means.tagged_videos);
    link.owner_friend_count = n;
    if (!rng.next_bernoulli(config.private_profile_prob[c])) {
      link.friend_friend_count = rng.next_poisson(means.friend_degree);
    }
    // Counter draws are independent; keep the subset invariant intact.
    link.common_friends =
        std::min<std::uint64_t>(link.common_friends, link.owner_friend_count);
    if (link.friend_friend_count) {
      link.common_friends =
          std::min<std::uint64_t>(link.common_friends, *link.friend_friend_count);
    }
    links[j] = std::move(link);
  }

  // Bottom-10% membership drives the recommended dispositions.
  const std::vector<ScoredFriend> recommended = recommend_restrictions(links);
  std::vector<bool> in_bottom(n, false);
  for (const ScoredFriend& entry : recommended) {
    for (std::size_t j = 0; j < n; ++j) {
      if (links[j].friend_id == entry.friend_id) {
        in_bottom[j] = true;
        break;
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    switch (classes[j]) {
      case LinkClass::Fake:
        if (in_bottom[j]) {
          links[j].disposition = LinkDisposition::RecommendedRestricted;
        } else {
          links[j].disposition = rng.next_bernoulli(0.5)
                                     ? LinkDisposition::RecommendedUnrestricted
                                     : LinkDisposition::AllUnrestricted;
        }
        break;
      case LinkClass::GenuineRestricted:
        links[j].disposition = LinkDisposition::AlphabeticallyRestricted;
        break;
      case LinkClass::GenuineUnrestricted:
        links[j].disposition = LinkDisposition::AllUnrestricted;
        break;
    }
  }
  out.links.insert(out.links.end(), std::make_move_iterator(links.begin()),
                   std::make_move_iterator(links.end()));
  out.classes.insert(out.classes.end(), classes.begin(), classes.end());
}

}  // namespace synth_detail

// Deterministic under the config seed; per-user streams are derived, so any
// worker count produces the same corpus.
inline PopulationSample generate_population_with_classes(
    const PopulationConfig& config, int threads = 1) {
  validate_config(config);
  std::vector<PopulationSample> per_user(config.n_users);
  if (threads <= 1) {
    for (std::size_t u = 0; u < config.n_users; ++u) {
      synth_detail::generate_user(config, u, per_user[u]);
    }
  } else {
    std::vector<std::thread> pool;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads),
                              config.n_users);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t u = w; u < config.n_users; u += workers) {
          synth_detail::generate_user(config, u, per_user[u]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  PopulationSample sample;
  for (PopulationSample& part : per_user) {
    sample.links.insert(sample.links.end(),
                        std::make_move_iterator(part.links.begin()),
                        std::make_move_iterator(part.links.end()));
    sample.classes.insert(sample.classes.end(), part.classes.begin(),
                          part.classes.end());
  }
  return sample;
}

inline std::vector<LinkRecord> generate_population(
    const PopulationConfig& config, int threads = 1) {
  return generate_population_with_classes(config, threads).links;
}

}  // namespace linktrust
