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
// JSON-over-HTTP scoring service with a bounded in-memory LRU result cache.
// The cache only memoizes: a hit returns the stored body with cache_hit set.
#pragma once

#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "linktrust/classifier/suite.hpp"
#include "linktrust/features.hpp"
#include "linktrust/heuristic.hpp"

namespace linktrust {

template <typename Value>
class LruCache {
 public:
  explicit LruCache(std::size_t capacity) : capacity_(capacity) {}

  std::optional<Value> get(const std::string& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    order_.splice(order_.begin(), order_, it->second);
    return it->second->second;
  }

  void put(const std::string& key, Value value) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(key);
    if (it != index_.end()) {
      it->second->second = std::move(value);
      order_.splice(order_.begin(), order_, it->second);
      return;
    }
    order_.emplace_front(key, std::move(value));
    index_[key] = order_.begin();
    if (index_.size() > capacity_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return index_.size();
  }

 private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<std::pair<std::string, Value>> order_;
  std::unordered_map<std::string,
                     typename std::list<std::pair<std::string, Value>>::iterator>
      index_;
};

inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

// Parses one /score request body into link records. Throws Error for
// invariant violations (mapped to 422) and nlohmann exceptions for malformed
// JSON (mapped to 400).
inline std::vector<LinkRecord> parse_score_request(const OrderedJson& body,
                                                   UserId& owner,
                                                   bool& with_probabilities) {
  owner = UserId{body.at("owner").get<std::string>()};
  if (owner.empty()) {
    throw Error(Errc::InvalidArgument, "owner must be non-empty");
  }
  with_probabilities = body.value("with_probabilities", false);
  const auto& links = body.at("links");
  if (!links.is_array() || links.empty()) {
    throw Error(Errc::InvalidArgument, "links must be a non-empty array");
  }
  std::vector<LinkRecord> records;
  records.reserve(links.size());
  std::unordered_map<std::string, bool> seen;
  for (const auto& entry : links) {
    LinkRecord record;
    record.owner = owner;
    record.friend_id = UserId{entry.at("friend").get<std::string>()};
    record.are_family = entry.value("are_family", 0) != 0;
    record.common_chat_messages =
        entry.value("common_chat_messages", std::uint64_t{0});
    record.common_friends = entry.value("common_friends", std::uint64_t{0});
    record.common_groups = entry.value("common_groups", std::uint64_t{0});
    record.common_posts = entry.value("common_posts", std::uint64_t{0});
    record.tagged_photos = entry.value("tagged_photos", std::uint64_t{0});
    record.tagged_videos = entry.value("tagged_videos", std::uint64_t{0});
    record.owner_friend_count =
        entry.value("owner_friend_count", static_cast<std::uint64_t>(links.size()));
    if (entry.contains("friend_friend_count") &&
        !entry.at("friend_friend_count").is_null()) {
      record.friend_friend_count =
          entry.at("friend_friend_count").get<std::uint64_t>();
    }
    validate_link_record(record);
    if (seen[record.friend_id.value]) {
      throw Error(Errc::DuplicateLink,
                  "friend '" + record.friend_id.value + "' appears twice");
    }
    seen[record.friend_id.value] = true;
    records.push_back(std::move(record));
  }
  return records;
}

class ScoringService {
 public:
  explicit ScoringService(std::optional<ClassifierModel> model = std::nullopt,
                          std::size_t cache_capacity = 10000)
      : model_(std::move(model)), cache_(cache_capacity) {
    server_.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("{\"status\":\"ok\"}", "application/json");
    });
    server_.Post("/score",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   handle_score(req, res);
                 });
  }

  // Binds to an OS-assigned port and serves until stop(); returns the port.
  int bind_any(const std::string& host) {
    return server_.bind_to_any_port(host.c_str());
  }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  bool listen(const std::string& host, int port) {
    return server_.listen(host.c_str(), port);
  }
  void stop() { server_.stop(); }
  bool is_running() const { return server_.is_running(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

  // Scores one request body; exposed for in-process use and tests.
  OrderedJson score(const OrderedJson& body) {
    UserId owner;
    bool with_probabilities = false;
    std::vector<LinkRecord> records =
        parse_score_request(body, owner, with_probabilities);
    if (with_probabilities && !model_) {
      throw Error(Errc::InvalidConfig, "no model loaded");
    }

    const std::string key = cache_key(owner, records, with_probabilities);
    if (auto cached = cache_.get(key)) {
      OrderedJson response = *cached;
      response["cache_hit"] = true;
      return response;
    }

    OrderedJson response;
    response["owner"] = owner.value;
    const std::vector<ScoredFriend> ranked = rank_friends(records);
    const std::size_t recommended = recommendation_count(records.size());
    OrderedJson ranked_json = OrderedJson::array();
    for (const ScoredFriend& entry : ranked) {
      ranked_json.push_back({{"friend", entry.friend_id.value},
                             {"score", entry.score},
                             {"rank_position", entry.rank_position}});
    }
    response["ranked"] = ranked_json;
    OrderedJson recommended_json = OrderedJson::array();
    for (std::size_t i = 0; i < recommended; ++i) {
      recommended_json.push_back(ranked_json[i]);
    }
    response["recommended"] = std::move(recommended_json);
    if (with_probabilities) {
      const UserAggregates aggregates = compute_user_aggregates(records);
      OrderedJson probabilities;
      for (const LinkRecord& record : records) {
        probabilities[record.friend_id.value] =
            model_->predict_proba(extract_features(record, aggregates));
      }
      response["probabilities"] = std::move(probabilities);
    }
    cache_.put(key, response);
    response["cache_hit"] = false;
    return response;
  }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  static std::string cache_key(const UserId& owner,
                               const std::vector<LinkRecord>& records,
                               bool with_probabilities) {
    std::string canonical;
    for (const LinkRecord& r : records) {
      canonical += r.friend_id.value;
      canonical += '|';
      for (std::uint64_t v :
           {static_cast<std::uint64_t>(r.are_family), r.common_chat_messages,
            r.common_friends, r.common_groups, r.common_posts, r.tagged_photos,
            r.tagged_videos, r.owner_friend_count,
            r.friend_friend_count ? *r.friend_friend_count + 1 : 0}) {
        canonical += std::to_string(v);
        canonical += ',';
      }
      canonical += ';';
    }
    char digest[32];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    return owner.value + (with_probabilities ? "#p#" : "#h#") + digest;
  }

  void handle_score(const httplib::Request& req, httplib::Response& res) {
    OrderedJson body;
    try {
      body = OrderedJson::parse(req.body);
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(OrderedJson{{"error", e.what()}}.dump(),
                      "application/json");
      return;
    }
    try {
      const OrderedJson response = score(body);
      res.set_content(response.dump(), "application/json");
    } catch (const Error& e) {
      res.status = e.code() == Errc::InvalidConfig ? 503 : 422;
      res.set_content(OrderedJson{{"error", e.what()}}.dump(),
                      "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(OrderedJson{{"error", e.what()}}.dump(),
                      "application/json");
    }
  }

  std::optional<ClassifierModel> model_;
  LruCache<OrderedJson> cache_;
  httplib::Server server_;
};

}  // namespace linktrust
