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
// CSV interchange for link records, privacy snapshots, and feature datasets.
// The dialect is deliberately minimal: no quoting, comma-free fields, one
// header row with exact column names.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "linktrust/core.hpp"
#include "linktrust/dataset.hpp"
#include "linktrust/features.hpp"

namespace linktrust {

namespace csv_detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

[[noreturn]] inline void malformed(std::size_t line_number,
                                   const std::string& reason) {
  throw Error(Errc::MalformedRow,
              "line " + std::to_string(line_number) + ": " + reason);
}

inline std::uint64_t parse_count(const std::string& field,
                                 std::size_t line_number,
                                 const char* column) {
  std::uint64_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    malformed(line_number,
              std::string("'") + field + "' is not a count in " + column);
  }
  return value;
}

inline double parse_double(const std::string& field, std::size_t line_number,
                           const char* column) {
  double value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    malformed(line_number,
              std::string("'") + field + "' is not a number in " + column);
  }
  return value;
}

inline std::string format_double(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

inline UserId parse_user_id(const std::string& field, std::size_t line_number,
                            const char* column) {
  if (field.empty()) {
    malformed(line_number, std::string("empty ") + column);
  }
  if (field.find_first_of(",\r\n") != std::string::npos) {
    malformed(line_number,
              std::string("identifier in ") + column + " contains a delimiter");
  }
  return UserId{field};
}

inline void expect_header(const std::string& actual, const char* expected) {
  if (actual != expected) {
    malformed(1, std::string("expected header '") + expected + "', got '" +
                     actual + "'");
  }
}

}  // namespace csv_detail

inline constexpr const char* kLinkCsvHeader =
    "owner,friend,are_family,common_chat_messages,common_friends,"
    "common_groups,common_posts,tagged_photos,tagged_videos,"
    "owner_friend_count,friend_friend_count,disposition";

inline std::vector<LinkRecord> parse_link_records(std::istream& input) {
  std::string line;
  if (!std::getline(input, line)) {
    csv_detail::malformed(1, "missing header row");
  }
  csv_detail::expect_header(csv_detail::strip_cr(line), kLinkCsvHeader);

  std::vector<LinkRecord> records;
  std::unordered_set<std::string> seen;
  std::size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    line = csv_detail::strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = csv_detail::split_fields(line);
    if (f.size() != 12) {
      csv_detail::malformed(line_number,
                            "expected 12 fields, got " +
                                std::to_string(f.size()));
    }
    LinkRecord record;
    record.owner = csv_detail::parse_user_id(f[0], line_number, "owner");
    record.friend_id = csv_detail::parse_user_id(f[1], line_number, "friend");
    if (f[2] == "0") {
      record.are_family = false;
    } else if (f[2] == "1") {
      record.are_family = true;
    } else {
      csv_detail::malformed(line_number, "are_family must be 0 or 1");
    }
    record.common_chat_messages =
        csv_detail::parse_count(f[3], line_number, "common_chat_messages");
    record.common_friends =
        csv_detail::parse_count(f[4], line_number, "common_friends");
    record.common_groups =
        csv_detail::parse_count(f[5], line_number, "common_groups");
    record.common_posts =
        csv_detail::parse_count(f[6], line_number, "common_posts");
    record.tagged_photos =
        csv_detail::parse_count(f[7], line_number, "tagged_photos");
    record.tagged_videos =
        csv_detail::parse_count(f[8], line_number, "tagged_videos");
    record.owner_friend_count =
        csv_detail::parse_count(f[9], line_number, "owner_friend_count");
    if (!f[10].empty()) {
      record.friend_friend_count =
          csv_detail::parse_count(f[10], line_number, "friend_friend_count");
    }
    const auto disposition = disposition_from_token(f[11]);
    if (!disposition) {
      csv_detail::malformed(line_number,
                            "unknown disposition '" + f[11] + "'");
    }
    record.disposition = *disposition;

    try {
      validate_link_record(record);
    } catch (const Error& e) {
      if (e.code() == Errc::SelfLink) throw;
      csv_detail::malformed(line_number, e.what());
    }
    const std::string key = record.owner.value + '\x1f' + record.friend_id.value;
    if (!seen.insert(key).second) {
      throw Error(Errc::DuplicateLink,
                  "line " + std::to_string(line_number) + ": link " +
                      record.owner.value + " -> " + record.friend_id.value +
                      " appears twice");
    }
    records.push_back(std::move(record));
  }
  return records;
}

inline void write_link_records(std::ostream& output,
                               std::span<const LinkRecord> records) {
  output << kLinkCsvHeader << '\n';
  for (const LinkRecord& r : records) {
    output << r.owner.value << ',' << r.friend_id.value << ','
           << (r.are_family ? '1' : '0') << ',' << r.common_chat_messages
           << ',' << r.common_friends << ',' << r.common_groups << ','
           << r.common_posts << ',' << r.tagged_photos << ','
           << r.tagged_videos << ',' << r.owner_friend_count << ',';
    if (r.friend_friend_count) output << *r.friend_friend_count;
    output << ',' << disposition_token(r.disposition) << '\n';
  }
}

inline constexpr const char* kSnapshotCsvHeader =
    "user,timestamp_iso8601,installed_app_count,default_privacy,lookup,"
    "share_address,send_messages,receive_friend_requests,tag_suggestions,"
    "view_birthday";

inline std::vector<PrivacySnapshot> parse_privacy_snapshots(
    std::istream& input) {
  std::string line;
  if (!std::getline(input, line)) {
    csv_detail::malformed(1, "missing header row");
  }
  csv_detail::expect_header(csv_detail::strip_cr(line), kSnapshotCsvHeader);

  std::vector<PrivacySnapshot> snapshots;
  std::size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    line = csv_detail::strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = csv_detail::split_fields(line);
    if (f.size() != 10) {
      csv_detail::malformed(line_number,
                            "expected 10 fields, got " +
                                std::to_string(f.size()));
    }
    PrivacySnapshot snapshot;
    snapshot.user = csv_detail::parse_user_id(f[0], line_number, "user");
    try {
      snapshot.timestamp = parse_iso8601_utc(f[1]);
    } catch (const Error& e) {
      csv_detail::malformed(line_number, e.what());
    }
    snapshot.installed_app_count =
        csv_detail::parse_count(f[2], line_number, "installed_app_count");
    AudienceLevel* fields[kAudienceSettingCount] = {
        &snapshot.default_privacy,         &snapshot.lookup,
        &snapshot.share_address,           &snapshot.send_messages,
        &snapshot.receive_friend_requests, &snapshot.tag_suggestions,
        &snapshot.view_birthday};
    for (int i = 0; i < kAudienceSettingCount; ++i) {
      const auto level = audience_from_token(f[3 + i]);
      if (!level) {
        csv_detail::malformed(line_number, "unknown audience '" + f[3 + i] +
                                               "' in " +
                                               audience_setting_name(i));
      }
      if (!audience_allowed_for_setting(i, *level)) {
        throw Error(Errc::IllegalAudience,
                    "line " + std::to_string(line_number) + ": '" + f[3 + i] +
                        "' is not a legal value for " +
                        audience_setting_name(i));
      }
      *fields[i] = *level;
    }
    snapshots.push_back(std::move(snapshot));
  }
  std::stable_sort(snapshots.begin(), snapshots.end(),
                   [](const PrivacySnapshot& a, const PrivacySnapshot& b) {
                     if (a.user != b.user) return a.user < b.user;
                     return a.timestamp < b.timestamp;
                   });
  return snapshots;
}

inline void write_privacy_snapshots(std::ostream& output,
                                    std::span<const PrivacySnapshot> snapshots) {
  output << kSnapshotCsvHeader << '\n';
  for (const PrivacySnapshot& s : snapshots) {
    output << s.user.value << ',' << format_iso8601_utc(s.timestamp) << ','
           << s.installed_app_count;
    for (int i = 0; i < kAudienceSettingCount; ++i) {
      output << ',' << audience_token(audience_setting(s, i));
    }
    output << '\n';
  }
}

inline std::string dataset_csv_header() {
  std::string header;
  for (const char* name : kFeatureNames) {
    header += name;
    header += ',';
  }
  header += "owner,label";
  return header;
}

inline void write_dataset_csv(std::ostream& output,
                              std::span<const FeatureVector> vectors) {
  output << dataset_csv_header() << '\n';
  for (const FeatureVector& v : vectors) {
    const auto row = v.to_row();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!std::isnan(row[i])) output << csv_detail::format_double(row[i]);
      output << ',';
    }
    output << v.owner.value << ',' << label_token(v.label) << '\n';
  }
}

inline std::vector<FeatureVector> read_dataset_csv(std::istream& input) {
  std::string line;
  if (!std::getline(input, line)) {
    csv_detail::malformed(1, "missing header row");
  }
  csv_detail::expect_header(csv_detail::strip_cr(line),
                            dataset_csv_header().c_str());

  std::vector<FeatureVector> vectors;
  std::size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    line = csv_detail::strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = csv_detail::split_fields(line);
    if (f.size() != kFeatureCount + 2) {
      csv_detail::malformed(line_number,
                            "expected " + std::to_string(kFeatureCount + 2) +
                                " fields, got " + std::to_string(f.size()));
    }
    FeatureVector v;
    double* slots[kFeatureCount] = {&v.are_family,
                                    &v.common_chat_messages,
                                    &v.common_friends,
                                    &v.common_groups,
                                    &v.common_posts,
                                    &v.tagged_photos,
                                    &v.tagged_videos,
                                    nullptr,  // friend_friend_count (optional)
                                    &v.chat_messages_ratio,
                                    &v.common_groups_ratio,
                                    &v.common_posts_ratio,
                                    &v.common_photos_ratio,
                                    &v.common_video_ratio,
                                    &v.is_friend_profile_private,
                                    &v.jaccard_coefficient};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      if (slots[i] == nullptr) {
        if (!f[i].empty()) {
          v.friend_friend_count =
              csv_detail::parse_double(f[i], line_number, kFeatureNames[i]);
        }
        continue;
      }
      *slots[i] = csv_detail::parse_double(f[i], line_number, kFeatureNames[i]);
    }
    v.owner = csv_detail::parse_user_id(f[kFeatureCount], line_number, "owner");
    const auto label = label_from_token(f[kFeatureCount + 1]);
    if (!label) {
      csv_detail::malformed(line_number,
                            "unknown label '" + f[kFeatureCount + 1] + "'");
    }
    v.label = *label;
    vectors.push_back(std::move(v));
  }
  return vectors;
}

}  // namespace linktrust
