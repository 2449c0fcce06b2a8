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

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace linktrust {

enum class Errc {
  MalformedRow,
  DuplicateLink,
  SelfLink,
  IllegalAudience,
  MixedOwners,
  AggregateMismatch,
  NoPositives,
  EmptyTrainingSet,
  ArityMismatch,
  EmptyDataset,
  SingleClass,
  LengthMismatch,
  TooFewInstances,
  KExceedsTestSize,
  TooFewOwners,
  NoEligibleUsers,
  InvalidConfig,
  InvalidArgument,
  IoError,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::DuplicateLink: return "DuplicateLink";
    case Errc::SelfLink: return "SelfLink";
    case Errc::IllegalAudience: return "IllegalAudience";
    case Errc::MixedOwners: return "MixedOwners";
    case Errc::AggregateMismatch: return "AggregateMismatch";
    case Errc::NoPositives: return "NoPositives";
    case Errc::EmptyTrainingSet: return "EmptyTrainingSet";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::SingleClass: return "SingleClass";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TooFewInstances: return "TooFewInstances";
    case Errc::KExceedsTestSize: return "KExceedsTestSize";
    case Errc::TooFewOwners: return "TooFewOwners";
    case Errc::NoEligibleUsers: return "NoEligibleUsers";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

// All failures surface as Error; code() is stable and machine-parsable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

struct UserId {
  std::string value;

  bool empty() const { return value.empty(); }
  auto operator<=>(const UserId&) const = default;
};

enum class LinkDisposition {
  AllUnrestricted = 0,
  RecommendedUnrestricted = 1,
  RecommendedRestricted = 2,
  AlphabeticallyRestricted = 3,
};

inline constexpr int kDispositionCount = 4;

inline const char* disposition_token(LinkDisposition d) {
  switch (d) {
    case LinkDisposition::AllUnrestricted: return "all_unrestricted";
    case LinkDisposition::RecommendedUnrestricted:
      return "recommended_unrestricted";
    case LinkDisposition::RecommendedRestricted:
      return "recommended_restricted";
    case LinkDisposition::AlphabeticallyRestricted:
      return "alphabetically_restricted";
  }
  return "";
}

inline std::optional<LinkDisposition> disposition_from_token(
    const std::string& token) {
  if (token == "all_unrestricted") return LinkDisposition::AllUnrestricted;
  if (token == "recommended_unrestricted")
    return LinkDisposition::RecommendedUnrestricted;
  if (token == "recommended_restricted")
    return LinkDisposition::RecommendedRestricted;
  if (token == "alphabetically_restricted")
    return LinkDisposition::AlphabeticallyRestricted;
  return std::nullopt;
}

// Ground-truth label rule: a link counts as restricted when the user acted
// on it through either restriction interface.
inline bool is_restricted(LinkDisposition d) {
  return d == LinkDisposition::RecommendedRestricted ||
         d == LinkDisposition::AlphabeticallyRestricted;
}

// Raw per-link interaction counters between an owner and one friend.
// friend_friend_count is absent when the friend's list was unobservable.
struct LinkRecord {
  UserId owner;
  UserId friend_id;
  bool are_family = false;
  std::uint64_t common_chat_messages = 0;
  std::uint64_t common_friends = 0;
  std::uint64_t common_groups = 0;
  std::uint64_t common_posts = 0;
  std::uint64_t tagged_photos = 0;
  std::uint64_t tagged_videos = 0;
  std::uint64_t owner_friend_count = 1;
  std::optional<std::uint64_t> friend_friend_count;
  LinkDisposition disposition = LinkDisposition::AllUnrestricted;
};

// Throws on any type-invariant violation. Used by the CSV parser and the
// scoring service; in-process producers are expected to construct valid
// records directly.
inline void validate_link_record(const LinkRecord& record) {
  if (record.owner.empty() || record.friend_id.empty()) {
    throw Error(Errc::MalformedRow, "empty user identifier");
  }
  if (record.owner == record.friend_id) {
    throw Error(Errc::SelfLink,
                "link from '" + record.owner.value + "' to itself");
  }
  if (record.owner_friend_count < 1) {
    throw Error(Errc::MalformedRow, "owner_friend_count must be >= 1");
  }
  if (record.common_friends > record.owner_friend_count) {
    throw Error(Errc::MalformedRow,
                "common_friends exceeds owner_friend_count");
  }
  if (record.friend_friend_count &&
      record.common_friends > *record.friend_friend_count) {
    throw Error(Errc::MalformedRow,
                "common_friends exceeds friend_friend_count");
  }
}

enum class AudienceLevel {
  Everyone = 0,
  Friends = 1,
  FriendsOfFriends = 2,
  NoOne = 3,
  Custom = 4,
};

inline const char* audience_token(AudienceLevel level) {
  switch (level) {
    case AudienceLevel::Everyone: return "everyone";
    case AudienceLevel::Friends: return "friends";
    case AudienceLevel::FriendsOfFriends: return "friends_of_friends";
    case AudienceLevel::NoOne: return "no_one";
    case AudienceLevel::Custom: return "custom";
  }
  return "";
}

inline std::optional<AudienceLevel> audience_from_token(
    const std::string& token) {
  if (token == "everyone") return AudienceLevel::Everyone;
  if (token == "friends") return AudienceLevel::Friends;
  if (token == "friends_of_friends") return AudienceLevel::FriendsOfFriends;
  if (token == "no_one") return AudienceLevel::NoOne;
  if (token == "custom") return AudienceLevel::Custom;
  return std::nullopt;
}

// One timestamped observation of a user's installed-app count and the seven
// audience-valued privacy settings.
struct PrivacySnapshot {
  UserId user;
  std::int64_t timestamp = 0;  // seconds since the Unix epoch, UTC
  std::uint64_t installed_app_count = 0;
  AudienceLevel default_privacy = AudienceLevel::Everyone;
  AudienceLevel lookup = AudienceLevel::Everyone;
  AudienceLevel share_address = AudienceLevel::Everyone;
  AudienceLevel send_messages = AudienceLevel::Everyone;
  AudienceLevel receive_friend_requests = AudienceLevel::Everyone;
  AudienceLevel tag_suggestions = AudienceLevel::Friends;
  AudienceLevel view_birthday = AudienceLevel::FriendsOfFriends;
};

inline constexpr int kAudienceSettingCount = 7;

inline const char* audience_setting_name(int index) {
  switch (index) {
    case 0: return "default_privacy";
    case 1: return "lookup";
    case 2: return "share_address";
    case 3: return "send_messages";
    case 4: return "receive_friend_requests";
    case 5: return "tag_suggestions";
    case 6: return "view_birthday";
  }
  return "";
}

inline AudienceLevel audience_setting(const PrivacySnapshot& s, int index) {
  switch (index) {
    case 0: return s.default_privacy;
    case 1: return s.lookup;
    case 2: return s.share_address;
    case 3: return s.send_messages;
    case 4: return s.receive_friend_requests;
    case 5: return s.tag_suggestions;
    case 6: return s.view_birthday;
  }
  throw Error(Errc::InvalidArgument, "setting index out of range");
}

// Per-setting allowed audiences; anything else is an IllegalAudience error.
inline bool audience_allowed_for_setting(int index, AudienceLevel level) {
  switch (index) {
    case 0:  // default_privacy
      return level == AudienceLevel::Everyone ||
             level == AudienceLevel::Friends || level == AudienceLevel::Custom;
    case 1:  // lookup
    case 2:  // share_address
    case 3:  // send_messages
    case 6:  // view_birthday
      return level == AudienceLevel::Everyone ||
             level == AudienceLevel::Friends ||
             level == AudienceLevel::FriendsOfFriends;
    case 4:  // receive_friend_requests: limited to two values
      return level == AudienceLevel::Everyone ||
             level == AudienceLevel::FriendsOfFriends;
    case 5:  // tag_suggestions
      return level == AudienceLevel::NoOne || level == AudienceLevel::Friends;
  }
  return false;
}

inline void validate_privacy_snapshot(const PrivacySnapshot& snapshot) {
  if (snapshot.user.empty()) {
    throw Error(Errc::MalformedRow, "empty user identifier");
  }
  for (int i = 0; i < kAudienceSettingCount; ++i) {
    const AudienceLevel level = audience_setting(snapshot, i);
    if (!audience_allowed_for_setting(i, level)) {
      throw Error(Errc::IllegalAudience,
                  std::string("'") + audience_token(level) +
                      "' is not a legal value for " + audience_setting_name(i));
    }
  }
}

// --- Civil-time helpers (UTC only, proleptic Gregorian) ---

inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 +
         static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = static_cast<int>(yr + (m <= 2));
}

inline std::string format_iso8601_utc(std::int64_t timestamp) {
  std::int64_t days = timestamp / 86400;
  std::int64_t rem = timestamp % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m,
                d, static_cast<int>(rem / 3600),
                static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
  return buffer;
}

// Strict "YYYY-MM-DDTHH:MM:SSZ"; rejects non-canonical dates by round trip.
inline std::int64_t parse_iso8601_utc(const std::string& text) {
  int y, mo, d, h, mi, s;
  char tail = 0;
  if (text.size() != 20 ||
      std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h,
                  &mi, &s, &tail) != 7 ||
      tail != 'Z' || mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 ||
      mi < 0 || mi > 59 || s < 0 || s > 59) {
    throw Error(Errc::MalformedRow, "bad ISO-8601 timestamp '" + text + "'");
  }
  const std::int64_t timestamp =
      days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
  if (format_iso8601_utc(timestamp) != text) {
    throw Error(Errc::MalformedRow, "bad ISO-8601 timestamp '" + text + "'");
  }
  return timestamp;
}

}  // namespace linktrust

template <>
struct std::hash<linktrust::UserId> {
  std::size_t operator()(const linktrust::UserId& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};
