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
// Reports over privacy-snapshot streams: installed-app statistics, day-after
// removal behaviour, install rates, settings distributions and
// settings-change detection. All reports are pure functions of the snapshot
// multiset.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "linktrust/core.hpp"

namespace linktrust {

namespace privacy_detail {

inline std::vector<PrivacySnapshot> sorted_snapshots(
    std::span<const PrivacySnapshot> snapshots) {
  std::vector<PrivacySnapshot> sorted(snapshots.begin(), snapshots.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const PrivacySnapshot& a, const PrivacySnapshot& b) {
                     if (a.user != b.user) return a.user < b.user;
                     return a.timestamp < b.timestamp;
                   });
  return sorted;
}

// Ranges of one user's snapshots within the sorted vector.
inline std::vector<std::pair<std::size_t, std::size_t>> user_ranges(
    const std::vector<PrivacySnapshot>& sorted) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || sorted[i].user != sorted[start].user) {
      ranges.emplace_back(start, i);
      start = i;
    }
  }
  return ranges;
}

}  // namespace privacy_detail

struct AppCountSummary {
  std::size_t users = 0;
  double mean_first_count = 0.0;
  // Width-10 buckets [0,10), [10,20), ..., [90,100), then 100 and above.
  std::array<std::size_t, 11> histogram{};
  std::vector<std::uint64_t> first_counts;  // sorted ascending

  double fraction_less(std::uint64_t n) const {
    const std::size_t count =
        std::lower_bound(first_counts.begin(), first_counts.end(), n) -
        first_counts.begin();
    return static_cast<double>(count) / static_cast<double>(users);
  }
  double fraction_at_least(std::uint64_t n) const {
    return 1.0 - fraction_less(n);
  }
  double fraction_greater(std::uint64_t n) const {
    const std::size_t count =
        std::upper_bound(first_counts.begin(), first_counts.end(), n) -
        first_counts.begin();
    return 1.0 - static_cast<double>(count) / static_cast<double>(users);
  }
};

// Installed-app statistics over each user's first observed snapshot.
inline AppCountSummary app_count_summary(
    std::span<const PrivacySnapshot> snapshots) {
  if (snapshots.empty()) {
    throw Error(Errc::EmptyDataset, "no snapshots given");
  }
  const auto sorted = privacy_detail::sorted_snapshots(snapshots);
  AppCountSummary summary;
  double sum = 0.0;
  for (const auto& [begin, end] : privacy_detail::user_ranges(sorted)) {
    const std::uint64_t first = sorted[begin].installed_app_count;
    summary.first_counts.push_back(first);
    sum += static_cast<double>(first);
    const std::size_t bucket =
        first >= 100 ? 10 : static_cast<std::size_t>(first / 10);
    summary.histogram[bucket] += 1;
  }
  summary.users = summary.first_counts.size();
  summary.mean_first_count = sum / static_cast<double>(summary.users);
  std::sort(summary.first_counts.begin(), summary.first_counts.end());
  return summary;
}

enum class DayAfterOutcome { Removed, Added, Unchanged };

struct DayAfterReport {
  struct Entry {
    UserId user;
    std::uint64_t first_count = 0;
    std::uint64_t day_after_count = 0;
    DayAfterOutcome outcome = DayAfterOutcome::Unchanged;
    std::uint64_t removed = 0;
    std::uint64_t added = 0;
    double removal_ratio = 0.0;  // removed / first-day count
  };
  std::vector<Entry> entries;
  std::size_t ineligible_users = 0;

  std::size_t removed_users() const { return count(DayAfterOutcome::Removed); }
  std::size_t added_users() const { return count(DayAfterOutcome::Added); }
  std::size_t unchanged_users() const {
    return count(DayAfterOutcome::Unchanged);
  }
  double mean_removal_ratio() const {
    double sum = 0.0;
    std::size_t n = 0;
    for (const Entry& e : entries) {
      if (e.outcome == DayAfterOutcome::Removed) {
        sum += e.removal_ratio;
        ++n;
      }
    }
    return n ? sum / static_cast<double>(n) : 0.0;
  }

 private:
  std::size_t count(DayAfterOutcome outcome) const {
    std::size_t n = 0;
    for (const Entry& e : entries) n += e.outcome == outcome ? 1 : 0;
    return n;
  }
};

// Compares each user's first snapshot with the latest one recorded within
// 24 hours after it; users without such a follow-up are excluded (counted).
inline DayAfterReport day_after_removal_report(
    std::span<const PrivacySnapshot> snapshots) {
  const auto sorted = privacy_detail::sorted_snapshots(snapshots);
  DayAfterReport report;
  for (const auto& [begin, end] : privacy_detail::user_ranges(sorted)) {
    const PrivacySnapshot& first = sorted[begin];
    std::optional<std::uint64_t> day_after;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const std::int64_t elapsed = sorted[i].timestamp - first.timestamp;
      if (elapsed > 0 && elapsed <= 86400) {
        day_after = sorted[i].installed_app_count;
      }
    }
    if (!day_after) {
      report.ineligible_users += 1;
      continue;
    }
    DayAfterReport::Entry entry;
    entry.user = first.user;
    entry.first_count = first.installed_app_count;
    entry.day_after_count = *day_after;
    if (*day_after < entry.first_count) {
      entry.outcome = DayAfterOutcome::Removed;
      entry.removed = entry.first_count - *day_after;
      entry.removal_ratio = static_cast<double>(entry.removed) /
                            static_cast<double>(entry.first_count);
    } else if (*day_after > entry.first_count) {
      entry.outcome = DayAfterOutcome::Added;
      entry.added = *day_after - entry.first_count;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

struct InstallRateReport {
  struct Entry {
    UserId user;
    double rate = 0.0;  // installs per window
  };
  std::vector<Entry> entries;  // only users whose count increased
  std::size_t users_with_two_snapshots = 0;

  double median_rate() const {
    if (entries.empty()) return 0.0;
    std::vector<double> rates;
    rates.reserve(entries.size());
    for (const Entry& e : entries) rates.push_back(e.rate);
    std::sort(rates.begin(), rates.end());
    const std::size_t mid = rates.size() / 2;
    return rates.size() % 2 ? rates[mid]
                            : (rates[mid - 1] + rates[mid]) / 2.0;
  }
  double mean_rate() const {
    double sum = 0.0;
    for (const Entry& e : entries) sum += e.rate;
    return entries.empty() ? 0.0
                           : sum / static_cast<double>(entries.size());
  }
};

// Average install rate per window for users whose installed-app count grew
// between their first and last snapshots.
inline InstallRateReport install_rate_report(
    std::span<const PrivacySnapshot> snapshots, std::int64_t window_seconds) {
  if (window_seconds <= 0) {
    throw Error(Errc::InvalidArgument, "window must be positive");
  }
  const auto sorted = privacy_detail::sorted_snapshots(snapshots);
  InstallRateReport report;
  for (const auto& [begin, end] : privacy_detail::user_ranges(sorted)) {
    if (end - begin < 2) continue;
    const PrivacySnapshot& first = sorted[begin];
    const PrivacySnapshot& last = sorted[end - 1];
    const std::int64_t elapsed = last.timestamp - first.timestamp;
    if (elapsed <= 0) continue;
    report.users_with_two_snapshots += 1;
    if (last.installed_app_count <= first.installed_app_count) continue;
    const double delta = static_cast<double>(last.installed_app_count -
                                             first.installed_app_count);
    report.entries.push_back(
        {first.user, delta / static_cast<double>(elapsed) *
                         static_cast<double>(window_seconds)});
  }
  return report;
}

struct SettingsDistribution {
  // One fraction map per audience setting, over users' earliest snapshots.
  std::array<std::map<AudienceLevel, double>, kAudienceSettingCount> fractions;
  std::size_t users = 0;
};

inline SettingsDistribution settings_distribution(
    std::span<const PrivacySnapshot> snapshots) {
  if (snapshots.empty()) {
    throw Error(Errc::EmptyDataset, "no snapshots given");
  }
  const auto sorted = privacy_detail::sorted_snapshots(snapshots);
  SettingsDistribution distribution;
  std::array<std::map<AudienceLevel, std::size_t>, kAudienceSettingCount>
      counts;
  for (const auto& [begin, end] : privacy_detail::user_ranges(sorted)) {
    for (int s = 0; s < kAudienceSettingCount; ++s) {
      counts[s][audience_setting(sorted[begin], s)] += 1;
    }
    distribution.users += 1;
  }
  for (int s = 0; s < kAudienceSettingCount; ++s) {
    for (const auto& [level, count] : counts[s]) {
      distribution.fractions[s][level] =
          static_cast<double>(count) / static_cast<double>(distribution.users);
    }
  }
  return distribution;
}

struct SettingsChange {
  UserId user;
  bool changed = false;
  bool reverted_to_less_restrictive = false;
};

namespace privacy_detail {

inline bool same_settings(const PrivacySnapshot& a, const PrivacySnapshot& b) {
  for (int s = 0; s < kAudienceSettingCount; ++s) {
    if (audience_setting(a, s) != audience_setting(b, s)) return false;
  }
  return true;
}

// Restrictiveness rank per audience; Custom is incomparable.
inline std::optional<int> restrictiveness(AudienceLevel level) {
  switch (level) {
    case AudienceLevel::Everyone: return 0;
    case AudienceLevel::FriendsOfFriends: return 1;
    case AudienceLevel::Friends: return 2;
    case AudienceLevel::NoOne: return 3;
    case AudienceLevel::Custom: return std::nullopt;
  }
  return std::nullopt;
}

// a strictly less restrictive than b: no setting more restrictive, at least
// one strictly less, and no incomparable (Custom) disagreement.
inline bool less_restrictive(const PrivacySnapshot& a,
                             const PrivacySnapshot& b) {
  bool strictly = false;
  for (int s = 0; s < kAudienceSettingCount; ++s) {
    const AudienceLevel la = audience_setting(a, s);
    const AudienceLevel lb = audience_setting(b, s);
    if (la == lb) continue;
    const auto ra = restrictiveness(la);
    const auto rb = restrictiveness(lb);
    if (!ra || !rb || *ra > *rb) return false;
    strictly = true;
  }
  return strictly;
}

}  // namespace privacy_detail

// changed: any audience setting differs between consecutive snapshots.
// reverted: some later snapshot equals an earlier configuration that is
// strictly less restrictive than a configuration seen in between.
inline std::vector<SettingsChange> settings_change_detection(
    std::span<const PrivacySnapshot> snapshots) {
  const auto sorted = privacy_detail::sorted_snapshots(snapshots);
  std::vector<SettingsChange> changes;
  for (const auto& [begin, end] : privacy_detail::user_ranges(sorted)) {
    if (end - begin < 2) continue;
    SettingsChange change;
    change.user = sorted[begin].user;
    for (std::size_t i = begin + 1; i < end && !change.changed; ++i) {
      change.changed = !privacy_detail::same_settings(sorted[i - 1], sorted[i]);
    }
    for (std::size_t later = begin + 2; later < end; ++later) {
      for (std::size_t earlier = begin; earlier + 1 < later; ++earlier) {
        if (!privacy_detail::same_settings(sorted[later], sorted[earlier])) {
          continue;
        }
        for (std::size_t mid = earlier + 1; mid < later; ++mid) {
          if (privacy_detail::less_restrictive(sorted[earlier], sorted[mid])) {
            change.reverted_to_less_restrictive = true;
            break;
          }
        }
        if (change.reverted_to_less_restrictive) break;
      }
      if (change.reverted_to_less_restrictive) break;
    }
    changes.push_back(std::move(change));
  }
  return changes;
}

}  // namespace linktrust
