// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "wids3/alert.hpp"
#include "wids3/events.hpp"

namespace wids {

struct ClientNotice {
  MacAddr client;
  AlertKind kind = AlertKind::AuthFlood;
  TimePoint first_seen{};
  TimePoint last_seen{};
  std::uint32_t count = 0;

  bool operator==(const ClientNotice&) const = default;
};

/// Append-only JSONL notification log, one record per registry upsert.
class NoticeLog {
 public:
  explicit NoticeLog(std::ostream& out) : out_(&out) {}
  void append(const ClientNotice& n);

 private:
  std::ostream* out_;
};

/// Affected-client registry keyed by (client, alert kind).
class AffectedRegistry {
 public:
  /// Upserts one entry per victim. An alert already recorded is ignored, so
  /// replaying a log is idempotent. Returns the number of entries touched.
  std::size_t record(const Alert& alert, NoticeLog* log = nullptr);

  std::vector<ClientNotice> entries() const;
  std::optional<ClientNotice> find(const MacAddr& client, AlertKind kind) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<MacAddr, AlertKind>, ClientNotice> entries_;
  std::set<std::string> seen_;
};

enum class ApStatus { Active, Restarted, New };

struct AuthorizedApEntry {
  AuthorizedAp ap;
  ApStatus status = ApStatus::Active;
  TimePoint at{};

  bool operator==(const AuthorizedApEntry&) const = default;
};

/// Document format, one AP per line: bssid,ssid,status,timestamp_us
/// status is Active, Restarted or New. '#' lines and blank lines are skipped.
/// Throws RecordError on a malformed or duplicate line.
std::vector<AuthorizedApEntry> parse_authorized_aps(std::string_view text);
std::string format_authorized_aps(const std::vector<AuthorizedApEntry>& entries);

/// Pollable NMS document. fetch() throws SourceUnavailable when unreachable.
class AuthorizedApSource {
 public:
  virtual ~AuthorizedApSource() = default;
  virtual std::string fetch() = 0;
  virtual std::string describe() const = 0;
};

class FileApSource final : public AuthorizedApSource {
 public:
  explicit FileApSource(std::filesystem::path path) : path_(std::move(path)) {}
  std::string fetch() override;
  std::string describe() const override { return path_.string(); }

 private:
  std::filesystem::path path_;
};

struct ApRefresh {
  std::vector<AuthorizedAp> authorized;
  std::vector<ControlSignal> signals;
  std::vector<std::string> warnings;
};

/// Turns successive polls of a source into an authorized set and
/// at-most-once control signals.
class AuthorizedApMonitor {
 public:
  explicit AuthorizedApMonitor(std::unique_ptr<AuthorizedApSource> source);

  /// The first successful poll establishes the baseline and emits nothing.
  /// Later polls emit one signal per Restarted/New transition with a
  /// timestamp <= now that has not been signalled before.
  ApRefresh refresh(TimePoint now);
  const std::vector<AuthorizedAp>& authorized() const { return authorized_; }

 private:
  std::unique_ptr<AuthorizedApSource> source_;
  bool primed_ = false;
  std::vector<AuthorizedAp> authorized_;
  std::set<std::tuple<MacAddr, ApStatus, std::int64_t>> signalled_;
};

struct RogueRecord {
  AuthorizedAp identity;
  TimePoint first_seen{};
  TimePoint last_seen{};
  std::uint64_t first_frame = 0;
  std::uint64_t last_frame = 0;
};

/// Marks unauthorized beacon identities that persist as rogue, once each.
class RogueTracker {
 public:
  explicit RogueTracker(Duration persistence) : persistence_(persistence) {}

  /// `suppressed` is set while a flood is in progress; the identity is still
  /// tracked but not reported.
  std::optional<RogueRecord> observe(const AuthorizedAp& id, TimePoint t, std::uint64_t frame,
                                     bool suppressed);
  void clear() { seen_.clear(); }
  std::vector<RogueRecord> reported() const;

 private:
  struct State {
    RogueRecord rec;
    bool reported = false;
  };
  Duration persistence_;
  std::map<AuthorizedAp, State> seen_;
};

}  // namespace wids
