// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wids3/mac.hpp"
#include "wids3/time.hpp"

namespace wids {

enum class AlertKind {
  AuthFlood,
  Wpa2Downgrade,
  DeauthRace,
  GroupUnsupported,
  CommitOutOfRange,
  GroupDowngrade,
  TimingSideChannel,
  BeaconFlood,
  ProbeFlood,
  RogueAp,
};

inline constexpr AlertKind kAllAlertKinds[] = {
    AlertKind::AuthFlood,        AlertKind::Wpa2Downgrade,    AlertKind::DeauthRace,
    AlertKind::GroupUnsupported, AlertKind::CommitOutOfRange, AlertKind::GroupDowngrade,
    AlertKind::TimingSideChannel, AlertKind::BeaconFlood,     AlertKind::ProbeFlood,
    AlertKind::RogueAp,
};

std::string_view to_string(AlertKind k);
std::optional<AlertKind> parse_alert_kind(std::string_view s);

struct Alert {
  AlertKind kind = AlertKind::AuthFlood;
  TimePoint detected_at{};
  std::vector<MacAddr> victim_addrs;  // affected clients, sorted
  std::vector<MacAddr> suspects;      // attacker-side identities (rogue BSSIDs)
  std::vector<std::uint64_t> evidence_frames;
  std::string detail;

  bool operator==(const Alert&) const = default;
};

/// One JSON object, no trailing newline.
std::string to_json_line(const Alert& a);
/// Throws RecordError(line) on malformed input.
Alert parse_alert_line(std::string_view text, std::size_t line);

void write_alert_log(std::ostream& out, const std::vector<Alert>& alerts);
/// Blank lines are skipped.
std::vector<Alert> read_alert_log(std::istream& in);

}  // namespace wids
