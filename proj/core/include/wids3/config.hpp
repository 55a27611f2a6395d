// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wids3/mac.hpp"
#include "wids3/time.hpp"

namespace wids {

using namespace std::chrono_literals;

struct DetectorConfig {
  MacAddr protected_bssid = *MacAddr::parse("30:86:2d:c0:07:c0");
  std::string protected_ssid = "WPA3-Network";

  // authentication flood
  std::uint32_t flood_buffer_len = 8;
  Duration flood_window = 500ms;
  std::uint32_t flood_events_per_min = 10;
  Duration flood_sustain = 3min;
  Duration flood_success_wait = 2s;
  std::uint32_t flood_success_majority = 5;

  // downgrade
  std::uint32_t downgrade_beacon_buffer = 2;
  std::uint32_t downgrade_events = 4;
  Duration downgrade_span = 5s;
  Duration downgrade_ignore_gap = 10s;

  // deauthentication race
  Duration deauth_follow_window = 3s;
  std::uint32_t deauth_race_events = 2;
  Duration deauth_race_span = 10s;

  // commit rejection race
  Duration race_window = 500ms;

  // timing side channel
  std::uint32_t timing_count_threshold = 500;
  Duration timing_reset_period = 24h;

  // beacon / probe flood and rogue APs
  Duration learning_period = 180s;
  std::uint32_t beaconflood_events = 5;
  Duration beaconflood_span = 10s;
  Duration rogue_persistence = 30s;

  // engine
  Duration alert_cooldown = 60s;
  Duration out_of_order_slack = 1ms;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Everything a config file can set: detector thresholds plus run plumbing.
struct RunConfig {
  DetectorConfig detector;
  std::filesystem::path authorized_ap_file;  // empty = no NMS source
  std::filesystem::path notice_log;          // empty = no notice log
  Duration nms_poll_interval = 10s;
};

/// Flat "key = value" document; '#' starts a comment. Keys are the field
/// names above. Durations need a unit. Unknown keys are errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Every accepted key in declaration order, for help output and tests.
std::vector<std::string_view> config_keys();

}  // namespace wids
