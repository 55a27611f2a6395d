// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wids3/config.hpp"
#include "wids3/frame.hpp"

namespace wids {

enum class ScenarioKind {
  // benign baselines
  BenignConnect,
  ApRestartStorm,
  BenignBeacons,        // transition-mode AP advertising [PSK, SAE]
  Reconfigure,          // SAE beacons, silence, PSK-only beacons
  LegitGroupRejection,  // genuine 0x004d, client retries a second later
  // attacks
  AuthFlood,
  TryWpa2,
  DowngradeTransition,
  CommitOutOfRange,
  GroupUnsupported,
  GroupDowngrade,
  TimingProbes,
  DeauthRace,
  BeaconFlood,
  ProbeFlood,
  RogueAp,
  // randomized flood + beacon mixture for oracle tests
  Mixed,
};

enum class BeaconFloodMode { RandomSsids, ConfusingSsids };

std::string_view to_string(ScenarioKind k);
std::optional<ScenarioKind> parse_scenario_kind(std::string_view s);
std::vector<ScenarioKind> all_scenario_kinds();

inline constexpr std::int64_t kDefaultT0Micros = 1614592800000000;  // 2021-03-01T10:00:00Z

struct Scenario {
  ScenarioKind kind = ScenarioKind::BenignConnect;
  std::uint64_t seed = 0;
  TimePoint t0 = from_micros(kDefaultT0Micros);
  MacAddr ap_bssid = *MacAddr::parse("30:86:2d:c0:07:c0");
  std::string ssid = "WPA3-Network";

  std::uint32_t clients = 1;
  double rate = 200.0;  // frames per second
  Duration duration = std::chrono::seconds(10);
  Duration legit_interval = std::chrono::milliseconds(100);
  Duration attacker_interval = std::chrono::milliseconds(16);
  Duration gap = std::chrono::seconds(15);
  Duration lead_in = std::chrono::seconds(200);
  Duration race_lead = std::chrono::milliseconds(2);  // negative: attacker loses the race
  std::vector<std::uint16_t> groups;
  std::uint32_t count = 500;
  std::uint32_t repetitions = 2;
  BeaconFloodMode mode = BeaconFloodMode::RandomSsids;
  std::uint32_t n_ssids = 200;

  /// Parameters matching the published experiments for each kind.
  static Scenario defaults(ScenarioKind kind);

  /// Throws InvalidScenario.
  void validate() const;
};

/// Deterministic in (scenario, seed); frames numbered from 1 in time order.
std::vector<FrameRecord> gen(const Scenario& s);

/// A config whose protected network is the scenario's AP.
DetectorConfig config_for(const Scenario& s);

/// "key = value" lines; `kind` selects the defaults the other keys override.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
std::string format_scenario(const Scenario& s);

enum class TraceFormat { Pcap, Csv };
std::optional<TraceFormat> parse_trace_format(std::string_view s);

/// Throws IoError.
void emit(const std::vector<FrameRecord>& trace, const std::filesystem::path& out, TraceFormat fmt);

}  // namespace wids
