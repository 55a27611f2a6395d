// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <variant>

#include "wids3/errors.hpp"

namespace wids {
namespace {

using Member = std::variant<std::uint32_t DetectorConfig::*, Duration DetectorConfig::*,
                            MacAddr DetectorConfig::*, std::string DetectorConfig::*,
                            std::filesystem::path RunConfig::*, Duration RunConfig::*>;

struct Field {
  std::string_view key;
  Member member;
};

const Field kFields[] = {
    {"protected_bssid", &DetectorConfig::protected_bssid},
    {"protected_ssid", &DetectorConfig::protected_ssid},
    {"flood_buffer_len", &DetectorConfig::flood_buffer_len},
    {"flood_window", &DetectorConfig::flood_window},
    {"flood_events_per_min", &DetectorConfig::flood_events_per_min},
    {"flood_sustain", &DetectorConfig::flood_sustain},
    {"flood_success_wait", &DetectorConfig::flood_success_wait},
    {"flood_success_majority", &DetectorConfig::flood_success_majority},
    {"downgrade_beacon_buffer", &DetectorConfig::downgrade_beacon_buffer},
    {"downgrade_events", &DetectorConfig::downgrade_events},
    {"downgrade_span", &DetectorConfig::downgrade_span},
    {"downgrade_ignore_gap", &DetectorConfig::downgrade_ignore_gap},
    {"deauth_follow_window", &DetectorConfig::deauth_follow_window},
    {"deauth_race_events", &DetectorConfig::deauth_race_events},
    {"deauth_race_span", &DetectorConfig::deauth_race_span},
    {"race_window", &DetectorConfig::race_window},
    {"timing_count_threshold", &DetectorConfig::timing_count_threshold},
    {"timing_reset_period", &DetectorConfig::timing_reset_period},
    {"learning_period", &DetectorConfig::learning_period},
    {"beaconflood_events", &DetectorConfig::beaconflood_events},
    {"beaconflood_span", &DetectorConfig::beaconflood_span},
    {"rogue_persistence", &DetectorConfig::rogue_persistence},
    {"alert_cooldown", &DetectorConfig::alert_cooldown},
    {"out_of_order_slack", &DetectorConfig::out_of_order_slack},
    {"authorized_ap_file", &RunConfig::authorized_ap_file},
    {"notice_log", &RunConfig::notice_log},
    {"nms_poll_interval", &RunConfig::nms_poll_interval},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(std::size_t line, std::string_view key, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + " (" + std::string(key) + "): " + what);
}

void assign(RunConfig& cfg, const Field& f, std::string_view value, std::size_t line) {
  std::visit(
      [&](auto member) {
        using M = decltype(member);
        if constexpr (std::is_same_v<M, std::uint32_t DetectorConfig::*>) {
          std::uint32_t v = 0;
          const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
          if (value.empty() || ec != std::errc{} || p != value.data() + value.size())
            bad(line, f.key, "expected a non-negative integer, got '" + std::string(value) + "'");
          cfg.detector.*member = v;
        } else if constexpr (std::is_same_v<M, Duration DetectorConfig::*> ||
                             std::is_same_v<M, Duration RunConfig::*>) {
          auto d = parse_duration(value);
          if (!d) bad(line, f.key, "expected a duration with unit, got '" + std::string(value) + "'");
          if constexpr (std::is_same_v<M, Duration DetectorConfig::*>)
            cfg.detector.*member = *d;
          else
            cfg.*member = *d;
        } else if constexpr (std::is_same_v<M, MacAddr DetectorConfig::*>) {
          auto m = MacAddr::parse(value);
          if (!m) bad(line, f.key, "expected a MAC address, got '" + std::string(value) + "'");
          cfg.detector.*member = *m;
        } else if constexpr (std::is_same_v<M, std::string DetectorConfig::*>) {
          cfg.detector.*member = std::string(value);
        } else {
          cfg.*member = std::filesystem::path(std::string(value));
        }
      },
      f.member);
}

}  // namespace

void DetectorConfig::validate() const {
  const std::pair<std::string_view, Duration> durations[] = {
      {"flood_window", flood_window},
      {"flood_sustain", flood_sustain},
      {"flood_success_wait", flood_success_wait},
      {"downgrade_span", downgrade_span},
      {"downgrade_ignore_gap", downgrade_ignore_gap},
      {"deauth_follow_window", deauth_follow_window},
      {"deauth_race_span", deauth_race_span},
      {"race_window", race_window},
      {"timing_reset_period", timing_reset_period},
      {"learning_period", learning_period},
      {"beaconflood_span", beaconflood_span},
      {"rogue_persistence", rogue_persistence},
      {"alert_cooldown", alert_cooldown},
      {"out_of_order_slack", out_of_order_slack},
  };
  for (const auto& [name, d] : durations)
    if (d <= Duration::zero()) throw ConfigError(std::string(name) + " must be positive");
  if (flood_sustain % std::chrono::minutes(1) != Duration::zero())
    throw ConfigError("flood_sustain must be a whole number of minutes");
  const std::pair<std::string_view, std::uint32_t> counts[] = {
      {"flood_buffer_len", flood_buffer_len},
      {"flood_events_per_min", flood_events_per_min},
      {"flood_success_majority", flood_success_majority},
      {"downgrade_events", downgrade_events},
      {"deauth_race_events", deauth_race_events},
      {"timing_count_threshold", timing_count_threshold},
      {"beaconflood_events", beaconflood_events},
  };
  for (const auto& [name, c] : counts)
    if (c == 0) throw ConfigError(std::string(name) + " must be at least 1");
  if (flood_buffer_len < 2) throw ConfigError("flood_buffer_len must be at least 2");
  if (downgrade_beacon_buffer < 2) throw ConfigError("downgrade_beacon_buffer must be at least 2");
  if (flood_success_majority > flood_buffer_len)
    throw ConfigError("flood_success_majority exceeds flood_buffer_len");
  if (protected_ssid.size() > 32) throw ConfigError("protected_ssid longer than 32 bytes");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    // '#' opens a comment only at line start or after blanks, so SSIDs may contain it
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    const Field* field = nullptr;
    for (const auto& f : kFields)
      if (f.key == key) field = &f;
    if (!field) bad(line_no, key, "unknown key");
    assign(cfg, *field, value, line_no);
  }
  cfg.detector.validate();
  if (cfg.nms_poll_interval <= Duration::zero()) throw ConfigError("nms_poll_interval must be positive");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::string_view> config_keys() {
  std::vector<std::string_view> keys;
  for (const auto& f : kFields) keys.push_back(f.key);
  return keys;
}

}  // namespace wids
