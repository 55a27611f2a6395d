// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/alert.hpp"

#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "wids3/errors.hpp"
#include "wids3/events.hpp"

namespace wids {

namespace {
constexpr std::string_view kKindNames[] = {
    "AuthFlood",         "Wpa2Downgrade", "DeauthRace",  "GroupUnsupported", "CommitOutOfRange",
    "GroupDowngrade",    "TimingSideChannel", "BeaconFlood", "ProbeFlood",   "RogueAp",
};

std::vector<MacAddr> macs_from(const nlohmann::json& arr, std::size_t line, const char* field) {
  if (!arr.is_array()) throw RecordError(line, std::string(field) + " must be an array");
  std::vector<MacAddr> out;
  for (const auto& v : arr) {
    auto m = v.is_string() ? MacAddr::parse(v.get<std::string>()) : std::nullopt;
    if (!m) throw RecordError(line, std::string("bad MAC in ") + field);
    out.push_back(*m);
  }
  return out;
}
}  // namespace

std::string_view to_string(AlertKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<AlertKind> parse_alert_kind(std::string_view s) {
  for (auto k : kAllAlertKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::string_view to_string(EventSource s) {
  switch (s) {
    case EventSource::FloodWindow: return "FloodWindow";
    case EventSource::FloodConfirmed: return "FloodConfirmed";
    case EventSource::FloodCancelled: return "FloodCancelled";
    case EventSource::DowngradeMismatch: return "DowngradeMismatch";
    case EventSource::DeauthFollow: return "DeauthFollow";
    case EventSource::DeauthReason7: return "DeauthReason7";
    case EventSource::CommitRejection: return "CommitRejection";
    case EventSource::UnauthorizedBeacon: return "UnauthorizedBeacon";
    case EventSource::UnauthorizedProbe: return "UnauthorizedProbe";
    case EventSource::BeaconBurst: return "BeaconBurst";
    case EventSource::ProbeBurst: return "ProbeBurst";
  }
  return "?";
}

std::string to_json_line(const Alert& a) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(a.kind);
  j["time"] = format_iso8601(a.detected_at);
  j["time_us"] = to_micros(a.detected_at);
  auto victims = nlohmann::ordered_json::array();
  for (const auto& m : a.victim_addrs) victims.push_back(m.to_string());
  j["victims"] = std::move(victims);
  if (!a.suspects.empty()) {
    auto s = nlohmann::ordered_json::array();
    for (const auto& m : a.suspects) s.push_back(m.to_string());
    j["suspects"] = std::move(s);
  }
  j["evidence"] = a.evidence_frames;
  j["detail"] = a.detail;
  return j.dump();
}

Alert parse_alert_line(std::string_view text, std::size_t line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw RecordError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw RecordError(line, "alert record must be an object");
  Alert a;
  try {
    const auto kind = parse_alert_kind(j.at("kind").get<std::string>());
    if (!kind) throw RecordError(line, "unknown alert kind");
    a.kind = *kind;
    if (j.contains("time_us")) {
      a.detected_at = from_micros(j.at("time_us").get<std::int64_t>());
    } else {
      auto t = parse_iso8601(j.at("time").get<std::string>());
      if (!t) throw RecordError(line, "bad time");
      a.detected_at = *t;
    }
    a.victim_addrs = macs_from(j.at("victims"), line, "victims");
    if (j.contains("suspects")) a.suspects = macs_from(j.at("suspects"), line, "suspects");
    a.evidence_frames = j.at("evidence").get<std::vector<std::uint64_t>>();
    if (j.contains("detail")) a.detail = j.at("detail").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw RecordError(line, std::string("missing or mistyped field: ") + e.what());
  }
  return a;
}

void write_alert_log(std::ostream& out, const std::vector<Alert>& alerts) {
  for (const auto& a : alerts) out << to_json_line(a) << '\n';
}

std::vector<Alert> read_alert_log(std::istream& in) {
  std::vector<Alert> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_alert_line(line, n));
  }
  return out;
}

}  // namespace wids
