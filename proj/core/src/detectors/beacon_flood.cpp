// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include "detectors.hpp"

namespace wids::detail {

void BeaconFloodDetector::on_frame(const FrameRecord& f, const BeaconBody& b) {
  start(f.timestamp);
  if (learning(f.timestamp)) {
    bssids_.insert(f.bssid);
    ssids_.insert(b.ssid);
    return;
  }
  if (bssids_.count(f.bssid) && ssids_.count(b.ssid)) return;

  const bool probe = f.frame_subtype == subtype::kProbeResponse;
  sink_.event({probe ? EventSource::UnauthorizedProbe : EventSource::UnauthorizedBeacon,
               f.timestamp, f.frame_number, {f.frame_number}, {f.bssid}});
  burst(probe ? probes_ : beacons_, f, probe);

  const AuthorizedAp id{f.bssid, b.ssid};
  recent_unauthorized_.emplace_back(f.timestamp, id);
  while (f.timestamp - recent_unauthorized_.front().first > cfg_.beaconflood_span)
    recent_unauthorized_.pop_front();
  std::set<AuthorizedAp> distinct;
  for (const auto& r : recent_unauthorized_) distinct.insert(r.second);
  const bool flooding = distinct.size() >= cfg_.beaconflood_events;

  if (auto rec = rogue_.observe(id, f.timestamp, f.frame_number, flooding)) {
    Alert a;
    a.kind = AlertKind::RogueAp;
    a.detected_at = f.timestamp;
    a.suspects = {f.bssid};
    a.evidence_frames = {rec->first_frame, rec->last_frame};
    a.detail = "unauthorized AP '" + b.ssid + "' beaconing for " +
               format_duration(rec->last_seen - rec->first_seen);
    sink_.alert(std::move(a));
  }
}

void BeaconFloodDetector::burst(Burst& b, const FrameRecord& f, bool probe) {
  b.frames.emplace_back(f.timestamp, f.frame_number);
  while (f.timestamp - b.frames.front().first > cfg_.beaconflood_span) b.frames.pop_front();
  if (b.frames.size() < cfg_.beaconflood_events) return;

  std::vector<std::uint64_t> frames;
  for (const auto& e : b.frames) frames.push_back(e.second);
  sink_.event({probe ? EventSource::ProbeBurst : EventSource::BeaconBurst, f.timestamp,
               f.frame_number, frames, {}});
  Alert a;
  a.kind = probe ? AlertKind::ProbeFlood : AlertKind::BeaconFlood;
  a.detected_at = f.timestamp;
  a.evidence_frames = std::move(frames);
  a.detail = std::to_string(b.frames.size()) + (probe ? " unauthorized probe responses" : " unauthorized beacons") +
             " within " + format_duration(f.timestamp - b.frames.front().first);
  sink_.alert(std::move(a));
}

void BeaconFloodDetector::relearn(TimePoint at) {
  learn_until_ = at + cfg_.learning_period;
  beacons_.frames.clear();
  probes_.frames.clear();
  recent_unauthorized_.clear();
  rogue_.clear();
}

void BeaconFloodDetector::authorize(const std::vector<AuthorizedAp>& aps) {
  for (const auto& ap : aps) {
    bssids_.insert(ap.bssid);
    ssids_.insert(ap.ssid);
  }
}

}  // namespace wids::detail
