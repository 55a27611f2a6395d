// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference scans. They re-derive the counted sets from raw
// frame fields and share no code with the streaming detectors.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "wids3/config.hpp"
#include "wids3/frame.hpp"

namespace wids::test {

/// Last frame numbers of every run of `len` consecutive counted requests
/// spanning strictly less than `window`.
inline std::vector<std::uint64_t> flood_windows(const std::vector<FrameRecord>& frames,
                                                const MacAddr& ap, std::size_t len, Duration window) {
  std::vector<const FrameRecord*> req;
  for (const auto& f : frames) {
    const auto* a = f.body_as<AuthBody>();
    if (f.frame_type != FrameType::Management || f.frame_subtype != 11 || !a) continue;
    if (a->auth_alg != AuthAlgorithm::Sae || a->auth_seq != 1) continue;
    if (f.receiver_addr != ap || f.source_addr == ap || f.flags.retry) continue;
    req.push_back(&f);
  }
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i + len <= req.size(); ++i)
    if (req[i + len - 1]->timestamp - req[i]->timestamp < window)
      out.push_back(req[i + len - 1]->frame_number);
  return out;
}

struct BurstScan {
  std::vector<std::uint64_t> beacon;
  std::vector<std::uint64_t> probe;
};

/// Unauthorized beacons/probe responses after the learning period, and every
/// such frame that closes `events` of its kind within `span`.
inline BurstScan beacon_bursts(const std::vector<FrameRecord>& frames, const DetectorConfig& cfg) {
  BurstScan out;
  if (frames.empty()) return out;
  const TimePoint learn_end = frames.front().timestamp + cfg.learning_period;
  std::set<MacAddr> bssids;
  std::set<std::string> ssids;
  std::vector<const FrameRecord*> beacons, probes;
  for (const auto& f : frames) {
    const auto* b = f.body_as<BeaconBody>();
    if (!b) continue;
    if (f.timestamp < learn_end) {
      bssids.insert(f.bssid);
      ssids.insert(b->ssid);
      continue;
    }
    if (bssids.count(f.bssid) && ssids.count(b->ssid)) continue;
    (f.frame_subtype == 5 ? probes : beacons).push_back(&f);
  }
  const auto scan = [&](const std::vector<const FrameRecord*>& v, std::vector<std::uint64_t>& ev) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::size_t in_span = 0;
      for (std::size_t j = 0; j <= i; ++j)
        if (v[i]->timestamp - v[j]->timestamp <= cfg.beaconflood_span) ++in_span;
      if (in_span >= cfg.beaconflood_events) ev.push_back(v[i]->frame_number);
    }
  };
  scan(beacons, out.beacon);
  scan(probes, out.probe);
  return out;
}

}  // namespace wids::test
