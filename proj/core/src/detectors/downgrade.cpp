// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "detectors.hpp"

namespace wids::detail {

void DowngradeDetector::on_beacon(const FrameRecord& f, const BeaconBody& b) {
  const std::size_t count = b.rsn ? b.rsn->akm_count() : 0;
  const bool sae = b.rsn && b.rsn->has(AkmKind::Sae);
  beacons_.push_back({f.timestamp, count, sae, f.frame_number});
  while (beacons_.size() > cfg_.downgrade_beacon_buffer) beacons_.pop_front();
  if (beacons_.size() < 2) return;

  const Seen& prev = beacons_.front();
  const Seen& cur = beacons_.back();
  if (cur.t - prev.t > cfg_.downgrade_ignore_gap) return;
  const bool mismatch = prev.akm_count != cur.akm_count || (prev.sae && !cur.sae);
  if (!mismatch) return;
  if (ignore_until_ && cur.t <= *ignore_until_) return;

  sink_.event({EventSource::DowngradeMismatch, cur.t, cur.frame, {prev.frame, cur.frame}, {}});
  events_.emplace_back(cur.t, cur.frame);
  while (cur.t - events_.front().first > cfg_.downgrade_span) events_.pop_front();
  if (events_.size() < cfg_.downgrade_events) return;

  Alert a;
  a.kind = AlertKind::Wpa2Downgrade;
  a.detected_at = cur.t;
  for (const auto& e : events_) a.evidence_frames.push_back(e.second);
  a.detail = std::to_string(events_.size()) + " RSNE mismatches on '" + cfg_.protected_ssid +
             "' within " + format_duration(cur.t - events_.front().first);
  sink_.alert(std::move(a));
  events_.clear();
}

void DowngradeDetector::ap_restarted(TimePoint at) {
  const auto lo = at - cfg_.downgrade_ignore_gap;
  const auto hi = at + cfg_.downgrade_ignore_gap;
  std::erase_if(events_, [&](const auto& e) { return e.first >= lo && e.first <= hi; });
  ignore_until_ = hi;
}

}  // namespace wids::detail
