// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "detectors.hpp"

namespace wids::detail {

void DeauthRaceDetector::on_frame(const FrameRecord& f, DispatchClass c) {
  const MacAddr& ap = cfg_.protected_bssid;
  MacAddr x;
  if (f.source_addr == ap)
    x = f.receiver_addr;
  else if (f.receiver_addr == ap)
    x = f.source_addr;
  else
    return;
  if (x.is_group() || x == ap) return;

  Client& cl = clients_[x];
  const auto follows_deauth = [&] {
    if (!cl.deauth) return false;
    const auto [t, frame] = *cl.deauth;
    cl.deauth.reset();
    if (f.timestamp - t >= cfg_.deauth_follow_window) return false;
    abnormal(x, cl, f, EventSource::DeauthFollow, {frame, f.frame_number});
    return true;
  };

  switch (c) {
    case DispatchClass::Deauthentication: {
      const auto* r = f.body_as<ReasonBody>();
      if (f.source_addr == x && cl.stage == Stage::Associated && r &&
          r->reason_code == ReasonCode::Class3FromNonassociated) {
        auto frames = cl.stage_frames;
        frames.push_back(f.frame_number);
        cl.stage = Stage::Idle;
        cl.stage_frames.clear();
        abnormal(x, cl, f, EventSource::DeauthReason7, std::move(frames));
      }
      cl.deauth = std::make_pair(f.timestamp, f.frame_number);
      break;
    }
    case DispatchClass::Association: {
      if (f.frame_subtype == subtype::kAssocRequest && f.source_addr == x) {
        cl.stage = Stage::Requested;
        cl.stage_frames = {f.frame_number};
        cl.attempt = f.frame_number;
      }
      follows_deauth();
      if (f.frame_subtype == subtype::kAssocResponse && f.source_addr == ap &&
          cl.stage == Stage::Requested) {
        const auto* a = f.body_as<AssocBody>();
        if (a && a->status_code == StatusCode::Success) {
          cl.stage = Stage::Associated;
          cl.stage_frames.push_back(f.frame_number);
        }
      }
      break;
    }
    case DispatchClass::Eapol: {
      follows_deauth();
      const auto* k = f.body_as<EapolKeyBody>();
      if (k && k->msg_nr == 4) {
        cl.stage = Stage::Idle;
        cl.stage_frames.clear();
      }
      break;
    }
    default:
      break;
  }
}

void DeauthRaceDetector::abnormal(const MacAddr& x, Client& c, const FrameRecord& f,
                                  EventSource src, std::vector<std::uint64_t> frames) {
  sink_.event({src, f.timestamp, f.frame_number, frames, {x}});
  // both signatures can fire on one association attempt; it counts once
  const std::uint64_t attempt = c.attempt.value_or(f.frame_number);
  if (c.counted_attempt == attempt) return;
  c.counted_attempt = attempt;
  c.events.emplace_back(f.timestamp, std::move(frames));
  while (f.timestamp - c.events.front().first > cfg_.deauth_race_span) c.events.pop_front();
  if (c.events.size() < cfg_.deauth_race_events) return;

  Alert a;
  a.kind = AlertKind::DeauthRace;
  a.detected_at = f.timestamp;
  a.victim_addrs = {x};
  for (const auto& e : c.events)
    a.evidence_frames.insert(a.evidence_frames.end(), e.second.begin(), e.second.end());
  std::sort(a.evidence_frames.begin(), a.evidence_frames.end());
  a.evidence_frames.erase(std::unique(a.evidence_frames.begin(), a.evidence_frames.end()),
                          a.evidence_frames.end());
  a.detail = std::to_string(c.events.size()) + " deauthentication races against " + x.to_string();
  sink_.alert(std::move(a));
  c.events.clear();
}

}  // namespace wids::detail
