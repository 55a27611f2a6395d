// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "detectors.hpp"

namespace wids::detail {

unsigned group_strength(std::uint16_t group) {
  switch (group) {
    case 1: return 70;
    case 2: return 80;
    case 5: return 96;
    case 14: return 112;
    case 15: return 128;
    case 16: return 152;
    case 17: return 176;
    case 18: return 200;
    case 19: return 128;
    case 20: return 192;
    case 21: return 256;
    case 22: return 80;
    case 23: return 112;
    case 24: return 112;
    case 25: return 96;
    case 26: return 112;
    case 27: return 112;
    case 28: return 128;
    case 29: return 192;
    case 30: return 256;
    case 31: return 128;
    case 32: return 224;
    default: return group;
  }
}

void CommitRaceDetector::on_auth(const FrameRecord& f, const AuthBody& a, bool retry) {
  if (!a.is_sae()) return;
  const MacAddr& ap = cfg_.protected_bssid;
  if (f.receiver_addr == ap && a.is_sae_commit()) {
    if (a.cyclic_group) last_commit_group_[f.source_addr] = *a.cyclic_group;
    return;
  }
  if (f.source_addr != ap || f.receiver_addr.is_group()) return;
  const MacAddr client = f.receiver_addr;

  auto it = pending_.find(client);
  if (it != pending_.end() && f.timestamp - it->second.t > cfg_.race_window) {
    pending_.erase(it);
    it = pending_.end();
  }

  if (a.status_code == StatusCode::GroupNotSupported ||
      a.status_code == StatusCode::UnspecifiedFailure) {
    std::optional<std::uint16_t> group = a.cyclic_group;
    if (auto g = last_commit_group_.find(client); g != last_commit_group_.end()) group = g->second;
    pending_[client] = {a.status_code, f.timestamp, f.frame_number, group};
    sink_.event({EventSource::CommitRejection, f.timestamp, f.frame_number, {f.frame_number}, {client}});
    return;
  }
  if (a.status_code != StatusCode::Success || it == pending_.end() || retry) return;
  if (a.auth_seq != 1 && a.auth_seq != 2) return;

  const Rejection rej = it->second;
  pending_.erase(it);
  const bool group_case = rej.status == StatusCode::GroupNotSupported;
  Alert alert;
  alert.kind = group_case ? AlertKind::GroupUnsupported : AlertKind::CommitOutOfRange;
  alert.detected_at = f.timestamp;
  alert.victim_addrs = {client};
  alert.evidence_frames = {rej.frame, f.frame_number};
  alert.detail = "rejection " + status_name(rej.status) + " followed by success after " +
                 format_duration(f.timestamp - rej.t);
  if (rej.group) alert.detail += " (group " + std::to_string(*rej.group) + ")";
  sink_.alert(alert);

  if (!group_case || !rej.group) return;
  auto& hist = history_[client];
  hist.push_back({*rej.group, alert.evidence_frames});
  if (hist.size() < 2) return;
  const Detection& prev = hist[hist.size() - 2];
  const Detection& cur = hist.back();
  if (group_strength(cur.group) >= group_strength(prev.group)) return;

  Alert down;
  down.kind = AlertKind::GroupDowngrade;
  down.detected_at = f.timestamp;
  down.victim_addrs = {client};
  down.evidence_frames = prev.frames;
  down.evidence_frames.insert(down.evidence_frames.end(), cur.frames.begin(), cur.frames.end());
  down.detail = "group " + std::to_string(prev.group) + " (" +
                std::to_string(group_strength(prev.group)) + " bits) then " +
                std::to_string(cur.group) + " (" + std::to_string(group_strength(cur.group)) +
                " bits) rejected";
  sink_.alert(std::move(down));
}

}  // namespace wids::detail
