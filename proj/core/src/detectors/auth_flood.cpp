// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <string>

#include "detectors.hpp"

namespace wids::detail {

std::vector<MacAddr> sorted_unique(std::vector<MacAddr> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

namespace {
std::vector<std::uint64_t> frames_of(const auto& entries) {
  std::vector<std::uint64_t> out;
  for (const auto& e : entries) out.push_back(e.frame);
  return out;
}
}  // namespace

std::optional<std::vector<std::uint64_t>> AuthFloodDetector::on_request(const FrameRecord& f) {
  buffer_.push_back({f.timestamp, f.source_addr, f.frame_number});
  while (buffer_.size() > cfg_.flood_buffer_len) buffer_.pop_front();
  if (buffer_.size() < cfg_.flood_buffer_len) return std::nullopt;
  if (buffer_.back().t - buffer_.front().t >= cfg_.flood_window) return std::nullopt;

  Pending p{f.timestamp, f.timestamp + cfg_.flood_success_wait, {buffer_.begin(), buffer_.end()}};
  AbnormalEvent ev{EventSource::FloodWindow, f.timestamp, f.frame_number, frames_of(p.entries), {}};
  for (const auto& e : p.entries) ev.addrs.push_back(e.mac);
  sink_.event(std::move(ev));
  auto frames = frames_of(p.entries);
  pending_.push_back(std::move(p));
  return frames;
}

void AuthFloodDetector::on_success(const MacAddr& client, TimePoint t) { last_success_[client] = t; }

bool AuthFloodDetector::advance(TimePoint now) {
  bool fired = false;
  while (!pending_.empty() && pending_.front().deadline < now) {
    fired |= settle(pending_.front());
    pending_.pop_front();
  }
  // the flood stopped after filling every window; judge once the last one has closed
  if (anchor_ && last_confirmed_ && now > *anchor_ + cfg_.flood_sustain + cfg_.flood_success_wait &&
      std::all_of(windows_.begin(), windows_.end(), [&](auto c) { return c >= cfg_.flood_events_per_min; })) {
    fired |= fire(*last_confirmed_);
    anchor_.reset();
    windows_.clear();
  }
  return fired;
}

bool AuthFloodDetector::finish() {
  bool fired = false;
  while (!pending_.empty()) {
    fired |= settle(pending_.front());
    pending_.pop_front();
  }
  // trace ended inside the last window: judge the counts gathered so far
  const bool full = anchor_ && std::all_of(windows_.begin(), windows_.end(), [&](auto c) {
    return c >= cfg_.flood_events_per_min;
  });
  if (full && last_confirmed_) {
    fired |= fire(*last_confirmed_);
    anchor_.reset();
    windows_.clear();
  }
  return fired;
}

bool AuthFloodDetector::settle(const Pending& p) {
  std::uint32_t succeeded = 0;
  for (const auto& e : p.entries) {
    auto it = last_success_.find(e.mac);
    if (it != last_success_.end() && it->second >= e.t) ++succeeded;
  }
  AbnormalEvent ev{succeeded >= cfg_.flood_success_majority ? EventSource::FloodCancelled
                                                            : EventSource::FloodConfirmed,
                   p.at, p.entries.back().frame, frames_of(p.entries), {}};
  for (const auto& e : p.entries) ev.addrs.push_back(e.mac);
  const bool cancelled = ev.source == EventSource::FloodCancelled;
  sink_.event(std::move(ev));
  return cancelled ? false : confirm(p);
}

bool AuthFloodDetector::confirm(const Pending& p) {
  const auto n_windows = static_cast<std::size_t>(cfg_.flood_sustain / std::chrono::minutes(1));
  const auto full = [&] {
    return std::all_of(windows_.begin(), windows_.end(),
                       [&](auto c) { return c >= cfg_.flood_events_per_min; });
  };
  const auto reanchor = [&] {
    anchor_ = p.at;
    windows_.assign(n_windows, 0);
  };

  bool fired = false;
  if (!anchor_) reanchor();
  auto idx = static_cast<std::size_t>((p.at - *anchor_) / std::chrono::minutes(1));
  if (idx >= n_windows) {
    fired = full() && fire(p);
    reanchor();
    idx = 0;
  } else if (std::any_of(windows_.begin(), windows_.begin() + idx,
                         [&](auto c) { return c < cfg_.flood_events_per_min; })) {
    reanchor();
    idx = 0;
  }
  ++windows_[idx];
  last_confirmed_ = p;
  return fired;
}

bool AuthFloodDetector::fire(const Pending& p) {
  Alert a;
  a.kind = AlertKind::AuthFlood;
  a.detected_at = p.at;
  for (const auto& e : p.entries) a.victim_addrs.push_back(e.mac);
  a.victim_addrs = sorted_unique(std::move(a.victim_addrs));
  a.evidence_frames = frames_of(p.entries);
  std::string counts;
  for (auto c : windows_) counts += (counts.empty() ? "" : "/") + std::to_string(c);
  a.detail = "unsuccessful SAE commit bursts per minute " + counts;
  sink_.alert(std::move(a));
  return true;
}

void TimingDetector::on_request(const FrameRecord& f) {
  ++counter_;
  pending_.push_back({f.timestamp, f.source_addr, f.frame_number});
  if (counter_ < cfg_.timing_count_threshold) return;
  Alert a;
  a.kind = AlertKind::TimingSideChannel;
  a.detected_at = f.timestamp;
  a.evidence_frames = {f.frame_number};
  a.detail = std::to_string(counter_) + " unsuccessful SAE commits since " +
             format_iso8601(period_start_.value_or(f.timestamp));
  sink_.alert(std::move(a));
  reset();
}

void TimingDetector::exclude(const std::vector<std::uint64_t>& frames) {
  std::erase_if(pending_, [&](const Pending& p) {
    if (std::find(frames.begin(), frames.end(), p.frame) == frames.end()) return false;
    --counter_;
    return true;
  });
}

void TimingDetector::on_success(const MacAddr& client, TimePoint t) {
  std::erase_if(pending_, [&](const Pending& p) {
    if (p.mac != client || t - p.t > cfg_.flood_success_wait) return false;
    --counter_;
    return true;
  });
}

void TimingDetector::advance(TimePoint now) {
  if (!period_start_) period_start_ = now;
  if (now - *period_start_ >= cfg_.timing_reset_period) {
    const auto periods = (now - *period_start_) / cfg_.timing_reset_period;
    *period_start_ += periods * cfg_.timing_reset_period;
    reset();
  }
  while (!pending_.empty() && now - pending_.front().t > cfg_.flood_success_wait) pending_.pop_front();
}

void TimingDetector::reset() {
  counter_ = 0;
  pending_.clear();
}

}  // namespace wids::detail
