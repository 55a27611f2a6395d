// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/engine.hpp"

#include <tuple>

#include "detectors/detectors.hpp"

namespace wids {

struct Engine::Impl {
  explicit Impl(DetectorConfig c)
      : cfg(std::move(c)),
        flood(cfg, sink),
        timing(cfg, sink),
        downgrade(cfg, sink),
        deauth(cfg, sink),
        commit(cfg, sink),
        beacons(cfg, sink) {}

  DetectorConfig cfg;
  detail::Sink sink;
  detail::AuthFloodDetector flood;
  detail::TimingDetector timing;
  detail::DowngradeDetector downgrade;
  detail::DeauthRaceDetector deauth;
  detail::CommitRaceDetector commit;
  detail::BeaconFloodDetector beacons;

  std::optional<TimePoint> clock;
  std::map<MacAddr, std::uint16_t> last_seq;
  std::map<std::tuple<AlertKind, std::vector<MacAddr>, std::vector<MacAddr>>, TimePoint> last_alert;
  EngineStats stats;
  std::vector<std::string> warnings;

  void route(const FrameRecord& f, bool retry);
  std::vector<Alert> emit();
};

void Engine::Impl::route(const FrameRecord& f, bool retry) {
  const MacAddr& ap = cfg.protected_bssid;
  const DispatchClass c = classify(f);
  ++stats.per_block[c];
  switch (c) {
    case DispatchClass::BeaconProbe:
      if (const auto* b = f.body_as<BeaconBody>()) {
        if (f.frame_subtype == subtype::kBeacon && f.bssid == ap && b->ssid == cfg.protected_ssid)
          downgrade.on_beacon(f, *b);
        beacons.on_frame(f, *b);
      }
      break;
    case DispatchClass::Authentication:
      if (const auto* a = f.body_as<AuthBody>()) {
        if (a->is_sae_confirm() && f.source_addr == ap && a->status_code == StatusCode::Success &&
            !f.receiver_addr.is_group()) {
          flood.on_success(f.receiver_addr, f.timestamp);
          timing.on_success(f.receiver_addr, f.timestamp);
        }
        commit.on_auth(f, *a, retry);
        if (!retry && is_connection_request(f, ap)) {
          if (auto window = flood.on_request(f))
            timing.exclude(*window);
          else
            timing.on_request(f);
        }
      }
      break;
    case DispatchClass::Association:
    case DispatchClass::Deauthentication:
    case DispatchClass::Eapol:
      deauth.on_frame(f, c);
      break;
    case DispatchClass::Disassociation:  // logged only
    case DispatchClass::Other:
      break;
  }
}

std::vector<Alert> Engine::Impl::emit() {
  std::vector<Alert> out;
  for (auto& a : sink.take()) {
    a.victim_addrs = detail::sorted_unique(std::move(a.victim_addrs));
    a.suspects = detail::sorted_unique(std::move(a.suspects));
    auto key = std::make_tuple(a.kind, a.victim_addrs, a.suspects);
    auto it = last_alert.find(key);
    if (it != last_alert.end() && a.detected_at - it->second < cfg.alert_cooldown) {
      ++stats.alerts_suppressed;
      continue;
    }
    last_alert[std::move(key)] = a.detected_at;
    ++stats.alerts_emitted;
    out.push_back(std::move(a));
  }
  return out;
}

Engine::Engine(DetectorConfig cfg) {
  cfg.validate();
  impl_ = std::make_unique<Impl>(std::move(cfg));
}
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;
Engine::~Engine() = default;

std::vector<Alert> Engine::process(const FrameRecord& f) {
  Impl& m = *impl_;
  ++m.stats.frames_seen;
  if (m.clock && f.timestamp < *m.clock - m.cfg.out_of_order_slack) {
    ++m.stats.out_of_order_dropped;
    m.warnings.push_back("frame " + std::to_string(f.frame_number) + " dropped: timestamp " +
                         format_iso8601(f.timestamp) + " precedes " + format_iso8601(*m.clock));
    return {};
  }
  if (!m.clock || f.timestamp > *m.clock) m.clock = f.timestamp;
  ++m.stats.frames_processed;

  m.beacons.start(f.timestamp);
  m.timing.advance(f.timestamp);
  if (m.flood.advance(f.timestamp)) m.timing.reset();

  bool retry = false;
  if (f.frame_type != FrameType::Control) {
    auto [it, fresh] = m.last_seq.try_emplace(f.source_addr, f.seq_num);
    retry = !fresh && f.flags.retry && it->second == f.seq_num;
    it->second = f.seq_num;
  }
  if (retry) ++m.stats.retries;

  m.route(f, retry);
  auto out = m.emit();
  m.stats.events = m.sink.counts();
  return out;
}

std::vector<Alert> Engine::signal(const ControlSignal& s) {
  Impl& m = *impl_;
  ++m.stats.signals;
  switch (s.kind) {
    case SignalKind::ApRestarted:
      m.downgrade.ap_restarted(s.at);
      m.beacons.relearn(s.at);
      break;
    case SignalKind::NmsUpdate:
      m.beacons.authorize(s.aps);
      m.beacons.relearn(s.at);
      break;
  }
  return m.emit();
}

void Engine::authorize(const std::vector<AuthorizedAp>& aps) { impl_->beacons.authorize(aps); }

std::vector<Alert> Engine::finish() {
  Impl& m = *impl_;
  if (m.flood.finish()) m.timing.reset();
  auto out = m.emit();
  m.stats.events = m.sink.counts();
  return out;
}

void Engine::set_observer(Observer obs) { impl_->sink.set_observer(std::move(obs)); }
const EngineStats& Engine::stats() const { return impl_->stats; }
const std::vector<std::string>& Engine::warnings() const { return impl_->warnings; }
const DetectorConfig& Engine::config() const { return impl_->cfg; }
std::uint32_t Engine::timing_counter() const { return impl_->timing.counter(); }

std::vector<Alert> analyze(const std::vector<FrameRecord>& frames, const DetectorConfig& cfg,
                           Engine::Observer observer) {
  Engine engine(cfg);
  if (observer) engine.set_observer(std::move(observer));
  std::vector<Alert> out;
  for (const auto& f : frames) {
    auto a = engine.process(f);
    out.insert(out.end(), std::make_move_iterator(a.begin()), std::make_move_iterator(a.end()));
  }
  auto a = engine.finish();
  out.insert(out.end(), std::make_move_iterator(a.begin()), std::make_move_iterator(a.end()));
  return out;
}

}  // namespace wids
