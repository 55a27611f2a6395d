// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wids3/alert.hpp"
#include "wids3/config.hpp"
#include "wids3/events.hpp"
#include "wids3/frame.hpp"
#include "wids3/mitigate.hpp"

namespace wids::detail {

/// Collects alerts and abnormal events produced while handling one input.
class Sink {
 public:
  using Observer = std::function<void(const AbnormalEvent&)>;

  void set_observer(Observer obs) { observer_ = std::move(obs); }
  void event(AbnormalEvent e) {
    ++counts_[e.source];
    if (observer_) observer_(e);
  }
  void alert(Alert a) { pending_.push_back(std::move(a)); }
  std::vector<Alert> take() { return std::exchange(pending_, {}); }
  const std::map<EventSource, std::uint64_t>& counts() const { return counts_; }

 private:
  Observer observer_;
  std::vector<Alert> pending_;
  std::map<EventSource, std::uint64_t> counts_;
};

std::vector<MacAddr> sorted_unique(std::vector<MacAddr> v);

/// Unsuccessful-connection flood: rolling buffer of counted SAE commits.
class AuthFloodDetector {
 public:
  AuthFloodDetector(const DetectorConfig& cfg, Sink& sink) : cfg_(cfg), sink_(sink) {}

  /// Counted request. Returns the frames of a new flood window, if any.
  std::optional<std::vector<std::uint64_t>> on_request(const FrameRecord& f);
  /// AP -> client SAE confirm with status Success.
  void on_success(const MacAddr& client, TimePoint t);
  /// Settle pending windows whose wait ended before `now`. True if an alert fired.
  bool advance(TimePoint now);
  bool finish();

 private:
  struct Entry {
    TimePoint t;
    MacAddr mac;
    std::uint64_t frame;
  };
  struct Pending {
    TimePoint at;
    TimePoint deadline;
    std::vector<Entry> entries;
  };
  bool settle(const Pending& p);
  bool confirm(const Pending& p);
  bool fire(const Pending& p);

  const DetectorConfig& cfg_;
  Sink& sink_;
  std::deque<Entry> buffer_;
  std::deque<Pending> pending_;
  std::map<MacAddr, TimePoint> last_success_;
  std::optional<TimePoint> anchor_;
  std::vector<std::uint32_t> windows_;
  std::optional<Pending> last_confirmed_;
};

/// Global counter of unsuccessful SAE commits.
class TimingDetector {
 public:
  TimingDetector(const DetectorConfig& cfg, Sink& sink) : cfg_(cfg), sink_(sink) {}

  void on_request(const FrameRecord& f);
  /// Requests that formed a flood window belong to the flood detector.
  void exclude(const std::vector<std::uint64_t>& frames);
  void on_success(const MacAddr& client, TimePoint t);
  void advance(TimePoint now);
  void reset();
  std::uint32_t counter() const { return counter_; }

 private:
  struct Pending {
    TimePoint t;
    MacAddr mac;
    std::uint64_t frame;
  };
  const DetectorConfig& cfg_;
  Sink& sink_;
  std::uint32_t counter_ = 0;
  std::optional<TimePoint> period_start_;
  std::deque<Pending> pending_;
};

/// RSNE mismatch between consecutive protected-network beacons.
class DowngradeDetector {
 public:
  DowngradeDetector(const DetectorConfig& cfg, Sink& sink) : cfg_(cfg), sink_(sink) {}

  void on_beacon(const FrameRecord& f, const BeaconBody& b);
  void ap_restarted(TimePoint at);

 private:
  struct Seen {
    TimePoint t;
    std::size_t akm_count;
    bool sae;
    std::uint64_t frame;
  };
  const DetectorConfig& cfg_;
  Sink& sink_;
  std::deque<Seen> beacons_;
  std::deque<std::pair<TimePoint, std::uint64_t>> events_;
  std::optional<TimePoint> ignore_until_;
};

/// Deauthentication racing the association / 4-way handshake.
class DeauthRaceDetector {
 public:
  DeauthRaceDetector(const DetectorConfig& cfg, Sink& sink) : cfg_(cfg), sink_(sink) {}

  void on_frame(const FrameRecord& f, DispatchClass c);

 private:
  enum class Stage { Idle, Requested, Associated };
  struct Client {
    std::optional<std::pair<TimePoint, std::uint64_t>> deauth;
    Stage stage = Stage::Idle;
    std::vector<std::uint64_t> stage_frames;
    std::optional<std::uint64_t> attempt;          // assoc request opening the attempt
    std::optional<std::uint64_t> counted_attempt;  // attempt already counted
    std::deque<std::pair<TimePoint, std::vector<std::uint64_t>>> events;
  };
  void abnormal(const MacAddr& x, Client& c, const FrameRecord& f, EventSource src,
                std::vector<std::uint64_t> frames);

  const DetectorConfig& cfg_;
  Sink& sink_;
  std::map<MacAddr, Client> clients_;
};

/// Spoofed commit rejection racing the AP's genuine success.
class CommitRaceDetector {
 public:
  CommitRaceDetector(const DetectorConfig& cfg, Sink& sink) : cfg_(cfg), sink_(sink) {}

  /// Retried success frames repeat a reply already judged and are ignored.
  void on_auth(const FrameRecord& f, const AuthBody& a, bool retry);

 private:
  struct Rejection {
    StatusCode status;
    TimePoint t;
    std::uint64_t frame;
    std::optional<std::uint16_t> group;
  };
  struct Detection {
    std::uint16_t group;
    std::vector<std::uint64_t> frames;
  };
  const DetectorConfig& cfg_;
  Sink& sink_;
  std::map<MacAddr, Rejection> pending_;
  std::map<MacAddr, std::uint16_t> last_commit_group_;
  std::map<MacAddr, std::vector<Detection>> history_;
};

/// Security strength in bits of an SAE finite cyclic group.
unsigned group_strength(std::uint16_t group);

/// Unauthorized beacon / probe-response bursts, plus rogue-AP marking.
class BeaconFloodDetector {
 public:
  BeaconFloodDetector(const DetectorConfig& cfg, Sink& sink)
      : cfg_(cfg), sink_(sink), rogue_(cfg.rogue_persistence) {}

  /// Learning starts at the first frame of the trace.
  void start(TimePoint t) {
    if (!learn_until_) learn_until_ = t + cfg_.learning_period;
  }
  void on_frame(const FrameRecord& f, const BeaconBody& b);
  void relearn(TimePoint at);
  void authorize(const std::vector<AuthorizedAp>& aps);
  bool learning(TimePoint t) const { return !learn_until_ || t < *learn_until_; }

 private:
  struct Burst {
    std::deque<std::pair<TimePoint, std::uint64_t>> frames;
  };
  void burst(Burst& b, const FrameRecord& f, bool probe);

  const DetectorConfig& cfg_;
  Sink& sink_;
  std::optional<TimePoint> learn_until_;
  std::set<MacAddr> bssids_;
  std::set<std::string> ssids_;
  Burst beacons_;
  Burst probes_;
  std::deque<std::pair<TimePoint, AuthorizedAp>> recent_unauthorized_;
  RogueTracker rogue_;
};

}  // namespace wids::detail
