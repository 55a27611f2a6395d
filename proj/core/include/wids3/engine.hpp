// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wids3/alert.hpp"
#include "wids3/config.hpp"
#include "wids3/events.hpp"
#include "wids3/frame.hpp"

namespace wids {

struct EngineStats {
  std::uint64_t frames_seen = 0;
  std::uint64_t frames_processed = 0;
  std::uint64_t out_of_order_dropped = 0;
  std::uint64_t retries = 0;
  std::uint64_t signals = 0;
  std::uint64_t alerts_emitted = 0;
  std::uint64_t alerts_suppressed = 0;  // swallowed by the cooldown
  std::map<DispatchClass, std::uint64_t> per_block;
  std::map<EventSource, std::uint64_t> events;
};

/// One analysis session. Frames must arrive in timestamp order; a frame more
/// than out_of_order_slack older than the newest one seen is dropped.
class Engine {
 public:
  using Observer = std::function<void(const AbnormalEvent&)>;

  explicit Engine(DetectorConfig cfg);
  Engine(Engine&&) noexcept;
  Engine& operator=(Engine&&) noexcept;
  ~Engine();

  /// Alerts triggered by this frame, after cooldown suppression.
  std::vector<Alert> process(const FrameRecord& frame);
  std::vector<Alert> signal(const ControlSignal& s);
  /// Extends the authorized-AP set without re-entering learning.
  void authorize(const std::vector<AuthorizedAp>& aps);
  /// Settles pending flood windows at end of input.
  std::vector<Alert> finish();

  void set_observer(Observer obs);
  const EngineStats& stats() const;
  const std::vector<std::string>& warnings() const;
  const DetectorConfig& config() const;
  std::uint32_t timing_counter() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Batch form: process every frame, then finish.
std::vector<Alert> analyze(const std::vector<FrameRecord>& frames, const DetectorConfig& cfg,
                           Engine::Observer observer = {});

}  // namespace wids
