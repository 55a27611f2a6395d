// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wids3/mac.hpp"
#include "wids3/time.hpp"

namespace wids {

/// Intermediate detector findings that precede (or never become) alerts.
enum class EventSource {
  FloodWindow,         // 8 counted requests inside the flood window
  FloodConfirmed,      // pending flood window survived the success wait
  FloodCancelled,      // majority of the window's requesters succeeded
  DowngradeMismatch,   // RSNE mismatch between buffered beacons
  DeauthFollow,        // assoc/EAPOL shortly after a deauth
  DeauthReason7,       // assoc req, assoc success, client deauth reason 7
  CommitRejection,     // AP-addressed rejection 0x004d / 0x0001 stored
  UnauthorizedBeacon,  // beacon outside the authorized list
  UnauthorizedProbe,   // probe response outside the authorized list
  BeaconBurst,         // >= beaconflood_events unauthorized beacons in span
  ProbeBurst,
};

std::string_view to_string(EventSource s);

struct AbnormalEvent {
  EventSource source;
  TimePoint at{};
  std::uint64_t frame_number = 0;      // frame that completed the event
  std::vector<std::uint64_t> frames;   // all frames the event covers
  std::vector<MacAddr> addrs;          // requesters, client, or identity
};

struct AuthorizedAp {
  MacAddr bssid;
  std::string ssid;

  auto operator<=>(const AuthorizedAp&) const = default;
};

enum class SignalKind { ApRestarted, NmsUpdate };

/// In-band control event; delivered between frames in timestamp order.
struct ControlSignal {
  SignalKind kind = SignalKind::ApRestarted;
  TimePoint at{};
  std::vector<AuthorizedAp> aps;  // NmsUpdate: additions to the authorized list
};

}  // namespace wids
