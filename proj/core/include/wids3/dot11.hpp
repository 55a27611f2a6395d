// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wids3/frame.hpp"

namespace wids {

inline constexpr std::uint8_t kElementSsid = 0;
inline constexpr std::uint8_t kElementRates = 1;
inline constexpr std::uint8_t kElementDsParams = 3;
inline constexpr std::uint8_t kElementRsn = 48;

inline constexpr std::uint32_t kCipherCcmp128 = (kIeeeOui << 8) | 4;
inline constexpr std::uint32_t kCipherBipCmac128 = (kIeeeOui << 8) | 6;

/// Parses the payload of an RSN element (element ID 48, header excluded).
/// Throws MalformedElement when a count or selector list is cut short.
RsnInfo parse_rsne(std::span<const std::uint8_t> payload);

/// Element payload (no ID/length header). An absent group cipher encodes as CCMP-128.
std::vector<std::uint8_t> encode_rsne(const RsnInfo& rsn);

/// Decodes a bare 802.11 MPDU (no radiotap, no FCS).
/// Throws MalformedFrame when the MAC header or fixed fields are incomplete.
FrameRecord decode_dot11(std::span<const std::uint8_t> mpdu, std::uint64_t frame_number,
                         TimePoint timestamp);

/// Encodes a record back to an MPDU. Opaque payloads (SAE scalars, nonces) are
/// deterministic filler derived from the frame number.
std::vector<std::uint8_t> encode_dot11(const FrameRecord& frame);

struct RadiotapInfo {
  std::size_t header_len = 0;
  bool has_fcs = false;
  bool bad_fcs = false;
  std::optional<std::int8_t> antenna_signal_dbm;
};

/// Throws MalformedFrame if the radiotap header is inconsistent with the capture length.
RadiotapInfo parse_radiotap(std::span<const std::uint8_t> packet);

}  // namespace wids
