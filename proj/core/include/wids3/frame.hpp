// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wids3/mac.hpp"
#include "wids3/time.hpp"

namespace wids {

enum class FrameType : std::uint8_t { Management = 0, Control = 1, Data = 2, Extension = 3 };

namespace subtype {
// Management
inline constexpr std::uint8_t kAssocRequest = 0;
inline constexpr std::uint8_t kAssocResponse = 1;
inline constexpr std::uint8_t kReassocRequest = 2;
inline constexpr std::uint8_t kReassocResponse = 3;
inline constexpr std::uint8_t kProbeRequest = 4;
inline constexpr std::uint8_t kProbeResponse = 5;
inline constexpr std::uint8_t kBeacon = 8;
inline constexpr std::uint8_t kDisassociation = 10;
inline constexpr std::uint8_t kAuthentication = 11;
inline constexpr std::uint8_t kDeauthentication = 12;
inline constexpr std::uint8_t kAction = 13;
// Data
inline constexpr std::uint8_t kData = 0;
inline constexpr std::uint8_t kQosData = 8;
// Control
inline constexpr std::uint8_t kAck = 13;
}  // namespace subtype

// Numeric values are the on-air 16-bit codes; unnamed codes are representable.
enum class StatusCode : std::uint16_t {
  Success = 0x0000,
  UnspecifiedFailure = 0x0001,
  AntiCloggingTokenRequired = 0x004c,
  GroupNotSupported = 0x004d,
  SaeHashToElement = 0x007e,
};

enum class ReasonCode : std::uint16_t {
  Unspecified = 1,
  PreviousAuthNoLongerValid = 2,
  LeavingBss = 3,
  Inactivity = 4,
  Class2FromNonauthenticated = 6,
  Class3FromNonassociated = 7,
};

enum class AuthAlgorithm : std::uint16_t { OpenSystem = 0, SharedKey = 1, FastBssTransition = 2, Sae = 3 };

enum class SaeMessageType : std::uint16_t { Commit = 1, Confirm = 2 };

enum class AkmKind { Psk, Sae, Other };

inline constexpr std::uint32_t kIeeeOui = 0x000fac;

/// OUI (24 bits) followed by the suite type byte.
struct AkmSuite {
  std::uint32_t selector = 0;

  static constexpr AkmSuite ieee(std::uint8_t type) { return {(kIeeeOui << 8) | type}; }
  static constexpr AkmSuite psk() { return ieee(2); }
  static constexpr AkmSuite sae() { return ieee(8); }

  std::uint32_t oui() const { return selector >> 8; }
  std::uint8_t type() const { return static_cast<std::uint8_t>(selector & 0xff); }
  AkmKind kind() const;

  bool operator==(const AkmSuite&) const = default;
};

struct RsnInfo {
  std::optional<std::uint32_t> group_cipher;
  std::vector<std::uint32_t> pairwise_ciphers;
  std::vector<AkmSuite> akm_types;
  bool mfp_required = false;
  bool mfp_capable = false;

  std::size_t akm_count() const { return akm_types.size(); }
  bool has(AkmKind kind) const;

  bool operator==(const RsnInfo&) const = default;
};

/// Beacon or probe response.
struct BeaconBody {
  std::uint16_t beacon_interval = 100;  // TU, 1 TU = 1024 us
  std::uint64_t beacon_timestamp = 0;   // TSF
  std::string ssid;
  std::optional<RsnInfo> rsn;

  bool operator==(const BeaconBody&) const = default;
};

struct AuthBody {
  AuthAlgorithm auth_alg = AuthAlgorithm::OpenSystem;
  std::uint16_t auth_seq = 1;
  StatusCode status_code = StatusCode::Success;
  std::optional<SaeMessageType> sae_message_type;
  std::optional<std::uint16_t> cyclic_group;

  bool is_sae() const { return auth_alg == AuthAlgorithm::Sae; }
  bool is_sae_commit() const { return is_sae() && auth_seq == 1; }
  bool is_sae_confirm() const { return is_sae() && auth_seq == 2; }

  bool operator==(const AuthBody&) const = default;
};

/// Association request or response.
struct AssocBody {
  std::optional<std::string> ssid;
  std::optional<RsnInfo> rsn;
  std::optional<StatusCode> status_code;
  std::optional<std::uint16_t> aid;

  bool operator==(const AssocBody&) const = default;
};

/// Deauthentication or disassociation.
struct ReasonBody {
  ReasonCode reason_code = ReasonCode::Unspecified;

  bool operator==(const ReasonBody&) const = default;
};

struct EapolKeyBody {
  std::uint8_t descriptor_type = 2;  // 2 = RSN key descriptor
  std::uint8_t msg_nr = 1;           // 1..4

  bool operator==(const EapolKeyBody&) const = default;
};

using FrameBody =
    std::variant<std::monostate, BeaconBody, AuthBody, AssocBody, ReasonBody, EapolKeyBody>;

struct FrameFlags {
  bool to_ds = false;
  bool from_ds = false;
  bool retry = false;
  bool protected_frame = false;

  bool operator==(const FrameFlags&) const = default;
};

struct FrameRecord {
  std::uint64_t frame_number = 0;  // 1-based capture ordinal
  TimePoint timestamp{};
  MacAddr source_addr;
  MacAddr receiver_addr;
  MacAddr bssid;
  std::uint16_t seq_num = 0;  // 0..4095
  FrameType frame_type = FrameType::Management;
  std::uint8_t frame_subtype = 0;
  FrameFlags flags;
  std::optional<std::int8_t> rssi_dbm;
  FrameBody body;

  template <class T>
  const T* body_as() const {
    return std::get_if<T>(&body);
  }
  bool is_mgmt(std::uint8_t st) const {
    return frame_type == FrameType::Management && frame_subtype == st;
  }

  bool operator==(const FrameRecord&) const = default;
};

/// Equality restricted to the columns of the CSV interchange format.
bool schema_equal(const FrameRecord& a, const FrameRecord& b);

/// Logic blocks A-F of the detector fan-out.
enum class DispatchClass {
  BeaconProbe,       // A
  Authentication,    // B
  Association,       // C
  Deauthentication,  // D
  Disassociation,    // E
  Eapol,             // F
  Other,
};

DispatchClass classify(const FrameRecord& frame);
char block_letter(DispatchClass c);

/// A client's SAE commit addressed to the AP. AP replies and confirms are not requests.
bool is_connection_request(const FrameRecord& frame, const MacAddr& ap);

std::string_view to_string(FrameType t);
std::string status_name(StatusCode s);
std::string reason_name(ReasonCode r);

}  // namespace wids
