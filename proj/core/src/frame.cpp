// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/frame.hpp"

#include <algorithm>
#include <cstdio>

namespace wids {

AkmKind AkmSuite::kind() const {
  if (oui() != kIeeeOui) return AkmKind::Other;
  switch (type()) {
    case 2:
      return AkmKind::Psk;
    case 8:
      return AkmKind::Sae;
    default:
      return AkmKind::Other;
  }
}

bool RsnInfo::has(AkmKind kind) const {
  return std::any_of(akm_types.begin(), akm_types.end(),
                     [kind](const AkmSuite& a) { return a.kind() == kind; });
}

namespace {

// Only the RSNE members that have a CSV column survive the interchange format.
bool rsn_schema_equal(const std::optional<RsnInfo>& a, const std::optional<RsnInfo>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || a->akm_types == b->akm_types;
}

struct SchemaBodyEq {
  const FrameBody& other;

  bool operator()(const std::monostate&) const {
    return std::holds_alternative<std::monostate>(other);
  }
  bool operator()(const BeaconBody& a) const {
    const auto* b = std::get_if<BeaconBody>(&other);
    return b && a.beacon_interval == b->beacon_interval &&
           a.beacon_timestamp == b->beacon_timestamp && a.ssid == b->ssid &&
           rsn_schema_equal(a.rsn, b->rsn);
  }
  bool operator()(const AssocBody& a) const {
    const auto* b = std::get_if<AssocBody>(&other);
    return b && a.ssid == b->ssid && a.status_code == b->status_code && a.aid == b->aid &&
           rsn_schema_equal(a.rsn, b->rsn);
  }
  template <class T>
  bool operator()(const T& a) const {
    const auto* b = std::get_if<T>(&other);
    return b && a == *b;
  }
};

}  // namespace

bool schema_equal(const FrameRecord& a, const FrameRecord& b) {
  return a.frame_number == b.frame_number && a.timestamp == b.timestamp &&
         a.source_addr == b.source_addr && a.receiver_addr == b.receiver_addr &&
         a.bssid == b.bssid && a.seq_num == b.seq_num && a.frame_type == b.frame_type &&
         a.frame_subtype == b.frame_subtype && std::visit(SchemaBodyEq{b.body}, a.body);
}

DispatchClass classify(const FrameRecord& frame) {
  if (frame.frame_type == FrameType::Management) {
    switch (frame.frame_subtype) {
      case subtype::kBeacon:
      case subtype::kProbeResponse:
        return DispatchClass::BeaconProbe;
      case subtype::kAuthentication:
        return DispatchClass::Authentication;
      case subtype::kAssocRequest:
      case subtype::kAssocResponse:
        return DispatchClass::Association;
      case subtype::kDeauthentication:
        return DispatchClass::Deauthentication;
      case subtype::kDisassociation:
        return DispatchClass::Disassociation;
      default:
        return DispatchClass::Other;
    }
  }
  if (frame.frame_type == FrameType::Data && frame.body_as<EapolKeyBody>() != nullptr)
    return DispatchClass::Eapol;
  return DispatchClass::Other;
}

char block_letter(DispatchClass c) {
  switch (c) {
    case DispatchClass::BeaconProbe: return 'A';
    case DispatchClass::Authentication: return 'B';
    case DispatchClass::Association: return 'C';
    case DispatchClass::Deauthentication: return 'D';
    case DispatchClass::Disassociation: return 'E';
    case DispatchClass::Eapol: return 'F';
    case DispatchClass::Other: break;
  }
  return '-';
}

bool is_connection_request(const FrameRecord& frame, const MacAddr& ap) {
  if (!frame.is_mgmt(subtype::kAuthentication)) return false;
  if (frame.receiver_addr != ap || frame.source_addr == ap) return false;
  const auto* auth = frame.body_as<AuthBody>();
  return auth != nullptr && auth->is_sae_commit();
}

std::string_view to_string(FrameType t) {
  switch (t) {
    case FrameType::Management: return "Management";
    case FrameType::Control: return "Control";
    case FrameType::Data: return "Data";
    case FrameType::Extension: return "Extension";
  }
  return "?";
}

std::string status_name(StatusCode s) {
  switch (s) {
    case StatusCode::Success: return "Success";
    case StatusCode::UnspecifiedFailure: return "UnspecifiedFailure";
    case StatusCode::AntiCloggingTokenRequired: return "AntiCloggingTokenRequired";
    case StatusCode::GroupNotSupported: return "GroupNotSupported";
    case StatusCode::SaeHashToElement: return "SaeHashToElement";
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%04x", static_cast<unsigned>(s));
  return buf;
}

std::string reason_name(ReasonCode r) {
  switch (r) {
    case ReasonCode::Unspecified: return "Unspecified";
    case ReasonCode::PreviousAuthNoLongerValid: return "PreviousAuthNoLongerValid";
    case ReasonCode::LeavingBss: return "LeavingBss";
    case ReasonCode::Inactivity: return "Inactivity";
    case ReasonCode::Class2FromNonauthenticated: return "Class2FromNonauthenticated";
    case ReasonCode::Class3FromNonassociated: return "Class3FromNonassociated";
  }
  return std::to_string(static_cast<unsigned>(r));
}

}  // namespace wids
