// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/dot11.hpp"

#include <array>
#include <cstring>
#include <string>

#include "wids3/errors.hpp"

namespace wids {
namespace {

struct Truncated {};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t pos() const { return pos_; }
  bool has(std::size_t n) const { return remaining() >= n; }

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t le16() {
    need(2);
    const std::uint16_t v = data_[pos_] | data_[pos_ + 1] << 8;
    pos_ += 2;
    return v;
  }
  std::uint16_t be16() {
    need(2);
    const std::uint16_t v = data_[pos_] << 8 | data_[pos_ + 1];
    pos_ += 2;
    return v;
  }
  std::uint32_t le32() {
    const std::uint32_t lo = le16();
    return lo | static_cast<std::uint32_t>(le16()) << 16;
  }
  std::uint64_t le64() {
    const std::uint64_t lo = le32();
    return lo | static_cast<std::uint64_t>(le32()) << 32;
  }
  /// Suite selectors are transmitted OUI first, then the type byte.
  std::uint32_t selector() {
    need(4);
    const std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) << 24 |
                            data_[pos_ + 1] << 16 | data_[pos_ + 2] << 8 | data_[pos_ + 3];
    pos_ += 4;
    return v;
  }
  MacAddr mac() {
    need(6);
    auto m = MacAddr::from_bytes(data_.subspan(pos_, 6));
    pos_ += 6;
    return m;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  void skip(std::size_t n) { take(n); }
  std::span<const std::uint8_t> rest() const { return data_.subspan(pos_); }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw Truncated{};
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void le16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void be16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void le64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void be64(std::uint64_t v) {
    for (int i = 7; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void selector(std::uint32_t v) {
    for (int i = 3; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void mac(const MacAddr& m) { out_.insert(out_.end(), m.bytes().begin(), m.bytes().end()); }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void zeros(std::size_t n) { out_.insert(out_.end(), n, 0); }
  void element(std::uint8_t id, std::span<const std::uint8_t> payload) {
    u8(id);
    u8(static_cast<std::uint8_t>(payload.size()));
    bytes(payload);
  }

  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

// splitmix64; filler only needs to be a pure function of the frame.
class Filler {
 public:
  explicit Filler(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  void fill(ByteWriter& w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) w.u8(static_cast<std::uint8_t>(next()));
  }

 private:
  std::uint64_t state_;
};

constexpr std::uint8_t kFcToDs = 0x01;
constexpr std::uint8_t kFcFromDs = 0x02;
constexpr std::uint8_t kFcRetry = 0x08;
constexpr std::uint8_t kFcProtected = 0x40;
constexpr std::uint8_t kFcOrder = 0x80;

constexpr std::array<std::uint8_t, 8> kLlcSnapEapol = {0xaa, 0xaa, 0x03, 0x00,
                                                       0x00, 0x00, 0x88, 0x8e};
constexpr std::uint8_t kEapolTypeKey = 3;

constexpr std::uint16_t kKeyInfoPairwise = 0x0008;
constexpr std::uint16_t kKeyInfoInstall = 0x0040;
constexpr std::uint16_t kKeyInfoAck = 0x0080;
constexpr std::uint16_t kKeyInfoMic = 0x0100;
constexpr std::uint16_t kKeyInfoSecure = 0x0200;
constexpr std::uint16_t kKeyInfoEncryptedData = 0x1000;

constexpr std::array<std::uint8_t, 8> kBasicRates = {0x82, 0x84, 0x8b, 0x96,
                                                     0x0c, 0x12, 0x18, 0x24};

bool sae_commit_carries_group(StatusCode s) {
  return s == StatusCode::Success || s == StatusCode::AntiCloggingTokenRequired ||
         s == StatusCode::GroupNotSupported || s == StatusCode::SaeHashToElement;
}

// Prime length and scalar length in bytes for the groups SAE allows.
struct GroupSizes {
  std::size_t prime;
  std::size_t order;
  bool ecc;
};

GroupSizes group_sizes(std::uint16_t group) {
  switch (group) {
    case 19: return {32, 32, true};
    case 20: return {48, 48, true};
    case 21: return {66, 66, true};
    case 25: return {24, 24, true};
    case 26: return {28, 28, true};
    case 27: return {28, 28, true};
    case 28: return {32, 32, true};
    case 29: return {48, 48, true};
    case 30: return {64, 64, true};
    case 22: return {128, 20, false};
    case 23: return {256, 28, false};
    case 24: return {256, 32, false};
    case 15: return {384, 48, false};
    default: return {32, 32, true};
  }
}

struct Elements {
  std::optional<std::string> ssid;
  std::optional<RsnInfo> rsn;
};

// Tolerant: an element overrunning the body ends the walk.
Elements parse_elements(std::span<const std::uint8_t> data) {
  Elements out;
  ByteReader r(data);
  while (r.has(2)) {
    const std::uint8_t id = r.u8();
    const std::uint8_t len = r.u8();
    if (!r.has(len)) break;
    const auto payload = r.take(len);
    if (id == kElementSsid && !out.ssid) {
      out.ssid.emplace(payload.begin(), payload.end());
    } else if (id == kElementRsn && !out.rsn) {
      try {
        out.rsn = parse_rsne(payload);
      } catch (const MalformedElement&) {
        // frame kept, RSN reported absent
      }
    }
  }
  return out;
}

std::uint8_t eapol_message_number(std::uint16_t key_info) {
  const bool ack = key_info & kKeyInfoAck;
  if (key_info & kKeyInfoPairwise) {
    if (ack) return (key_info & kKeyInfoInstall) ? 3 : 1;
    return (key_info & kKeyInfoSecure) ? 4 : 2;
  }
  return ack ? 1 : 2;  // group key handshake
}

std::optional<EapolKeyBody> parse_eapol(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  if (!r.has(kLlcSnapEapol.size() + 7)) return std::nullopt;
  if (std::memcmp(r.take(kLlcSnapEapol.size()).data(), kLlcSnapEapol.data(),
                  kLlcSnapEapol.size()) != 0)
    return std::nullopt;
  r.u8();  // protocol version
  if (r.u8() != kEapolTypeKey) return std::nullopt;
  r.be16();  // body length
  EapolKeyBody body;
  body.descriptor_type = r.u8();
  body.msg_nr = eapol_message_number(r.be16());
  return body;
}

FrameBody decode_management(std::uint8_t st, ByteReader& r) {
  switch (st) {
    case subtype::kBeacon:
    case subtype::kProbeResponse: {
      BeaconBody b;
      b.beacon_timestamp = r.le64();
      b.beacon_interval = r.le16();
      r.le16();  // capability
      auto el = parse_elements(r.rest());
      b.ssid = el.ssid.value_or("");
      b.rsn = std::move(el.rsn);
      return b;
    }
    case subtype::kAuthentication: {
      AuthBody a;
      a.auth_alg = static_cast<AuthAlgorithm>(r.le16());
      a.auth_seq = r.le16();
      a.status_code = static_cast<StatusCode>(r.le16());
      if (a.is_sae()) {
        if (a.auth_seq == 1) a.sae_message_type = SaeMessageType::Commit;
        if (a.auth_seq == 2) a.sae_message_type = SaeMessageType::Confirm;
        if (a.auth_seq == 1 && sae_commit_carries_group(a.status_code) && r.has(2))
          a.cyclic_group = r.le16();
      }
      return a;
    }
    case subtype::kAssocRequest: {
      AssocBody a;
      r.le16();  // capability
      r.le16();  // listen interval
      auto el = parse_elements(r.rest());
      a.ssid = std::move(el.ssid);
      a.rsn = std::move(el.rsn);
      return a;
    }
    case subtype::kAssocResponse: {
      AssocBody a;
      r.le16();  // capability
      a.status_code = static_cast<StatusCode>(r.le16());
      a.aid = r.le16() & 0x3fff;
      auto el = parse_elements(r.rest());
      a.ssid = std::move(el.ssid);
      a.rsn = std::move(el.rsn);
      return a;
    }
    case subtype::kDeauthentication:
    case subtype::kDisassociation:
      return ReasonBody{static_cast<ReasonCode>(r.le16())};
    default:
      return std::monostate{};
  }
}

}  // namespace

RsnInfo parse_rsne(std::span<const std::uint8_t> payload) {
  if (payload.size() < 2) throw MalformedElement("RSN element shorter than its version field");
  RsnInfo rsn;
  ByteReader r(payload);
  try {
    r.le16();  // version
    if (r.remaining() == 0) return rsn;
    rsn.group_cipher = r.selector();
    if (r.remaining() == 0) return rsn;
    const std::uint16_t n_pairwise = r.le16();
    for (std::uint16_t i = 0; i < n_pairwise; ++i) rsn.pairwise_ciphers.push_back(r.selector());
    if (r.remaining() == 0) return rsn;
    const std::uint16_t n_akm = r.le16();
    for (std::uint16_t i = 0; i < n_akm; ++i) rsn.akm_types.push_back(AkmSuite{r.selector()});
    if (r.remaining() == 0) return rsn;
    const std::uint16_t caps = r.le16();
    rsn.mfp_required = caps & 0x0040;
    rsn.mfp_capable = caps & 0x0080;
  } catch (const Truncated&) {
    throw MalformedElement("RSN element truncated at byte " + std::to_string(r.pos()));
  }
  return rsn;
}

std::vector<std::uint8_t> encode_rsne(const RsnInfo& rsn) {
  ByteWriter w;
  w.le16(1);
  w.selector(rsn.group_cipher.value_or(kCipherCcmp128));
  w.le16(static_cast<std::uint16_t>(rsn.pairwise_ciphers.size()));
  for (auto c : rsn.pairwise_ciphers) w.selector(c);
  w.le16(static_cast<std::uint16_t>(rsn.akm_types.size()));
  for (auto a : rsn.akm_types) w.selector(a.selector);
  std::uint16_t caps = 0;
  if (rsn.mfp_required) caps |= 0x0040;
  if (rsn.mfp_capable) caps |= 0x0080;
  w.le16(caps);
  return std::move(w.buffer());
}

FrameRecord decode_dot11(std::span<const std::uint8_t> mpdu, std::uint64_t frame_number,
                         TimePoint timestamp) {
  FrameRecord f;
  f.frame_number = frame_number;
  f.timestamp = timestamp;
  ByteReader r(mpdu);
  try {
    const std::uint8_t fc0 = r.u8();
    const std::uint8_t fc1 = r.u8();
    if ((fc0 & 0x03) != 0) throw MalformedFrame("unknown 802.11 protocol version");
    f.frame_type = static_cast<FrameType>((fc0 >> 2) & 0x03);
    f.frame_subtype = fc0 >> 4;
    f.flags.to_ds = fc1 & kFcToDs;
    f.flags.from_ds = fc1 & kFcFromDs;
    f.flags.retry = fc1 & kFcRetry;
    f.flags.protected_frame = fc1 & kFcProtected;
    r.le16();  // duration
    f.receiver_addr = r.mac();

    switch (f.frame_type) {
      case FrameType::Control:
      case FrameType::Extension:
        if (r.has(6)) f.source_addr = r.mac();
        return f;
      case FrameType::Management: {
        f.source_addr = r.mac();
        f.bssid = r.mac();
        f.seq_num = r.le16() >> 4;
        if (fc1 & kFcOrder) r.skip(4);  // HT control
        if (!f.flags.protected_frame) f.body = decode_management(f.frame_subtype, r);
        return f;
      }
      case FrameType::Data: {
        const MacAddr a2 = r.mac();
        const MacAddr a3 = r.mac();
        f.seq_num = r.le16() >> 4;
        MacAddr a4;
        if (f.flags.to_ds && f.flags.from_ds) a4 = r.mac();
        const bool qos = f.frame_subtype & 0x08;
        if (qos) r.skip(2);
        if (qos && (fc1 & kFcOrder)) r.skip(4);
        if (!f.flags.to_ds && !f.flags.from_ds) {
          f.source_addr = a2;
          f.bssid = a3;
        } else if (f.flags.to_ds && !f.flags.from_ds) {
          f.source_addr = a2;
          f.bssid = f.receiver_addr;
        } else if (!f.flags.to_ds && f.flags.from_ds) {
          f.source_addr = a3;
          f.bssid = a2;
        } else {
          f.source_addr = a4;
        }
        const bool null_data = f.frame_subtype & 0x04;
        if (!null_data && !f.flags.protected_frame) {
          if (auto eapol = parse_eapol(r.rest())) f.body = *eapol;
        }
        return f;
      }
    }
  } catch (const Truncated&) {
    throw MalformedFrame("802.11 frame truncated at byte " + std::to_string(r.pos()) + " of " +
                         std::to_string(mpdu.size()));
  }
  return f;
}

std::vector<std::uint8_t> encode_dot11(const FrameRecord& f) {
  ByteWriter w;
  Filler filler(f.frame_number * 0x100000001b3ull ^ f.seq_num);
  std::uint8_t fc1 = 0;
  if (f.flags.to_ds) fc1 |= kFcToDs;
  if (f.flags.from_ds) fc1 |= kFcFromDs;
  if (f.flags.retry) fc1 |= kFcRetry;
  if (f.flags.protected_frame) fc1 |= kFcProtected;
  w.u8(static_cast<std::uint8_t>(f.frame_subtype << 4 | static_cast<std::uint8_t>(f.frame_type) << 2));
  w.u8(fc1);
  w.le16(f.receiver_addr.is_group() ? 0 : 314);
  w.mac(f.receiver_addr);

  if (f.frame_type == FrameType::Control || f.frame_type == FrameType::Extension) {
    if (!f.source_addr.is_zero()) w.mac(f.source_addr);
    return std::move(w.buffer());
  }

  if (f.frame_type == FrameType::Data) {
    if (!f.flags.to_ds && !f.flags.from_ds) {
      w.mac(f.source_addr);
      w.mac(f.bssid);
    } else if (f.flags.to_ds && !f.flags.from_ds) {
      w.mac(f.source_addr);
      w.mac(f.bssid);  // destination: the AP itself
    } else if (!f.flags.to_ds && f.flags.from_ds) {
      w.mac(f.bssid);
      w.mac(f.source_addr);
    } else {
      w.mac(f.bssid);
      w.mac(f.receiver_addr);
    }
    w.le16(static_cast<std::uint16_t>(f.seq_num << 4));
    if (f.flags.to_ds && f.flags.from_ds) w.mac(f.source_addr);
    if (f.frame_subtype & 0x08) w.le16(0);  // QoS control
    if (f.flags.protected_frame) {
      filler.fill(w, 24);
    } else if (const auto* k = f.body_as<EapolKeyBody>()) {
      static constexpr std::uint16_t kKeyInfo[5] = {
          0, kKeyInfoPairwise | kKeyInfoAck, kKeyInfoPairwise | kKeyInfoMic,
          kKeyInfoPairwise | kKeyInfoInstall | kKeyInfoAck | kKeyInfoMic | kKeyInfoSecure |
              kKeyInfoEncryptedData,
          kKeyInfoPairwise | kKeyInfoMic | kKeyInfoSecure};
      const std::uint8_t msg = (k->msg_nr >= 1 && k->msg_nr <= 4) ? k->msg_nr : 1;
      const std::size_t key_data_len = msg == 2 ? 22 : msg == 3 ? 56 : 0;
      w.bytes(kLlcSnapEapol);
      w.u8(2);  // 802.1X-2004
      w.u8(kEapolTypeKey);
      w.be16(static_cast<std::uint16_t>(95 + key_data_len));
      w.u8(k->descriptor_type);
      w.be16(kKeyInfo[msg]);
      w.be16(msg == 1 || msg == 3 ? 16 : 0);  // key length
      w.be64(msg <= 2 ? 1 : 2);               // replay counter
      if (msg == 4) w.zeros(32); else filler.fill(w, 32);  // nonce
      w.zeros(16);                                          // IV
      w.zeros(8);                                           // RSC
      w.zeros(8);                                           // reserved
      if (msg == 1) w.zeros(16); else filler.fill(w, 16);  // MIC
      w.be16(static_cast<std::uint16_t>(key_data_len));
      filler.fill(w, key_data_len);
    }
    return std::move(w.buffer());
  }

  // Management
  w.mac(f.source_addr);
  w.mac(f.bssid);
  w.le16(static_cast<std::uint16_t>(f.seq_num << 4));
  if (f.flags.protected_frame) {
    filler.fill(w, 16);
    return std::move(w.buffer());
  }
  auto put_common_elements = [&](const std::optional<std::string>& ssid,
                                 const std::optional<RsnInfo>& rsn, bool with_ds) {
    if (ssid) {
      w.element(kElementSsid, std::span(reinterpret_cast<const std::uint8_t*>(ssid->data()),
                                        std::min<std::size_t>(ssid->size(), 255)));
    }
    w.element(kElementRates, kBasicRates);
    if (with_ds) {
      const std::uint8_t channel = 1;
      w.element(kElementDsParams, std::span(&channel, 1));
    }
    if (rsn) {
      const auto payload = encode_rsne(*rsn);
      w.element(kElementRsn, payload);
    }
  };

  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, BeaconBody>) {
          w.le64(body.beacon_timestamp);
          w.le16(body.beacon_interval);
          w.le16(body.rsn ? 0x0411 : 0x0401);
          put_common_elements(body.ssid, body.rsn, true);
        } else if constexpr (std::is_same_v<T, AuthBody>) {
          w.le16(static_cast<std::uint16_t>(body.auth_alg));
          w.le16(body.auth_seq);
          w.le16(static_cast<std::uint16_t>(body.status_code));
          if (body.is_sae_commit() && body.cyclic_group &&
              sae_commit_carries_group(body.status_code)) {
            w.le16(*body.cyclic_group);
            if (body.status_code == StatusCode::Success ||
                body.status_code == StatusCode::SaeHashToElement) {
              const auto sizes = group_sizes(*body.cyclic_group);
              filler.fill(w, sizes.order);                              // scalar
              filler.fill(w, sizes.ecc ? 2 * sizes.prime : sizes.prime);  // element
            } else if (body.status_code == StatusCode::AntiCloggingTokenRequired) {
              filler.fill(w, 32);
            }
          } else if (body.is_sae_confirm() && body.status_code == StatusCode::Success) {
            w.le16(1);  // send-confirm
            filler.fill(w, 32);
          }
        } else if constexpr (std::is_same_v<T, AssocBody>) {
          w.le16(0x0411);
          if (f.frame_subtype == subtype::kAssocResponse) {
            w.le16(static_cast<std::uint16_t>(body.status_code.value_or(StatusCode::Success)));
            w.le16(static_cast<std::uint16_t>(body.aid.value_or(0) | 0xc000));
          } else {
            w.le16(10);  // listen interval
          }
          put_common_elements(body.ssid, body.rsn, false);
        } else if constexpr (std::is_same_v<T, ReasonBody>) {
          w.le16(static_cast<std::uint16_t>(body.reason_code));
        }
      },
      f.body);
  return std::move(w.buffer());
}

RadiotapInfo parse_radiotap(std::span<const std::uint8_t> packet) {
  RadiotapInfo info;
  if (packet.size() < 8) throw MalformedFrame("radiotap header truncated");
  if (packet[0] != 0) throw MalformedFrame("unknown radiotap version");
  info.header_len = packet[2] | packet[3] << 8;
  if (info.header_len < 8 || info.header_len > packet.size())
    throw MalformedFrame("radiotap length exceeds packet");

  const auto hdr = packet.first(info.header_len);
  std::size_t off = 4;
  std::uint32_t present = 0;
  bool first = true;
  for (;;) {
    if (off + 4 > hdr.size()) throw MalformedFrame("radiotap present bitmap truncated");
    const std::uint32_t word = hdr[off] | hdr[off + 1] << 8 | hdr[off + 2] << 16 |
                               static_cast<std::uint32_t>(hdr[off + 3]) << 24;
    if (first) present = word;
    first = false;
    off += 4;
    if (!(word & 0x80000000u)) break;
  }

  // (alignment, size) of the leading fields up to dBm antenna signal.
  static constexpr std::pair<std::size_t, std::size_t> kFields[] = {
      {8, 8}, {1, 1}, {1, 1}, {2, 4}, {2, 2}, {1, 1}};
  for (std::size_t bit = 0; bit < std::size(kFields); ++bit) {
    if (!(present & (1u << bit))) continue;
    const auto [align, size] = kFields[bit];
    off = (off + align - 1) / align * align;
    if (off + size > hdr.size()) throw MalformedFrame("radiotap field overruns header");
    if (bit == 1) {
      info.has_fcs = hdr[off] & 0x10;
      info.bad_fcs = hdr[off] & 0x40;
    } else if (bit == 5) {
      info.antenna_signal_dbm = static_cast<std::int8_t>(hdr[off]);
    }
    off += size;
  }
  return info;
}

}  // namespace wids
