// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "wids3/errors.hpp"

namespace wids {
namespace {

enum Col : std::size_t {
  kNumber,
  kTime,
  kSa,
  kRa,
  kBssid,
  kSeq,
  kType,
  kSubtype,
  kBeaconInterval,
  kBeaconTimestamp,
  kSsid,
  kAkmCount,
  kAkmType,
  kAuthAlg,
  kAuthSeq,
  kStatus,
  kSaeType,
  kGroup,
  kAid,
  kReason,
  kKeyDescType,
  kMsgNr,
  kColumnCount
};
static_assert(kColumnCount == kCsvColumns.size());

std::string hex16(std::uint16_t v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%04x", v);
  return buf;
}

std::string akm_cell(const RsnInfo& rsn) {
  std::string out;
  for (std::size_t i = 0; i < rsn.akm_types.size(); ++i) {
    if (i) out += ',';
    const auto& a = rsn.akm_types[i];
    if (a.oui() == kIeeeOui) {
      out += std::to_string(a.type());
    } else {
      char buf[12];
      std::snprintf(buf, sizeof buf, "0x%08x", a.selector);
      out += buf;
    }
  }
  return out;
}

void put_rsn(std::array<std::string, kColumnCount>& row, const std::optional<RsnInfo>& rsn) {
  if (!rsn) return;
  row[kAkmCount] = std::to_string(rsn->akm_count());
  row[kAkmType] = akm_cell(*rsn);
}

std::array<std::string, kColumnCount> to_row(const FrameRecord& f) {
  std::array<std::string, kColumnCount> row;
  row[kNumber] = std::to_string(f.frame_number);
  row[kTime] = std::to_string(to_micros(f.timestamp));
  row[kSa] = f.source_addr.to_string();
  row[kRa] = f.receiver_addr.to_string();
  row[kBssid] = f.bssid.to_string();
  row[kSeq] = std::to_string(f.seq_num);
  row[kType] = std::to_string(static_cast<int>(f.frame_type));
  row[kSubtype] = std::to_string(f.frame_subtype);
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, BeaconBody>) {
          row[kBeaconInterval] = std::to_string(b.beacon_interval);
          row[kBeaconTimestamp] = std::to_string(b.beacon_timestamp);
          row[kSsid] = b.ssid;
          put_rsn(row, b.rsn);
        } else if constexpr (std::is_same_v<T, AuthBody>) {
          row[kAuthAlg] = std::to_string(static_cast<unsigned>(b.auth_alg));
          row[kAuthSeq] = std::to_string(b.auth_seq);
          row[kStatus] = hex16(static_cast<std::uint16_t>(b.status_code));
          if (b.sae_message_type)
            row[kSaeType] = std::to_string(static_cast<unsigned>(*b.sae_message_type));
          if (b.cyclic_group) row[kGroup] = std::to_string(*b.cyclic_group);
        } else if constexpr (std::is_same_v<T, AssocBody>) {
          if (b.ssid) row[kSsid] = *b.ssid;
          put_rsn(row, b.rsn);
          if (b.status_code) row[kStatus] = hex16(static_cast<std::uint16_t>(*b.status_code));
          if (b.aid) row[kAid] = std::to_string(*b.aid);
        } else if constexpr (std::is_same_v<T, ReasonBody>) {
          row[kReason] = std::to_string(static_cast<unsigned>(b.reason_code));
        } else if constexpr (std::is_same_v<T, EapolKeyBody>) {
          row[kKeyDescType] = std::to_string(b.descriptor_type);
          row[kMsgNr] = std::to_string(b.msg_nr);
        }
      },
      f.body);
  return row;
}

class RowParser {
 public:
  RowParser(const std::vector<std::string>& cells, std::size_t line) : cells_(cells), line_(line) {}

  bool empty(Col c) const { return cells_[c].empty(); }
  const std::string& text(Col c) const { return cells_[c]; }

  template <class T>
  T integer(Col c) const {
    const std::string& s = cells_[c];
    std::uint64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
      first += 2;
      base = 16;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v, base);
    if (s.empty() || ec != std::errc{} || ptr != last || v > std::numeric_limits<T>::max())
      fail(c, "expected an unsigned integer, got '" + s + "'");
    return static_cast<T>(v);
  }

  template <class T>
  std::optional<T> optional_integer(Col c) const {
    if (empty(c)) return std::nullopt;
    return integer<T>(c);
  }

  MacAddr mac(Col c) const {
    auto m = MacAddr::parse(cells_[c]);
    if (!m) fail(c, "expected a MAC address, got '" + cells_[c] + "'");
    return *m;
  }

  std::optional<RsnInfo> rsn() const {
    if (empty(kAkmCount)) {
      if (!empty(kAkmType)) fail(kAkmType, "AKM types without an AKM count");
      return std::nullopt;
    }
    RsnInfo info;
    const auto count = integer<std::uint16_t>(kAkmCount);
    std::string_view rest = cells_[kAkmType];
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string item(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      std::uint32_t v = 0;
      const bool hex = item.size() > 2 && item[0] == '0' && item[1] == 'x';
      const auto [ptr, ec] = std::from_chars(item.data() + (hex ? 2 : 0),
                                             item.data() + item.size(), v, hex ? 16 : 10);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
        fail(kAkmType, "bad AKM selector '" + item + "'");
      info.akm_types.push_back(hex ? AkmSuite{v} : AkmSuite::ieee(static_cast<std::uint8_t>(v)));
    }
    if (info.akm_count() != count) fail(kAkmCount, "AKM count disagrees with the type list");
    return info;
  }

  [[noreturn]] void fail(Col c, const std::string& what) const {
    throw RecordError(line_, std::string(kCsvColumns[c]) + ": " + what);
  }

 private:
  const std::vector<std::string>& cells_;
  std::size_t line_;
};

FrameRecord from_row(const std::vector<std::string>& cells, std::size_t line) {
  if (cells.size() != kColumnCount)
    throw RecordError(line, "expected " + std::to_string(kColumnCount) + " fields, got " +
                                std::to_string(cells.size()));
  const RowParser p(cells, line);
  FrameRecord f;
  f.frame_number = p.integer<std::uint64_t>(kNumber);
  f.timestamp = from_micros(static_cast<std::int64_t>(p.integer<std::uint64_t>(kTime)));
  f.source_addr = p.mac(kSa);
  f.receiver_addr = p.mac(kRa);
  f.bssid = p.mac(kBssid);
  f.seq_num = p.integer<std::uint16_t>(kSeq);
  if (f.seq_num > 4095) p.fail(kSeq, "sequence number above 4095");
  const auto type = p.integer<std::uint8_t>(kType);
  if (type > 3) p.fail(kType, "frame type above 3");
  f.frame_type = static_cast<FrameType>(type);
  f.frame_subtype = p.integer<std::uint8_t>(kSubtype);
  if (f.frame_subtype > 15) p.fail(kSubtype, "subtype above 15");

  if (f.frame_type == FrameType::Management) {
    switch (f.frame_subtype) {
      case subtype::kBeacon:
      case subtype::kProbeResponse:
        if (!p.empty(kBeaconInterval)) {
          BeaconBody b;
          b.beacon_interval = p.integer<std::uint16_t>(kBeaconInterval);
          b.beacon_timestamp = p.integer<std::uint64_t>(kBeaconTimestamp);
          b.ssid = p.text(kSsid);
          b.rsn = p.rsn();
          f.body = std::move(b);
        }
        break;
      case subtype::kAuthentication:
        if (!p.empty(kAuthAlg)) {
          AuthBody a;
          a.auth_alg = static_cast<AuthAlgorithm>(p.integer<std::uint16_t>(kAuthAlg));
          a.auth_seq = p.integer<std::uint16_t>(kAuthSeq);
          a.status_code = static_cast<StatusCode>(p.integer<std::uint16_t>(kStatus));
          if (auto t = p.optional_integer<std::uint16_t>(kSaeType))
            a.sae_message_type = static_cast<SaeMessageType>(*t);
          a.cyclic_group = p.optional_integer<std::uint16_t>(kGroup);
          f.body = a;
        }
        break;
      case subtype::kAssocRequest:
      case subtype::kAssocResponse: {
        AssocBody a;
        if (!p.empty(kSsid)) a.ssid = p.text(kSsid);
        a.rsn = p.rsn();
        if (auto s = p.optional_integer<std::uint16_t>(kStatus))
          a.status_code = static_cast<StatusCode>(*s);
        a.aid = p.optional_integer<std::uint16_t>(kAid);
        f.body = std::move(a);
        break;
      }
      case subtype::kDeauthentication:
      case subtype::kDisassociation:
        if (auto r = p.optional_integer<std::uint16_t>(kReason))
          f.body = ReasonBody{static_cast<ReasonCode>(*r)};
        break;
      default:
        break;
    }
  } else if (f.frame_type == FrameType::Data && !p.empty(kMsgNr)) {
    EapolKeyBody k;
    k.descriptor_type = p.integer<std::uint8_t>(kKeyDescType);
    k.msg_nr = p.integer<std::uint8_t>(kMsgNr);
    if (k.msg_nr < 1 || k.msg_nr > 4) p.fail(kMsgNr, "EAPOL message number outside 1..4");
    f.body = k;
  }
  return f;
}

}  // namespace

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

bool CsvTokenizer::next(std::vector<std::string>& fields) {
  for (;;) {
    fields.clear();
    record_line_ = line_;
    std::string cur;
    bool quoted = false;
    bool any = false;
    int ch;
    while ((ch = in_.get()) != EOF) {
      any = true;
      const char c = static_cast<char>(ch);
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            cur += '"';
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          cur += c;
        }
        continue;
      }
      if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(cur));
        cur.clear();
      } else if (c == '\r') {
        // tolerated before '\n'
      } else if (c == '\n') {
        ++line_;
        break;
      } else {
        cur += c;
      }
    }
    if (quoted) throw RecordError(record_line_, "unterminated quoted field");
    if (!any) return false;
    fields.push_back(std::move(cur));
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    return true;
  }
}

void write_csv(std::ostream& out, std::span<const FrameRecord> frames) {
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
  out << '\n';
  for (const auto& f : frames) {
    const auto row = to_row(f);
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
    out << '\n';
  }
}

std::string write_csv(std::span<const FrameRecord> frames) {
  std::ostringstream out;
  write_csv(out, frames);
  return out.str();
}

void write_csv(const std::filesystem::path& path, std::span<const FrameRecord> frames) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv(out, frames);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<FrameRecord> read_csv(std::istream& in) {
  CsvTokenizer tok(in);
  std::vector<std::string> fields;
  if (!tok.next(fields)) throw SchemaMismatch("missing CSV header row");
  if (fields.size() != kCsvColumns.size())
    throw SchemaMismatch("CSV header has " + std::to_string(fields.size()) + " columns, expected " +
                         std::to_string(kCsvColumns.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i] != kCsvColumns[i])
      throw SchemaMismatch("CSV column " + std::to_string(i + 1) + " is '" + fields[i] +
                           "', expected '" + std::string(kCsvColumns[i]) + "'");
  }

  std::vector<FrameRecord> out;
  std::map<MacAddr, std::tuple<std::uint16_t, FrameType, std::uint8_t>> last_from;
  while (tok.next(fields)) {
    FrameRecord f = from_row(fields, tok.line());
    const auto key = std::make_tuple(f.seq_num, f.frame_type, f.frame_subtype);
    if (f.frame_type != FrameType::Control) {
      auto [it, fresh] = last_from.try_emplace(f.source_addr, key);
      if (!fresh) {
        f.flags.retry = it->second == key;
        it->second = key;
      }
    }
    if (f.frame_type == FrameType::Data) {
      f.flags.to_ds = f.receiver_addr == f.bssid && f.source_addr != f.bssid;
      f.flags.from_ds = f.source_addr == f.bssid && f.receiver_addr != f.bssid;
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<FrameRecord> read_csv_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_csv(in);
}

std::vector<FrameRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace wids
