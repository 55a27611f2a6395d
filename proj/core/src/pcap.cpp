// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/pcap.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "wids3/dot11.hpp"
#include "wids3/errors.hpp"

namespace wids {
namespace {

constexpr std::uint32_t kPcapMagicUs = 0xa1b2c3d4;
constexpr std::uint32_t kPcapMagicNs = 0xa1b23c4d;
constexpr std::uint32_t kPcapNgShb = 0x0a0d0d0a;
constexpr std::uint32_t kPcapNgBom = 0x1a2b3c4d;
constexpr std::uint32_t kPcapNgIdb = 1;
constexpr std::uint32_t kPcapNgOpb = 2;
constexpr std::uint32_t kPcapNgSpb = 3;
constexpr std::uint32_t kPcapNgEpb = 6;

// Larger records than this are treated as file corruption.
constexpr std::uint32_t kMaxRecordLen = 1u << 24;

std::uint32_t bswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00) | ((v << 8) & 0xff0000) | (v << 24);
}
std::uint16_t bswap16(std::uint16_t v) { return static_cast<std::uint16_t>(v >> 8 | v << 8); }

std::uint32_t load_le32(const std::uint8_t* p) {
  return p[0] | p[1] << 8 | p[2] << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

bool is_supported(std::uint32_t link) { return link == 105 || link == 127; }

}  // namespace

CaptureFormat sniff_format(std::span<const std::uint8_t> head) {
  if (head.size() >= 4) {
    const std::uint32_t m = load_le32(head.data());
    if (m == kPcapMagicUs || m == kPcapMagicNs || bswap32(m) == kPcapMagicUs ||
        bswap32(m) == kPcapMagicNs)
      return CaptureFormat::Pcap;
    if (m == kPcapNgShb) return CaptureFormat::PcapNg;
  }
  static constexpr std::string_view kCsvPrefix = "frame.number,";
  if (head.size() >= kCsvPrefix.size() &&
      std::memcmp(head.data(), kCsvPrefix.data(), kCsvPrefix.size()) == 0)
    return CaptureFormat::Csv;
  return CaptureFormat::Unknown;
}

CaptureFormat sniff_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::uint8_t buf[16] = {};
  in.read(reinterpret_cast<char*>(buf), sizeof buf);
  return sniff_format(std::span(buf, static_cast<std::size_t>(in.gcount())));
}

struct PcapReader::Impl {
  std::unique_ptr<std::istream> in;
  CaptureSource source;
  ReadStats stats;
  bool ng = false;
  bool swapped = false;
  bool nanos = false;
  bool done = false;
  // pcapng state
  std::int64_t ng_ticks_per_second = 1'000'000;
  int ng_interfaces = 0;
  TimePoint last_ts{};

  std::uint32_t fix32(std::uint32_t v) const { return swapped ? bswap32(v) : v; }
  std::uint16_t fix16(std::uint16_t v) const { return swapped ? bswap16(v) : v; }

  std::size_t read(void* dst, std::size_t n) {
    in->read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(in->gcount());
  }

  void truncated(const std::string& what) {
    stats.truncated = true;
    stats.warnings.push_back("TruncatedFile: " + what + " after " +
                             std::to_string(stats.packets) + " packets");
    done = true;
  }

  void open_classic() {
    std::uint8_t hdr[24];
    if (read(hdr, sizeof hdr) != sizeof hdr) throw FormatError("pcap global header truncated");
    const std::uint32_t magic = load_le32(hdr);
    if (magic == kPcapMagicUs || magic == kPcapMagicNs) {
      swapped = false;
    } else if (bswap32(magic) == kPcapMagicUs || bswap32(magic) == kPcapMagicNs) {
      swapped = true;
    } else {
      throw FormatError("not a pcap file");
    }
    nanos = fix32(magic) == kPcapMagicNs;
    source.snap_len = fix32(load_le32(hdr + 16));
    const std::uint32_t link = fix32(load_le32(hdr + 20)) & 0x03ffffff;
    if (!is_supported(link)) throw UnsupportedLinkType(link);
    source.link_type = static_cast<LinkType>(link);
  }

  // Reads one pcapng block; returns false at EOF or truncation.
  bool read_block(std::uint32_t& type, std::vector<std::uint8_t>& body) {
    std::uint8_t head[8];
    const auto got = read(head, sizeof head);
    if (got == 0) return false;
    if (got != sizeof head) {
      truncated("pcapng block header");
      return false;
    }
    type = load_le32(head);
    if (type == kPcapNgShb) {
      // Section header: the byte order mark decides how to read the length.
      std::uint8_t bom[4];
      if (read(bom, 4) != 4) {
        truncated("pcapng section header");
        return false;
      }
      const std::uint32_t b = load_le32(bom);
      if (b == kPcapNgBom) swapped = false;
      else if (bswap32(b) == kPcapNgBom) swapped = true;
      else throw FormatError("bad pcapng byte order mark");
      const std::uint32_t total = fix32(load_le32(head + 4));
      if (total < 16 || total > kMaxRecordLen || total % 4 != 0) {
        truncated("implausible pcapng section length");
        return false;
      }
      body.assign(bom, bom + 4);
      body.resize(total - 8);
      if (read(body.data() + 4, total - 12) != total - 12) {
        truncated("pcapng section header");
        return false;
      }
      body.resize(total - 12);
      ng_interfaces = 0;
      return true;
    }
    type = fix32(type);
    const std::uint32_t total = fix32(load_le32(head + 4));
    if (total < 12 || total > kMaxRecordLen || total % 4 != 0) {
      truncated("implausible pcapng block length");
      return false;
    }
    body.resize(total - 8);
    if (read(body.data(), body.size()) != body.size()) {
      truncated("pcapng block body");
      return false;
    }
    body.resize(total - 12);
    return true;
  }

  std::uint32_t body32(const std::vector<std::uint8_t>& b, std::size_t off) const {
    return fix32(load_le32(b.data() + off));
  }

  void handle_idb(const std::vector<std::uint8_t>& b) {
    if (b.size() < 8) throw FormatError("pcapng interface block truncated");
    const int index = ng_interfaces++;
    if (index != 0) return;
    std::uint16_t link = 0;
    std::memcpy(&link, b.data(), 2);
    link = fix16(link);
    if (!is_supported(link)) throw UnsupportedLinkType(link);
    source.link_type = static_cast<LinkType>(link);
    source.snap_len = body32(b, 4);
    ng_ticks_per_second = 1'000'000;
    std::size_t off = 8;
    while (off + 4 <= b.size()) {
      std::uint16_t code = 0, len = 0;
      std::memcpy(&code, b.data() + off, 2);
      std::memcpy(&len, b.data() + off + 2, 2);
      code = fix16(code);
      len = fix16(len);
      off += 4;
      if (code == 0 || off + len > b.size()) break;
      if (code == 9 && len >= 1) {  // if_tsresol
        const std::uint8_t v = b[off];
        std::int64_t ticks = 1;
        for (int i = 0; i < (v & 0x7f) && ticks < (1ll << 40); ++i) ticks *= (v & 0x80) ? 2 : 10;
        ng_ticks_per_second = ticks;
      }
      off += (len + 3u) & ~3u;
    }
  }

  TimePoint ng_time(std::uint32_t hi, std::uint32_t lo) const {
    const std::uint64_t ticks = static_cast<std::uint64_t>(hi) << 32 | lo;
    const auto secs = static_cast<std::int64_t>(ticks / ng_ticks_per_second);
    const auto frac = static_cast<std::int64_t>(ticks % ng_ticks_per_second);
    return from_micros(secs * 1'000'000 + frac * 1'000'000 / ng_ticks_per_second);
  }

  void open_ng() {
    std::uint32_t type = 0;
    std::vector<std::uint8_t> body;
    if (!read_block(type, body) || type != kPcapNgShb)
      throw FormatError("pcapng section header missing");
    while (read_block(type, body)) {
      if (type == kPcapNgIdb) {
        handle_idb(body);
        return;
      }
    }
    throw FormatError("pcapng file has no interface description");
  }

  std::optional<FrameRecord> decode(TimePoint ts, std::span<const std::uint8_t> data) {
    ++stats.packets;
    try {
      std::span<const std::uint8_t> mpdu = data;
      std::optional<std::int8_t> rssi;
      if (source.link_type == LinkType::Radiotap) {
        const auto rt = parse_radiotap(data);
        mpdu = data.subspan(rt.header_len);
        if (rt.has_fcs) {
          if (mpdu.size() < 4) throw MalformedFrame("FCS flagged but frame too short");
          mpdu = mpdu.first(mpdu.size() - 4);
        }
        if (rt.bad_fcs) throw MalformedFrame("radiotap reports bad FCS");
        rssi = rt.antenna_signal_dbm;
      }
      FrameRecord f = decode_dot11(mpdu, stats.packets, ts);
      f.rssi_dbm = rssi;
      ++stats.frames;
      return f;
    } catch (const MalformedFrame&) {
      ++stats.skipped;
      return std::nullopt;
    }
  }

  std::optional<FrameRecord> next_classic() {
    std::vector<std::uint8_t> data;
    while (!done) {
      std::uint8_t rec[16];
      const auto got = read(rec, sizeof rec);
      if (got == 0) {
        done = true;
        break;
      }
      if (got != sizeof rec) {
        truncated("record header");
        break;
      }
      const std::uint32_t sec = fix32(load_le32(rec));
      const std::uint32_t frac = fix32(load_le32(rec + 4));
      const std::uint32_t incl = fix32(load_le32(rec + 8));
      if (incl > kMaxRecordLen) {
        truncated("implausible record length " + std::to_string(incl));
        break;
      }
      data.resize(incl);
      if (read(data.data(), incl) != incl) {
        truncated("record data");
        break;
      }
      const std::int64_t us = static_cast<std::int64_t>(sec) * 1'000'000 + (nanos ? frac / 1000 : frac);
      if (auto f = decode(from_micros(us), data)) return f;
    }
    return std::nullopt;
  }

  std::optional<FrameRecord> next_ng() {
    std::uint32_t type = 0;
    std::vector<std::uint8_t> b;
    while (!done) {
      if (!read_block(type, b)) {
        done = true;
        break;
      }
      if (type == kPcapNgIdb) {
        handle_idb(b);
        continue;
      }
      if (type == kPcapNgEpb) {
        if (b.size() < 20) {
          ++stats.packets;
          ++stats.skipped;
          continue;
        }
        const std::uint32_t iface = body32(b, 0);
        const std::uint32_t caplen = body32(b, 12);
        if (iface != 0) continue;
        if (20 + static_cast<std::size_t>(caplen) > b.size()) {
          ++stats.packets;
          ++stats.skipped;
          continue;
        }
        last_ts = ng_time(body32(b, 4), body32(b, 8));
        if (auto f = decode(last_ts, std::span(b).subspan(20, caplen))) return f;
      } else if (type == kPcapNgOpb) {
        if (b.size() < 20) continue;
        std::uint16_t iface = 0;
        std::memcpy(&iface, b.data(), 2);
        const std::uint32_t caplen = body32(b, 12);
        if (fix16(iface) != 0 || 20 + static_cast<std::size_t>(caplen) > b.size()) continue;
        last_ts = ng_time(body32(b, 4), body32(b, 8));
        if (auto f = decode(last_ts, std::span(b).subspan(20, caplen))) return f;
      } else if (type == kPcapNgSpb) {
        if (b.size() < 4) continue;
        const std::uint32_t orig = body32(b, 0);
        const std::size_t caplen = std::min<std::size_t>(orig, b.size() - 4);
        if (auto f = decode(last_ts, std::span(b).subspan(4, caplen))) return f;
      }
    }
    return std::nullopt;
  }

  void init() {
    std::uint8_t magic[4] = {};
    in->read(reinterpret_cast<char*>(magic), 4);
    if (in->gcount() != 4) throw FormatError("file too short for a capture header");
    in->seekg(0);
    if (load_le32(magic) == kPcapNgShb) {
      ng = true;
      open_ng();
    } else {
      open_classic();
    }
  }
};

PcapReader::PcapReader(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
PcapReader::PcapReader(PcapReader&&) noexcept = default;
PcapReader& PcapReader::operator=(PcapReader&&) noexcept = default;
PcapReader::~PcapReader() = default;

PcapReader PcapReader::open(const std::filesystem::path& path) {
  auto impl = std::make_unique<Impl>();
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) throw IoError("cannot open " + path.string());
  impl->in = std::move(file);
  impl->source.path = path.string();
  impl->init();
  return PcapReader(std::move(impl));
}

PcapReader PcapReader::from_bytes(std::vector<std::uint8_t> bytes) {
  auto impl = std::make_unique<Impl>();
  impl->in = std::make_unique<std::istringstream>(
      std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  impl->source.path = "<memory>";
  impl->init();
  return PcapReader(std::move(impl));
}

const CaptureSource& PcapReader::source() const { return impl_->source; }
const ReadStats& PcapReader::stats() const { return impl_->stats; }

std::optional<FrameRecord> PcapReader::next() {
  return impl_->ng ? impl_->next_ng() : impl_->next_classic();
}

namespace {

std::vector<FrameRecord> drain(PcapReader reader, ReadStats* stats) {
  std::vector<FrameRecord> out;
  while (auto f = reader.next()) out.push_back(std::move(*f));
  if (stats) *stats = reader.stats();
  return out;
}

}  // namespace

std::vector<FrameRecord> read_pcap(const std::filesystem::path& path, ReadStats* stats) {
  return drain(PcapReader::open(path), stats);
}

std::vector<FrameRecord> read_pcap(std::vector<std::uint8_t> bytes, ReadStats* stats) {
  return drain(PcapReader::from_bytes(std::move(bytes)), stats);
}

namespace {

void put32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 24)};
  out.write(b, 4);
}
void put16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

}  // namespace

PcapWriter::PcapWriter(std::ostream& out, LinkType link, std::uint32_t snap_len) : out_(out) {
  put32(out_, kPcapMagicUs);
  put16(out_, 2);
  put16(out_, 4);
  put32(out_, 0);  // thiszone
  put32(out_, 0);  // sigfigs
  put32(out_, snap_len);
  put32(out_, static_cast<std::uint32_t>(link));
}

void PcapWriter::write_raw(TimePoint ts, std::span<const std::uint8_t> packet) {
  const std::int64_t us = to_micros(ts);
  put32(out_, static_cast<std::uint32_t>(us / 1'000'000));
  put32(out_, static_cast<std::uint32_t>(us % 1'000'000));
  put32(out_, static_cast<std::uint32_t>(packet.size()));
  put32(out_, static_cast<std::uint32_t>(packet.size()));
  out_.write(reinterpret_cast<const char*>(packet.data()),
             static_cast<std::streamsize>(packet.size()));
}

void PcapWriter::write(const FrameRecord& frame) {
  const auto mpdu = encode_dot11(frame);
  write_raw(frame.timestamp, mpdu);
}

std::vector<std::uint8_t> pcap_bytes(std::span<const FrameRecord> frames) {
  std::ostringstream out(std::ios::binary);
  PcapWriter w(out);
  for (const auto& f : frames) w.write(f);
  const std::string s = out.str();
  return {s.begin(), s.end()};
}

void write_pcap(const std::filesystem::path& path, std::span<const FrameRecord> frames) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  PcapWriter w(out);
  for (const auto& f : frames) w.write(f);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace wids
