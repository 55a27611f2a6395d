// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wids3/frame.hpp"

namespace wids {

enum class LinkType : std::uint32_t { Dot11 = 105, Radiotap = 127 };

enum class CaptureFormat { Pcap, PcapNg, Csv, Unknown };

/// Sniffs the leading bytes of a file: pcap/pcapng by magic, CSV by header text.
CaptureFormat sniff_format(std::span<const std::uint8_t> head);
CaptureFormat sniff_file(const std::filesystem::path& path);

struct CaptureSource {
  std::string path;
  LinkType link_type = LinkType::Dot11;
  std::uint32_t snap_len = 0;
};

struct ReadStats {
  std::uint64_t packets = 0;  // records seen, including skipped ones
  std::uint64_t frames = 0;   // records decoded into FrameRecords
  std::uint64_t skipped = 0;  // malformed records
  bool truncated = false;
  std::vector<std::string> warnings;
};

/// Streaming reader for classic pcap (either byte order, us or ns stamps) and
/// pcapng (first interface only). Frames come out in file order.
class PcapReader {
 public:
  /// Throws IoError, FormatError, UnsupportedLinkType.
  static PcapReader open(const std::filesystem::path& path);
  static PcapReader from_bytes(std::vector<std::uint8_t> bytes);

  PcapReader(PcapReader&&) noexcept;
  PcapReader& operator=(PcapReader&&) noexcept;
  ~PcapReader();

  const CaptureSource& source() const;
  const ReadStats& stats() const;

  /// Next decodable frame; malformed packets are counted and skipped.
  /// Returns nullopt at end of file or at a truncation point.
  std::optional<FrameRecord> next();

 private:
  struct Impl;
  explicit PcapReader(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

std::vector<FrameRecord> read_pcap(const std::filesystem::path& path, ReadStats* stats = nullptr);
std::vector<FrameRecord> read_pcap(std::vector<std::uint8_t> bytes, ReadStats* stats = nullptr);

/// Classic little-endian microsecond pcap with link type 105.
class PcapWriter {
 public:
  explicit PcapWriter(std::ostream& out, LinkType link = LinkType::Dot11,
                      std::uint32_t snap_len = 65535);
  void write(const FrameRecord& frame);
  void write_raw(TimePoint ts, std::span<const std::uint8_t> packet);

 private:
  std::ostream& out_;
};

std::vector<std::uint8_t> pcap_bytes(std::span<const FrameRecord> frames);
void write_pcap(const std::filesystem::path& path, std::span<const FrameRecord> frames);

}  // namespace wids
