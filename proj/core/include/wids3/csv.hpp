// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wids3/frame.hpp"

namespace wids {

/// Column order of the frame CSV. The header row must match it verbatim.
inline constexpr std::array<std::string_view, 22> kCsvColumns = {
    "frame.number",
    "frame.time",
    "wlan.sa",
    "wlan.ra",
    "wlan.bssid",
    "wlan.seq",
    "wlan.fc.type",
    "wlan.fc.subtype",
    "wlan.fixed.beacon",
    "wlan.fixed.timestamp",
    "wlan.ssid",
    "wlan.rsn.akms.count",
    "wlan.rsn.akms.type",
    "wlan.fixed.auth.alg",
    "wlan.fixed.auth_seq",
    "wlan.fixed.status_code",
    "wlan.fixed.sae_message_type",
    "wlan.fixed.finite_cyclic_group",
    "wlan.fixed.aid",
    "wlan.fixed.reason_code",
    "eapol.keydes.type",
    "wlan_rsna_eapol.keydes.msgnr",
};

/// One CSV record per frame. frame.time is microseconds since the Unix epoch;
/// absent attributes are empty cells.
void write_csv(std::ostream& out, std::span<const FrameRecord> frames);
std::string write_csv(std::span<const FrameRecord> frames);
void write_csv(const std::filesystem::path& path, std::span<const FrameRecord> frames);

/// Throws SchemaMismatch when the header differs from kCsvColumns and
/// RecordError for an unparseable row. Retry flags and DS bits have no
/// column; they are reconstructed (repeated source/sequence => retry).
std::vector<FrameRecord> read_csv(std::istream& in);
std::vector<FrameRecord> read_csv_text(std::string_view text);
std::vector<FrameRecord> read_csv(const std::filesystem::path& path);

/// RFC 4180 record splitting, shared with other line-oriented readers.
class CsvTokenizer {
 public:
  explicit CsvTokenizer(std::istream& in) : in_(in) {}
  /// False at end of input. Throws RecordError on an unterminated quote.
  bool next(std::vector<std::string>& fields);
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

std::string csv_escape(std::string_view field);

}  // namespace wids
