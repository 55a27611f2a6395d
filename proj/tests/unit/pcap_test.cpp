// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>

#include "builders.hpp"
#include "dissect_view.hpp"
#include "wids3/dot11.hpp"
#include "wids3/errors.hpp"
#include "wids3/pcap.hpp"
#include "wids3/synth.hpp"

namespace wids {
namespace {

using namespace test;
namespace fs = std::filesystem;

const fs::path kData = WIDS3_TEST_DATA;

std::vector<FrameRecord> small_trace() {
  Air air;
  const auto c = client(3);
  return {air.beacon(0ms, rsn({AkmSuite::sae()})), air.commit(1ms, c), air.ap_commit(2ms, c),
          air.assoc_req(3ms, c), air.assoc_resp(4ms, c), air.eapol(5ms, c, 1),
          air.eapol(6ms, c, 2), air.eapol(7ms, c, 3), air.eapol(8ms, c, 4),
          air.deauth(9ms, air.ap, c, ReasonCode::Unspecified)};
}

// Every frozen capture decodes to exactly what scapy exported.
TEST(Dissector, MatchesReferenceOnEveryFixture) {
  std::size_t checked = 0;
  for (const auto& entry : fs::directory_iterator(kData)) {
    const auto name = entry.path().filename().string();
    if (!name.ends_with(".expected.json")) continue;
    const auto stem = name.substr(0, name.size() - std::string(".expected.json").size());
    fs::path cap = kData / (stem + ".pcap");
    if (!fs::exists(cap)) cap = kData / (stem + ".pcapng");
    std::ifstream in(entry.path());
    const auto expected = nlohmann::json::parse(in)["frames"];
    ReadStats stats;
    const auto frames = read_pcap(cap, &stats);
    ASSERT_EQ(frames.size(), expected.size()) << stem;
    EXPECT_EQ(stats.skipped, 0u) << stem;
    for (std::size_t i = 0; i < frames.size(); ++i)
      EXPECT_EQ(dissect_view(frames[i]), expected[i]) << stem << " frame " << i + 1;
    ++checked;
  }
  EXPECT_GE(checked, 5u);
}

TEST(ReadPcap, RadiotapWithFcsYieldsThreeFrames) {
  ReadStats stats;
  const auto frames = read_pcap(kData / "radiotap_fcs.pcap", &stats);
  ASSERT_EQ(frames.size(), 3u);
  EXPECT_EQ(frames[0].frame_subtype, 8);
  EXPECT_EQ(frames[1].frame_subtype, 11);
  EXPECT_EQ(frames[2].frame_subtype, 12);
  EXPECT_TRUE(frames[2].flags.retry);
  for (const auto& f : frames) EXPECT_EQ(f.rssi_dbm, -42);
  const auto* b = frames[0].body_as<BeaconBody>();
  ASSERT_TRUE(b && b->rsn);
  EXPECT_TRUE(b->rsn->mfp_capable);
  EXPECT_TRUE(b->rsn->mfp_required);  // the fixture writer leaves it at its default of 1
  auto reader = PcapReader::open(kData / "radiotap_fcs.pcap");
  EXPECT_EQ(reader.source().link_type, LinkType::Radiotap);
}

TEST(ReadPcap, PcapNgMatchesClassic) {
  const auto ng = read_pcap(kData / "three_frames.pcapng");
  const auto rt = read_pcap(kData / "radiotap_fcs.pcap");
  ASSERT_EQ(ng.size(), rt.size());
  for (std::size_t i = 0; i < ng.size(); ++i) {
    auto a = ng[i], b = rt[i];
    a.rssi_dbm = b.rssi_dbm = std::nullopt;
    EXPECT_EQ(a, b);
  }
  EXPECT_EQ(sniff_file(kData / "three_frames.pcapng"), CaptureFormat::PcapNg);
}

TEST(ReadPcap, HeaderOnlyIsEmpty) {
  ReadStats stats;
  EXPECT_TRUE(read_pcap(pcap_bytes({}), &stats).empty());
  EXPECT_EQ(stats.packets, 0u);
  EXPECT_FALSE(stats.truncated);
}

TEST(ReadPcap, CorruptHeaderIsSkipped) {
  ReadStats stats;
  EXPECT_TRUE(read_pcap(kData / "corrupt_header.pcap", &stats).empty());
  EXPECT_EQ(stats.skipped, 1u);
  EXPECT_EQ(stats.packets, 1u);
}

TEST(ReadPcap, TruncatedFileKeepsPrefix) {
  const auto trace = small_trace();
  auto bytes = pcap_bytes(trace);
  bytes.resize(bytes.size() - 5);
  ReadStats stats;
  const auto frames = read_pcap(bytes, &stats);
  EXPECT_EQ(frames.size(), trace.size() - 1);
  EXPECT_TRUE(stats.truncated);
  ASSERT_FALSE(stats.warnings.empty());
  EXPECT_NE(stats.warnings[0].find("TruncatedFile"), std::string::npos);
}

TEST(ReadPcap, UnsupportedLinkType) {
  auto bytes = pcap_bytes({});
  bytes[20] = 1;  // Ethernet
  EXPECT_THROW(read_pcap(bytes), UnsupportedLinkType);
}

TEST(ReadPcap, BadMagic) {
  std::vector<std::uint8_t> junk(64, 0x42);
  EXPECT_THROW(read_pcap(junk), FormatError);
}

TEST(ReadPcap, BigEndianAndNanosecondHeaders) {
  const auto trace = small_trace();
  const auto le = pcap_bytes(trace);
  // rewrite as big-endian nanosecond pcap
  std::vector<std::uint8_t> be;
  const auto put32 = [&](std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) be.push_back(static_cast<std::uint8_t>(v >> s));
  };
  const auto get32 = [&](std::size_t off) {
    return std::uint32_t(le[off]) | std::uint32_t(le[off + 1]) << 8 | std::uint32_t(le[off + 2]) << 16 |
           std::uint32_t(le[off + 3]) << 24;
  };
  put32(0xa1b23c4d);
  be.push_back(le[5]), be.push_back(le[4]), be.push_back(le[7]), be.push_back(le[6]);
  for (std::size_t off = 8; off < 24; off += 4) put32(get32(off));
  for (std::size_t off = 24; off < le.size();) {
    const auto incl = get32(off + 8);
    put32(get32(off));
    put32(get32(off + 4) * 1000);
    put32(incl);
    put32(get32(off + 12));
    be.insert(be.end(), le.begin() + static_cast<long>(off + 16), le.begin() + static_cast<long>(off + 16 + incl));
    off += 16 + incl;
  }
  EXPECT_EQ(read_pcap(be), read_pcap(le));
}

TEST(Emit, EmptyTraceIsValidCapture) {
  const auto dir = fs::temp_directory_path() / "wids3_emit_empty";
  fs::create_directories(dir);
  emit({}, dir / "empty.pcap", TraceFormat::Pcap);
  EXPECT_EQ(fs::file_size(dir / "empty.pcap"), 24u);
  EXPECT_TRUE(read_pcap(dir / "empty.pcap").empty());
  EXPECT_THROW(emit({}, dir / "no" / "such" / "dir.pcap", TraceFormat::Pcap), IoError);
  fs::remove_all(dir);
}

TEST(Rsne, SaeOnly) {
  const auto r = parse_rsne(encode_rsne(rsn({AkmSuite::sae()})));
  EXPECT_EQ(r.akm_count(), 1u);
  ASSERT_EQ(r.akm_types.size(), 1u);
  EXPECT_EQ(r.akm_types[0].kind(), AkmKind::Sae);
}

TEST(Rsne, TransitionModeListsBoth) {
  const std::vector<std::uint8_t> payload = {
      0x01, 0x00,                    // version
      0x00, 0x0f, 0xac, 0x04,        // group CCMP
      0x01, 0x00, 0x00, 0x0f, 0xac, 0x04,
      0x02, 0x00, 0x00, 0x0f, 0xac, 0x02, 0x00, 0x0f, 0xac, 0x08,
      0xc0, 0x00};                   // MFPR | MFPC
  const auto r = parse_rsne(payload);
  EXPECT_EQ(r.akm_count(), 2u);
  EXPECT_EQ(r.akm_types[0].kind(), AkmKind::Psk);
  EXPECT_EQ(r.akm_types[1].kind(), AkmKind::Sae);
  EXPECT_TRUE(r.mfp_required);
  EXPECT_TRUE(r.mfp_capable);
  EXPECT_TRUE(r.has(AkmKind::Sae));
}

TEST(Rsne, DegenerateInputs) {
  EXPECT_THROW(parse_rsne({}), MalformedElement);
  const std::vector<std::uint8_t> cut = {0x01, 0x00, 0x00, 0x0f, 0xac, 0x04, 0x01, 0x00,
                                         0x00, 0x0f, 0xac, 0x04, 0x03, 0x00, 0x00, 0x0f, 0xac, 0x08};
  EXPECT_THROW(parse_rsne(cut), MalformedElement);
}

TEST(Rsne, MalformedElementKeepsFrame) {
  Air air;
  auto bytes = encode_dot11(air.beacon(0ms, rsn({AkmSuite::sae()})));
  // locate the RSN element and claim 3 AKMs where one is present
  for (std::size_t i = 36; i + 1 < bytes.size(); i += 2 + bytes[i + 1]) {
    if (bytes[i] != kElementRsn) continue;
    bytes[i + 2 + 12] = 3;
    break;
  }
  const auto f = decode_dot11(bytes, 1, air.t0);
  const auto* b = f.body_as<BeaconBody>();
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->ssid, "WPA3-Network");
  EXPECT_FALSE(b->rsn.has_value());
}

// Random corruption never escapes as anything but a counted skip.
TEST(ParseTotality, MutatedCapturesNeverThrow) {
  auto s = Scenario::defaults(ScenarioKind::DeauthRace);
  const auto base = pcap_bytes(gen(s));
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 400; ++round) {
    auto bytes = base;
    const int flips = 1 + static_cast<int>(rng() % 16);
    for (int k = 0; k < flips; ++k) {
      const auto pos = 24 + rng() % (bytes.size() - 24);
      bytes[pos] = static_cast<std::uint8_t>(rng());
    }
    if (rng() % 4 == 0) bytes.resize(24 + rng() % (bytes.size() - 24));
    ReadStats stats;
    std::vector<FrameRecord> frames;
    ASSERT_NO_THROW(frames = read_pcap(bytes, &stats)) << "round " << round;
    EXPECT_EQ(stats.frames + stats.skipped, stats.packets);
    EXPECT_EQ(frames.size(), stats.frames);
  }
}

TEST(ParseTotality, RandomMpdusDecodeOrReportMalformed) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 5000; ++round) {
    std::vector<std::uint8_t> mpdu(rng() % 80);
    for (auto& b : mpdu) b = static_cast<std::uint8_t>(rng());
    try {
      decode_dot11(mpdu, 1, TimePoint{});
    } catch (const MalformedFrame&) {
    } catch (const MalformedElement&) {
    }
  }
}

TEST(Sniff, ByMagicOrHeader) {
  const auto bytes = pcap_bytes({});
  EXPECT_EQ(sniff_format(bytes), CaptureFormat::Pcap);
  const std::string csv = "frame.number,frame.time\n";
  EXPECT_EQ(sniff_format({reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()}),
            CaptureFormat::Csv);
  const std::string junk = "hello";
  EXPECT_EQ(sniff_format({reinterpret_cast<const std::uint8_t*>(junk.data()), junk.size()}),
            CaptureFormat::Unknown);
}

}  // namespace
}  // namespace wids
