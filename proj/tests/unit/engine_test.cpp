// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "builders.hpp"
#include "run.hpp"
#include "wids3/pcap.hpp"
#include "wids3/synth.hpp"

namespace wids {
namespace {

using namespace test;
using std::chrono::seconds;

std::string serialize(const std::vector<Alert>& alerts) {
  std::ostringstream out;
  write_alert_log(out, alerts);
  return out.str();
}

Scenario quick(ScenarioKind k, std::uint64_t seed) {
  auto s = Scenario::defaults(k);
  s.seed = seed;
  return s;
}

TEST(Engine, BenignConnectionIsQuiet) {
  auto s = quick(ScenarioKind::BenignConnect, 3);
  const auto trace = gen(s);
  ASSERT_EQ(trace.size(), 10u);
  const auto r = run(trace, config_for(s));
  EXPECT_TRUE(r.alerts.empty());
  EXPECT_EQ(r.stats.per_block.at(DispatchClass::Authentication), 4u);
  EXPECT_EQ(r.stats.per_block.at(DispatchClass::Association), 2u);
  EXPECT_EQ(r.stats.per_block.at(DispatchClass::Eapol), 4u);
}

TEST(Engine, ControlFramesTouchNothing) {
  Air air;
  std::vector<FrameRecord> v;
  for (int i = 0; i < 50; ++i) v.push_back(air.ack(std::chrono::milliseconds(i), air.ap));
  const auto r = run(v, DetectorConfig{});
  EXPECT_TRUE(r.alerts.empty());
  EXPECT_TRUE(r.events.empty());
  EXPECT_EQ(r.stats.per_block.at(DispatchClass::Other), 50u);
  EXPECT_EQ(r.stats.retries, 0u);
}

TEST(Engine, OutOfOrderFramesAreDropped) {
  Air air;
  Engine engine(DetectorConfig{});
  engine.process(air.beacon(10ms, std::nullopt));
  engine.process(air.beacon(9500us, std::nullopt));  // within slack
  engine.process(air.beacon(8ms, std::nullopt));     // beyond slack
  EXPECT_EQ(engine.stats().frames_processed, 2u);
  EXPECT_EQ(engine.stats().out_of_order_dropped, 1u);
  ASSERT_EQ(engine.warnings().size(), 1u);
  EXPECT_NE(engine.warnings()[0].find("frame 3"), std::string::npos);
}

TEST(Engine, CooldownSuppressesRepeatsPerVictimSet) {
  Air air;
  const auto c = client(1);
  std::vector<FrameRecord> v;
  for (int i = 0; i < 3; ++i) {
    const auto t = seconds(10) * i;
    v.push_back(air.commit(t, c));
    v.push_back(air.ap_commit(t + 2ms, c, StatusCode::GroupNotSupported));
    v.push_back(air.ap_commit(t + 4ms, c));
  }
  v.push_back(air.commit(seconds(30), client(2)));
  v.push_back(air.ap_commit(seconds(30) + 2ms, client(2), StatusCode::GroupNotSupported));
  v.push_back(air.ap_commit(seconds(30) + 4ms, client(2)));
  v.push_back(air.commit(seconds(61), c));
  v.push_back(air.ap_commit(seconds(61) + 2ms, c, StatusCode::GroupNotSupported));
  v.push_back(air.ap_commit(seconds(61) + 4ms, c));
  const auto r = run(v, DetectorConfig{});
  ASSERT_EQ(r.alerts.size(), 3u);
  EXPECT_EQ(r.stats.alerts_suppressed, 2u);
  EXPECT_EQ(r.alerts[0].victim_addrs[0], c);
  EXPECT_EQ(r.alerts[1].victim_addrs[0], client(2));
  EXPECT_EQ(r.alerts[2].detected_at, air.at(seconds(61) + 4ms));
}

class EveryScenario : public ::testing::TestWithParam<ScenarioKind> {};

TEST_P(EveryScenario, Deterministic) {
  const auto s = quick(GetParam(), 17);
  const auto a = serialize(analyze(gen(s), config_for(s)));
  const auto b = serialize(analyze(gen(s), config_for(s)));
  EXPECT_EQ(a, b);
}

TEST_P(EveryScenario, StreamingEqualsBatch) {
  const auto s = quick(GetParam(), 4);
  const auto trace = gen(s);
  const auto batch = analyze(trace, config_for(s));

  auto reader = PcapReader::from_bytes(pcap_bytes(trace));
  Engine engine(config_for(s));
  std::vector<Alert> streamed;
  while (auto f = reader.next()) {
    auto a = engine.process(*f);
    streamed.insert(streamed.end(), a.begin(), a.end());
  }
  auto tail = engine.finish();
  streamed.insert(streamed.end(), tail.begin(), tail.end());
  EXPECT_EQ(serialize(streamed), serialize(batch));
}

TEST_P(EveryScenario, AlertTimesAnchorToEvidence) {
  const auto s = quick(GetParam(), 8);
  const auto trace = gen(s);
  for (const auto& a : analyze(trace, config_for(s))) {
    ASSERT_FALSE(a.evidence_frames.empty());
    bool anchored = false;
    for (auto n : a.evidence_frames) {
      ASSERT_GE(n, 1u);
      ASSERT_LE(n, trace.size());
      anchored |= trace[n - 1].timestamp == a.detected_at;
    }
    EXPECT_TRUE(anchored) << to_string(a.kind);
    EXPECT_TRUE(std::is_sorted(a.victim_addrs.begin(), a.victim_addrs.end()));
  }
}

TEST_P(EveryScenario, CooldownSpacing) {
  const auto s = quick(GetParam(), 9);
  const auto alerts = analyze(gen(s), config_for(s));
  for (std::size_t i = 0; i < alerts.size(); ++i)
    for (std::size_t j = i + 1; j < alerts.size(); ++j)
      if (alerts[i].kind == alerts[j].kind && alerts[i].victim_addrs == alerts[j].victim_addrs &&
          alerts[i].suspects == alerts[j].suspects) {
        EXPECT_GE(alerts[j].detected_at - alerts[i].detected_at, seconds(60));
      }
}

INSTANTIATE_TEST_SUITE_P(All, EveryScenario, ::testing::ValuesIn(all_scenario_kinds()),
                         [](const auto& info) { return std::string(to_string(info.param)); });

}  // namespace
}  // namespace wids
