// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "builders.hpp"
#include "oracles.hpp"
#include "run.hpp"
#include "wids3/synth.hpp"

namespace wids {
namespace {

using namespace test;
using std::chrono::milliseconds;
using std::chrono::seconds;

/// Two authorized APs beaconing every 100 ms over [from, to).
void authorized(Air& air, std::vector<FrameRecord>& v, Duration from, Duration to) {
  const auto second = client(900);
  const std::string guest = air.ssid + "-Guest";
  for (auto t = from; t < to; t += 100ms) {
    v.push_back(air.beacon(t, rsn({AkmSuite::sae()})));
    v.push_back(air.other_beacon(t + 1ms, second, guest));
  }
}

void sort_and_number(std::vector<FrameRecord>& v) {
  std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.timestamp < b.timestamp; });
  for (std::size_t i = 0; i < v.size(); ++i) v[i].frame_number = i + 1;
}

TEST(BeaconFlood, RandomSsids) {
  auto s = Scenario::defaults(ScenarioKind::BeaconFlood);
  const auto trace = gen(s);
  const auto r = run(trace, config_for(s));
  EXPECT_GE(r.count(AlertKind::BeaconFlood), 1u);
  EXPECT_EQ(r.count(AlertKind::RogueAp), 0u);
  EXPECT_EQ(r.count(AlertKind::BeaconFlood), r.alerts.size());
  EXPECT_EQ(r.frames_of(EventSource::BeaconBurst), beacon_bursts(trace, config_for(s)).beacon);
}

TEST(BeaconFlood, ConfusingSsids) {
  auto s = Scenario::defaults(ScenarioKind::BeaconFlood);
  s.mode = BeaconFloodMode::ConfusingSsids;
  const auto trace = gen(s);
  for (const auto& f : trace) {
    const auto* b = f.body_as<BeaconBody>();
    if (b && f.bssid != s.ap_bssid && b->ssid.size() == s.ssid.size()) {
      EXPECT_NE(b->ssid, s.ssid);
    }
  }
  EXPECT_GE(run(trace, config_for(s)).count(AlertKind::BeaconFlood), 1u);
}

TEST(BeaconFlood, ProbeResponses) {
  auto s = Scenario::defaults(ScenarioKind::ProbeFlood);
  const auto trace = gen(s);
  const auto r = run(trace, config_for(s));
  EXPECT_GE(r.count(AlertKind::ProbeFlood), 1u);
  EXPECT_EQ(r.count(AlertKind::BeaconFlood), 0u);
  EXPECT_EQ(r.frames_of(EventSource::ProbeBurst), beacon_bursts(trace, config_for(s)).probe);
}

TEST(BeaconFlood, AuthorizedOnlyForTenMinutes) {
  Air air;
  std::vector<FrameRecord> v;
  authorized(air, v, 0ms, std::chrono::minutes(10));
  sort_and_number(v);
  const auto r = run(v, DetectorConfig{});
  EXPECT_TRUE(r.alerts.empty());
  EXPECT_TRUE(r.of(EventSource::UnauthorizedBeacon).empty());
}

TEST(BeaconFlood, NewApAfterNmsUpdateIsAccepted) {
  const auto third = client(901);
  const std::string name = "Lab";
  const auto build = [&] {
    Air air;
    std::vector<FrameRecord> v;
    authorized(air, v, 0ms, seconds(400));
    for (auto t = milliseconds(300000); t < seconds(400); t += 100ms) v.push_back(air.other_beacon(t, third, name));
    sort_and_number(v);
    return std::pair{air, v};
  };
  auto [air, v] = build();
  const auto without = run(v, DetectorConfig{});
  EXPECT_GE(without.count(AlertKind::BeaconFlood), 1u);

  const ControlSignal update{SignalKind::NmsUpdate, air.at(seconds(299)), {{third, name}}};
  const auto with = run(v, DetectorConfig{}, {update});
  EXPECT_TRUE(with.alerts.empty());
  EXPECT_TRUE(with.of(EventSource::UnauthorizedBeacon).empty());
}

TEST(BeaconFlood, RestartReentersLearning) {
  const auto fresh = client(902);
  Air air;
  std::vector<FrameRecord> v;
  authorized(air, v, 0ms, seconds(600));
  for (auto t = milliseconds(300500); t < seconds(600); t += 100ms) v.push_back(air.other_beacon(t, fresh, "Lab"));
  sort_and_number(v);
  const ControlSignal restart{SignalKind::ApRestarted, air.at(seconds(300)), {}};
  EXPECT_TRUE(run(v, DetectorConfig{}, {restart}).alerts.empty());
}

TEST(BeaconFlood, FiveFramesOfOneIdentityAreFiveEvents) {
  Air air;
  std::vector<FrameRecord> v;
  authorized(air, v, 0ms, seconds(181));
  for (int i = 0; i < 5; ++i) v.push_back(air.other_beacon(seconds(200) + seconds(2) * i, client(5), "Evil"));
  sort_and_number(v);
  const auto r = run(v, DetectorConfig{});
  EXPECT_EQ(r.of(EventSource::UnauthorizedBeacon).size(), 5u);
  EXPECT_EQ(r.count(AlertKind::BeaconFlood), 1u);
}

TEST(BeaconFlood, FourInTenSecondsIsQuiet) {
  Air air;
  std::vector<FrameRecord> v;
  authorized(air, v, 0ms, seconds(181));
  for (int i = 0; i < 8; ++i) v.push_back(air.other_beacon(seconds(200) + milliseconds(3000) * i, client(5), "Evil"));
  sort_and_number(v);
  const auto r = run(v, DetectorConfig{});
  EXPECT_EQ(r.count(AlertKind::BeaconFlood), 0u);
}

TEST(BeaconFlood, EitherAddressOrNameUnknownIsAbnormal) {
  Air air;
  std::vector<FrameRecord> v;
  authorized(air, v, 0ms, seconds(181));
  v.push_back(air.other_beacon(seconds(200), air.ap, "Evil"));       // known bssid
  v.push_back(air.other_beacon(seconds(201), client(6), air.ssid));  // known ssid
  v.push_back(air.other_beacon(seconds(202), client(900), air.ssid));  // both known, crossed
  sort_and_number(v);
  EXPECT_EQ(run(v, DetectorConfig{}).of(EventSource::UnauthorizedBeacon).size(), 2u);
}

TEST(BeaconFlood, LearningPhaseAcceptsEverything) {
  Air air;
  std::vector<FrameRecord> v;
  for (int i = 0; i < 100; ++i) v.push_back(air.other_beacon(milliseconds(100 * i), client(i), "n" + std::to_string(i)));
  EXPECT_TRUE(run(v, DetectorConfig{}).events.empty());
}

}  // namespace
}  // namespace wids
