// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "builders.hpp"
#include "run.hpp"
#include "wids3/synth.hpp"

namespace wids {
namespace {

using namespace test;
using std::chrono::milliseconds;

const FrameRecord* first_success_reply(const std::vector<FrameRecord>& trace, const MacAddr& ap) {
  for (const auto& f : trace) {
    const auto* a = f.body_as<AuthBody>();
    if (a && f.source_addr == ap && a->status_code == StatusCode::Success && !f.flags.retry) return &f;
  }
  return nullptr;
}

TEST(CommitRace, GroupUnsupportedAtTheSuccessTimestamp) {
  auto s = Scenario::defaults(ScenarioKind::GroupUnsupported);
  const auto trace = gen(s);
  // commit, spoofed rejection, success, two retries
  ASSERT_EQ(trace.size(), 5u);
  EXPECT_EQ(std::get<AuthBody>(trace[1].body).status_code, StatusCode::GroupNotSupported);
  EXPECT_TRUE(trace[3].flags.retry && trace[4].flags.retry);
  const auto r = run(trace, config_for(s));
  ASSERT_EQ(r.alerts.size(), 1u);
  const auto* ok = first_success_reply(trace, s.ap_bssid);
  ASSERT_NE(ok, nullptr);
  EXPECT_EQ(r.alerts[0].kind, AlertKind::GroupUnsupported);
  EXPECT_EQ(r.alerts[0].detected_at, ok->timestamp);
  EXPECT_EQ(r.alerts[0].evidence_frames, (std::vector<std::uint64_t>{2, 3}));
}

TEST(CommitRace, OutOfRangeRejection) {
  auto s = Scenario::defaults(ScenarioKind::CommitOutOfRange);
  const auto r = run(gen(s), config_for(s));
  ASSERT_EQ(r.alerts.size(), 1u);
  EXPECT_EQ(r.alerts[0].kind, AlertKind::CommitOutOfRange);
}

TEST(CommitRace, GenuineRejectionWithoutSuccess) {
  auto s = Scenario::defaults(ScenarioKind::LegitGroupRejection);
  const auto r = run(gen(s), config_for(s));
  EXPECT_FALSE(r.of(EventSource::CommitRejection).empty());
  EXPECT_TRUE(r.alerts.empty());
}

TEST(CommitRace, LostRaceIsQuiet) {
  auto s = Scenario::defaults(ScenarioKind::GroupUnsupported);
  s.race_lead = -milliseconds(2);
  EXPECT_TRUE(run(gen(s), config_for(s)).alerts.empty());
}

TEST(CommitRace, WindowEdges) {
  for (auto [gap, alerts] : {std::pair{500ms, 1u}, std::pair{501ms, 0u}}) {
    Air air;
    const auto c = client(1);
    const auto r = run({air.commit(0ms, c), air.ap_commit(2ms, c, StatusCode::GroupNotSupported),
                        air.ap_commit(2ms + gap, c)},
                       DetectorConfig{});
    EXPECT_EQ(r.alerts.size(), alerts) << gap.count();
  }
}

TEST(CommitRace, SuccessToAnotherClientDoesNotPair) {
  Air air;
  const auto r = run({air.commit(0ms, client(1)),
                      air.ap_commit(2ms, client(1), StatusCode::GroupNotSupported),
                      air.ap_commit(4ms, client(2))},
                     DetectorConfig{});
  EXPECT_TRUE(r.alerts.empty());
}

TEST(CommitRace, RetriedSuccessDoesNotPair) {
  Air air;
  const auto c = client(1);
  const auto reject = air.ap_commit(2ms, c, StatusCode::GroupNotSupported);
  auto ok = air.ap_commit(4ms, c);
  // flagged retry carrying the AP's previous sequence number
  ok.flags.retry = true;
  ok.seq_num = reject.seq_num;
  EXPECT_TRUE(run({air.commit(0ms, c), reject, ok}, DetectorConfig{}).alerts.empty());
}

TEST(CommitRace, GroupDowngradeAcrossAttempts) {
  auto s = Scenario::defaults(ScenarioKind::GroupDowngrade);
  ASSERT_EQ(s.groups, (std::vector<std::uint16_t>{21, 20, 19}));
  const auto r = run(gen(s), config_for(s));
  ASSERT_GE(r.count(AlertKind::GroupDowngrade), 1u);
  for (const auto& a : r.alerts)
    EXPECT_TRUE(a.kind == AlertKind::GroupDowngrade || a.kind == AlertKind::GroupUnsupported);
  const auto& down = *std::find_if(r.alerts.begin(), r.alerts.end(),
                                   [](auto& a) { return a.kind == AlertKind::GroupDowngrade; });
  EXPECT_EQ(down.evidence_frames.size(), 4u);
}

TEST(CommitRace, StrongerRetryIsNotADowngrade) {
  Air air;
  const auto c = client(1);
  std::vector<FrameRecord> v;
  std::uint16_t groups[] = {19, 20, 21};
  for (int i = 0; i < 3; ++i) {
    const auto t = milliseconds(61000 * i);  // beyond the alert cooldown
    v.push_back(air.commit(t, c, groups[i]));
    v.push_back(air.ap_commit(t + 3ms, c, StatusCode::GroupNotSupported, groups[i]));
    v.push_back(air.ap_commit(t + 5ms, c, StatusCode::Success, groups[i]));
  }
  const auto r = run(v, DetectorConfig{});
  EXPECT_EQ(r.count(AlertKind::GroupUnsupported), 3u);
  EXPECT_EQ(r.count(AlertKind::GroupDowngrade), 0u);
}

}  // namespace
}  // namespace wids
