// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "wids3/errors.hpp"
#include "wids3/pcap.hpp"
#include "wids3/synth.hpp"

namespace wids {
namespace {

using std::chrono::milliseconds;
using std::chrono::seconds;

std::size_t commits_to(const std::vector<FrameRecord>& t, const MacAddr& ap) {
  std::size_t n = 0;
  for (const auto& f : t) n += is_connection_request(f, ap);
  return n;
}

TEST(Synth, AuthFloodCountAndSpacing) {
  const auto s = Scenario::defaults(ScenarioKind::AuthFlood);
  EXPECT_EQ(s.rate, 200.0);
  EXPECT_EQ(s.duration, seconds(240));
  const auto t = gen(s);
  ASSERT_EQ(t.size(), 48000u);
  EXPECT_EQ(commits_to(t, s.ap_bssid), 48000u);
  for (std::size_t i = 1; i < t.size(); ++i) ASSERT_EQ(t[i].timestamp - t[i - 1].timestamp, milliseconds(5));
}

TEST(Synth, RateFidelity) {
  for (double rate : {14.0, 17.0, 20.0, 33.3, 200.0}) {
    auto s = Scenario::defaults(ScenarioKind::AuthFlood);
    s.rate = rate;
    const auto t = gen(s);
    const double realized = static_cast<double>(t.size()) / 240.0;
    EXPECT_NEAR(realized, rate, rate * 0.01) << rate;
  }
  auto b = Scenario::defaults(ScenarioKind::BeaconFlood);
  const auto t = gen(b);
  std::size_t unauthorized = 0;
  TimePoint first = TimePoint::max(), last = TimePoint::min();
  for (const auto& f : t) {
    const auto* body = f.body_as<BeaconBody>();
    if (!body || body->ssid == b.ssid || body->ssid == b.ssid + "-Guest") continue;
    ++unauthorized;
    first = std::min(first, f.timestamp);
    last = std::max(last, f.timestamp);
  }
  EXPECT_EQ(unauthorized, b.n_ssids);
  const double realized = static_cast<double>(unauthorized - 1) / std::chrono::duration<double>(last - first).count();
  EXPECT_NEAR(realized, b.rate, b.rate * 0.01);
}

TEST(Synth, BenignConnectIsTenFrames) {
  const auto s = Scenario::defaults(ScenarioKind::BenignConnect);
  const auto t = gen(s);
  ASSERT_EQ(t.size(), 10u);
  std::map<DispatchClass, int> classes;
  for (const auto& f : t) {
    ++classes[classify(f)];
    EXPECT_TRUE(f.source_addr == s.ap_bssid || f.receiver_addr == s.ap_bssid);
  }
  EXPECT_EQ(classes[DispatchClass::Authentication], 4);
  EXPECT_EQ(classes[DispatchClass::Association], 2);
  EXPECT_EQ(classes[DispatchClass::Eapol], 4);
  std::vector<int> msgs;
  for (const auto& f : t)
    if (const auto* k = f.body_as<EapolKeyBody>()) msgs.push_back(k->msg_nr);
  EXPECT_EQ(msgs, (std::vector<int>{1, 2, 3, 4}));
}

TEST(Synth, TryWpa2SharesIdentityAtSixteenMilliseconds) {
  const auto s = Scenario::defaults(ScenarioKind::TryWpa2);
  std::vector<TimePoint> sae, psk;
  for (const auto& f : gen(s)) {
    const auto* b = f.body_as<BeaconBody>();
    ASSERT_TRUE(b && b->rsn);
    EXPECT_EQ(f.bssid, s.ap_bssid);
    EXPECT_EQ(b->ssid, s.ssid);
    (b->rsn->has(AkmKind::Sae) ? sae : psk).push_back(f.timestamp);
    if (!b->rsn->has(AkmKind::Sae)) {
      EXPECT_EQ(b->rsn->akm_count(), 1u);
    }
  }
  ASSERT_GT(sae.size(), 2u);
  ASSERT_GT(psk.size(), 2u);
  EXPECT_EQ(sae[1] - sae[0], milliseconds(100));
  EXPECT_EQ(psk[1] - psk[0], milliseconds(16));
}

TEST(Synth, DowngradeTransitionLegitAdvertisesBoth) {
  const auto s = Scenario::defaults(ScenarioKind::DowngradeTransition);
  std::size_t both = 0;
  for (const auto& f : gen(s))
    if (const auto* b = f.body_as<BeaconBody>(); b->rsn->akm_count() == 2) {
      EXPECT_TRUE(b->rsn->has(AkmKind::Psk) && b->rsn->has(AkmKind::Sae));
      ++both;
    }
  EXPECT_GT(both, 0u);
}

TEST(Synth, TimingProbesUseWeakGroups) {
  const auto s = Scenario::defaults(ScenarioKind::TimingProbes);
  const std::set<std::uint16_t> weak = {22, 23, 24, 27, 28, 29, 30};
  const auto t = gen(s);
  std::size_t rejections = 0;
  for (const auto& f : t) {
    const auto* a = f.body_as<AuthBody>();
    ASSERT_TRUE(a && a->cyclic_group);
    EXPECT_TRUE(weak.count(*a->cyclic_group));
    if (f.source_addr == s.ap_bssid) {
      EXPECT_EQ(a->status_code, StatusCode::GroupNotSupported);
      ++rejections;
    }
  }
  EXPECT_EQ(rejections, 500u);
  EXPECT_LE(t.back().timestamp - t.front().timestamp, std::chrono::hours(2));
}

TEST(Synth, DeauthRaceEndsWithReasonSeven) {
  const auto t = gen(Scenario::defaults(ScenarioKind::DeauthRace));
  const auto* r = t.back().body_as<ReasonBody>();
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->reason_code, ReasonCode::Class3FromNonassociated);
}

TEST(Synth, RestartStormReconnectsEveryClientWithinAMinute) {
  const auto s = Scenario::defaults(ScenarioKind::ApRestartStorm);
  EXPECT_EQ(s.clients, 30u);
  const auto t = gen(s);
  std::set<MacAddr> clients;
  for (const auto& f : t)
    if (is_connection_request(f, s.ap_bssid)) {
      clients.insert(f.source_addr);
      EXPECT_LT(f.timestamp - s.t0, seconds(60));
    }
  EXPECT_EQ(clients.size(), 30u);
}

TEST(Synth, FrameInvariantsHoldEverywhere) {
  for (auto kind : all_scenario_kinds()) {
    auto s = Scenario::defaults(kind);
    if (kind == ScenarioKind::AuthFlood) s.duration = seconds(20);
    const auto t = gen(s);
    ASSERT_FALSE(t.empty()) << to_string(kind);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& f = t[i];
      ASSERT_EQ(f.frame_number, i + 1);
      ASSERT_TRUE(i == 0 || f.timestamp >= t[i - 1].timestamp);
      ASSERT_LT(f.seq_num, 4096);
      ASSERT_LT(f.frame_subtype, 16);
      const auto* a = f.body_as<AuthBody>();
      ASSERT_TRUE(!a || !a->is_sae() || a->auth_seq == 1 || a->auth_seq == 2);
      const auto* k = f.body_as<EapolKeyBody>();
      ASSERT_TRUE(!k || (k->msg_nr >= 1 && k->msg_nr <= 4));
      const auto* b = f.body_as<BeaconBody>();
      ASSERT_TRUE(!b || b->ssid.size() <= 32);
    }
  }
}

TEST(Synth, GenuineSequenceNumbersIncrement) {
  const auto s = Scenario::defaults(ScenarioKind::ApRestartStorm);
  std::map<MacAddr, std::uint16_t> last;
  for (const auto& f : gen(s)) {
    if (f.flags.retry) continue;
    auto [it, fresh] = last.try_emplace(f.source_addr, f.seq_num);
    if (!fresh) {
      EXPECT_EQ(f.seq_num, (it->second + 1) % 4096);
      it->second = f.seq_num;
    }
  }
}

TEST(Synth, Reproducible) {
  for (auto kind : {ScenarioKind::Mixed, ScenarioKind::BeaconFlood, ScenarioKind::DeauthRace}) {
    auto s = Scenario::defaults(kind);
    s.seed = 42;
    EXPECT_EQ(pcap_bytes(gen(s)), pcap_bytes(gen(s)));
    auto other = s;
    other.seed = 43;
    EXPECT_NE(pcap_bytes(gen(s)), pcap_bytes(gen(other)));
  }
}

TEST(Synth, InvalidScenarios) {
  auto s = Scenario::defaults(ScenarioKind::ApRestartStorm);
  s.clients = 0;
  EXPECT_THROW(gen(s), InvalidScenario);
  s = Scenario::defaults(ScenarioKind::AuthFlood);
  s.rate = 0;
  EXPECT_THROW(gen(s), InvalidScenario);
  s = Scenario::defaults(ScenarioKind::GroupDowngrade);
  s.groups = {19};
  EXPECT_THROW(gen(s), InvalidScenario);
  s = Scenario::defaults(ScenarioKind::GroupUnsupported);
  s.race_lead = milliseconds(5);
  EXPECT_THROW(gen(s), InvalidScenario);
  s = Scenario::defaults(ScenarioKind::AuthFlood);
  s.rate = 1e6;
  s.duration = std::chrono::hours(24);
  EXPECT_THROW(gen(s), InvalidScenario);
}

TEST(ScenarioFile, ParseAndFormat) {
  const auto s = parse_scenario(
      "# flood at the detection threshold\n"
      "kind = AuthFlood\n"
      "rate = 20\n"
      "seed = 7\n"
      "duration = 240s\n");
  EXPECT_EQ(s.kind, ScenarioKind::AuthFlood);
  EXPECT_EQ(s.rate, 20.0);
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(gen(s).size(), 4800u);
  const auto again = parse_scenario(format_scenario(s));
  EXPECT_EQ(format_scenario(again), format_scenario(s));
  EXPECT_EQ(pcap_bytes(gen(again)), pcap_bytes(gen(s)));

  auto race = parse_scenario("kind = GroupUnsupported\nrace_lead = -2ms\n");
  EXPECT_EQ(race.race_lead, -milliseconds(2));

  EXPECT_THROW(parse_scenario("rate = 20\n"), InvalidScenario);
  EXPECT_THROW(parse_scenario("kind = AuthFlood\nspeed = 3\n"), InvalidScenario);
  EXPECT_THROW(parse_scenario("kind = Teleport\n"), InvalidScenario);
  EXPECT_THROW(parse_scenario("kind = AuthFlood\nrate = fast\n"), InvalidScenario);
}

}  // namespace
}  // namespace wids
