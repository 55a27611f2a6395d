// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "wids3/csv.hpp"
#include "wids3/dot11.hpp"
#include "wids3/errors.hpp"
#include "wids3/pcap.hpp"

namespace wids {
namespace {

using std::chrono::milliseconds;
using std::chrono::seconds;

constexpr std::string_view kKindNames[] = {
    "BenignConnect", "ApRestartStorm", "BenignBeacons",   "Reconfigure",
    "LegitGroupRejection", "AuthFlood", "TryWpa2",        "DowngradeTransition",
    "CommitOutOfRange", "GroupUnsupported", "GroupDowngrade", "TimingProbes",
    "DeauthRace",    "BeaconFlood",    "ProbeFlood",      "RogueAp",
    "Mixed",
};

constexpr std::uint64_t kMaxFrames = 20'000'000;

// std distributions are implementation-defined; draws are spelled out so
// traces are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
  }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  MacAddr mac() {
    const std::uint64_t v = eng_();
    std::array<std::uint8_t, 6> b{};
    for (int i = 0; i < 6; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    b[0] = static_cast<std::uint8_t>((b[0] & 0xfc) | 0x02);  // local, unicast
    return MacAddr::from_bytes(b);
  }

 private:
  std::mt19937_64 eng_;
};

Duration us(std::int64_t v) { return Duration(v); }

RsnInfo make_rsn(std::vector<AkmSuite> akms, bool mfpr, bool mfpc) {
  RsnInfo r;
  r.group_cipher = kCipherCcmp128;
  r.pairwise_ciphers = {kCipherCcmp128};
  r.akm_types = std::move(akms);
  r.mfp_required = mfpr;
  r.mfp_capable = mfpc;
  return r;
}

RsnInfo rsn_sae() { return make_rsn({AkmSuite::sae()}, true, true); }
RsnInfo rsn_psk() { return make_rsn({AkmSuite::psk()}, false, false); }
RsnInfo rsn_transition() { return make_rsn({AkmSuite::psk(), AkmSuite::sae()}, false, true); }

AuthBody sae_commit(std::uint16_t group, StatusCode status = StatusCode::Success) {
  AuthBody a;
  a.auth_alg = AuthAlgorithm::Sae;
  a.auth_seq = 1;
  a.status_code = status;
  a.sae_message_type = SaeMessageType::Commit;
  if (status == StatusCode::Success || status == StatusCode::GroupNotSupported ||
      status == StatusCode::AntiCloggingTokenRequired || status == StatusCode::SaeHashToElement)
    a.cyclic_group = group;
  return a;
}

AuthBody sae_confirm() {
  AuthBody a;
  a.auth_alg = AuthAlgorithm::Sae;
  a.auth_seq = 2;
  a.status_code = StatusCode::Success;
  a.sae_message_type = SaeMessageType::Confirm;
  return a;
}

std::uint16_t interval_tu(Duration d) {
  return static_cast<std::uint16_t>(std::clamp<std::int64_t>((d.count() + 512) / 1024, 1, 65535));
}

/// Frame accumulator: per-transmitter sequence counters, then time ordering.
class Trace {
 public:
  Trace(const Scenario& s, Rng& rng) : s_(s), rng_(rng) {}

  static constexpr int kGenuine = 0;
  static constexpr int kSpoofed = 1;

  /// Sequence numbers are assigned in finish(), once frames are in air order.
  FrameRecord add(FrameRecord f, int stream = kGenuine) {
    auto [it, fresh] = seq_.try_emplace({f.source_addr, stream}, 0);
    if (fresh) it->second = static_cast<std::uint16_t>(rng_.below(4096));
    f.frame_number = frames_.size() + 1;  // provisional handle for retry()
    frames_.push_back(f);
    slots_.push_back({stream, 0});
    if (frames_.size() > kMaxFrames) throw InvalidScenario("scenario produces too many frames");
    return f;
  }

  /// Retransmission of an earlier add(), same sequence number.
  void retry(FrameRecord f, TimePoint t) {
    const auto origin = f.frame_number;
    f.timestamp = t;
    f.flags.retry = true;
    frames_.push_back(std::move(f));
    slots_.push_back({0, origin});
  }

  FrameRecord mgmt(TimePoint t, std::uint8_t st, const MacAddr& sa, const MacAddr& ra,
                   const MacAddr& bssid, FrameBody body) const {
    FrameRecord f;
    f.timestamp = t;
    f.frame_type = FrameType::Management;
    f.frame_subtype = st;
    f.source_addr = sa;
    f.receiver_addr = ra;
    f.bssid = bssid;
    f.body = std::move(body);
    return f;
  }

  FrameRecord beacon(TimePoint t, const MacAddr& bssid, const std::string& ssid,
                     std::optional<RsnInfo> rsn, Duration interval,
                     const MacAddr& ra = MacAddr::broadcast(),
                     std::uint8_t st = subtype::kBeacon) {
    BeaconBody b;
    b.beacon_interval = interval_tu(interval);
    b.beacon_timestamp = tsf_base(bssid) + static_cast<std::uint64_t>((t - s_.t0).count());
    b.ssid = ssid;
    b.rsn = std::move(rsn);
    return mgmt(t, st, bssid, ra, bssid, std::move(b));
  }

  FrameRecord eapol(TimePoint t, const MacAddr& client, std::uint8_t msg) const {
    FrameRecord f;
    f.timestamp = t;
    f.frame_type = FrameType::Data;
    f.frame_subtype = subtype::kQosData;
    const bool from_ap = msg == 1 || msg == 3;
    f.source_addr = from_ap ? s_.ap_bssid : client;
    f.receiver_addr = from_ap ? client : s_.ap_bssid;
    f.bssid = s_.ap_bssid;
    f.flags.from_ds = from_ap;
    f.flags.to_ds = !from_ap;
    f.body = EapolKeyBody{2, msg};
    return f;
  }

  FrameRecord auth(TimePoint t, const MacAddr& sa, const MacAddr& ra, AuthBody a) const {
    return mgmt(t, subtype::kAuthentication, sa, ra, s_.ap_bssid, a);
  }

  /// SAE commit/confirm both ways, association, 4-way handshake: 10 frames.
  void connect(const MacAddr& client, TimePoint start, std::uint16_t group = 19) {
    const MacAddr& ap = s_.ap_bssid;
    auto at = [&](int step) { return start + milliseconds(5 * step) + us(rng_.between(0, 999)); };
    add(auth(at(0), client, ap, sae_commit(group)));
    add(auth(at(1), ap, client, sae_commit(group)));
    add(auth(at(2), client, ap, sae_confirm()));
    add(auth(at(3), ap, client, sae_confirm()));
    AssocBody req;
    req.ssid = s_.ssid;
    req.rsn = rsn_sae();
    add(mgmt(at(4), subtype::kAssocRequest, client, ap, ap, req));
    AssocBody resp;
    resp.status_code = StatusCode::Success;
    resp.aid = static_cast<std::uint16_t>(1 + rng_.below(2007));
    add(mgmt(at(5), subtype::kAssocResponse, ap, client, ap, resp));
    for (std::uint8_t m = 1; m <= 4; ++m) add(eapol(at(5 + m), client, m));
  }

  void beacons(const MacAddr& bssid, const std::string& ssid, const std::optional<RsnInfo>& rsn,
               TimePoint from, TimePoint until, Duration interval, int stream = kGenuine) {
    for (TimePoint t = from; t < until; t += interval) add(beacon(t, bssid, ssid, rsn, interval), stream);
  }

  std::vector<FrameRecord> finish() {
    std::vector<std::size_t> order(frames_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return frames_[a].timestamp < frames_[b].timestamp; });
    std::vector<FrameRecord> out;
    out.reserve(order.size());
    for (auto i : order) {
      auto& f = frames_[i];
      if (const auto origin = slots_[i].origin) {
        f.seq_num = frames_[origin - 1].seq_num;
      } else {
        auto& next = seq_.at({f.source_addr, slots_[i].stream});
        f.seq_num = next;
        next = static_cast<std::uint16_t>((next + 1) % 4096);
      }
      out.push_back(f);
      out.back().frame_number = out.size();
    }
    frames_.clear();
    slots_.clear();
    return out;
  }

  Rng& rng() { return rng_; }

 private:
  std::uint64_t tsf_base(const MacAddr& bssid) {
    auto [it, fresh] = tsf_.try_emplace(bssid, 0);
    if (fresh) it->second = 1'000'000'000ull * (1 + rng_.below(1000));
    return it->second;
  }

  const Scenario& s_;
  Rng& rng_;
  std::map<std::pair<MacAddr, int>, std::uint16_t> seq_;
  std::map<MacAddr, std::uint64_t> tsf_;
  struct Slot {
    int stream;
    std::uint64_t origin;  // 1-based handle of the retransmitted frame, 0 if fresh
  };
  std::vector<FrameRecord> frames_;
  std::vector<Slot> slots_;
};

/// floor(i * 1e6 / rate) microseconds, exact for integral rates.
Duration uniform_offset(std::uint64_t i, double rate) {
  if (rate == std::floor(rate) && rate < 1e9) {
    const auto r = static_cast<std::uint64_t>(rate);
    return us(static_cast<std::int64_t>(i * 1'000'000ull / r));
  }
  return us(static_cast<std::int64_t>(std::floor(static_cast<double>(i) * 1e6 / rate)));
}

std::uint64_t rate_count(const Scenario& s) {
  return static_cast<std::uint64_t>(
      std::llround(s.rate * static_cast<double>(s.duration.count()) / 1e6));
}

std::string random_ssid(Rng& rng) {
  static constexpr std::string_view kAlnum =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  std::string out(static_cast<std::size_t>(rng.between(6, 16)), ' ');
  for (auto& c : out) c = kAlnum[rng.below(kAlnum.size())];
  return out;
}

std::string confusing_ssid(const std::string& base, Rng& rng) {
  static constexpr std::string_view kSwaps = "0O1lI5S_-.";
  std::string out = base;
  if (out.empty() || rng.chance(0.3)) {
    out += kSwaps[rng.below(kSwaps.size())];
    return out;
  }
  const auto pos = rng.below(out.size());
  char c;
  do c = kSwaps[rng.below(kSwaps.size())];
  while (c == out[pos]);
  out[pos] = c;
  return out;
}

MacAddr second_ap(const MacAddr& ap) {
  auto b = ap.bytes();
  b[5] = static_cast<std::uint8_t>(b[5] + 1);
  return MacAddr::from_bytes(b);
}

// --- per-kind generators --------------------------------------------------

void gen_benign_connect(const Scenario& s, Trace& tr) {
  for (std::uint32_t i = 0; i < s.clients; ++i)
    tr.connect(tr.rng().mac(), s.t0 + seconds(i) + us(tr.rng().between(0, 200'000)));
}

void gen_restart_storm(const Scenario& s, Trace& tr) {
  tr.beacons(s.ap_bssid, s.ssid, rsn_sae(), s.t0, s.t0 + s.duration, s.legit_interval);
  for (std::uint32_t i = 0; i < s.clients; ++i) {
    const auto offset = us(tr.rng().between(0, s.duration.count() - 1));
    tr.connect(tr.rng().mac(), s.t0 + offset);
  }
}

void gen_benign_beacons(const Scenario& s, Trace& tr) {
  tr.beacons(s.ap_bssid, s.ssid, rsn_transition(), s.t0, s.t0 + s.duration, s.legit_interval);
}

void gen_reconfigure(const Scenario& s, Trace& tr) {
  const auto switch_at = s.t0 + s.duration + s.gap;
  tr.beacons(s.ap_bssid, s.ssid, rsn_sae(), s.t0, s.t0 + s.duration, s.legit_interval);
  tr.beacons(s.ap_bssid, s.ssid, rsn_psk(), switch_at, switch_at + s.duration, s.legit_interval);
}

void gen_legit_rejection(const Scenario& s, Trace& tr) {
  const std::uint16_t rejected = s.groups.empty() ? 20 : s.groups.front();
  const std::uint16_t accepted = s.groups.size() > 1 ? s.groups[1] : 19;
  for (std::uint32_t i = 0; i < s.clients; ++i) {
    const MacAddr client = tr.rng().mac();
    const auto start = s.t0 + seconds(2 * i) + us(tr.rng().between(0, 200'000));
    tr.add(tr.auth(start, client, s.ap_bssid, sae_commit(rejected)));
    tr.add(tr.auth(start + milliseconds(5), s.ap_bssid, client,
                   sae_commit(rejected, StatusCode::GroupNotSupported)));
    tr.connect(client, start + seconds(1), accepted);
  }
}

void gen_auth_flood(const Scenario& s, Trace& tr) {
  const std::uint16_t group = s.groups.empty() ? 19 : s.groups.front();
  const auto n = rate_count(s);
  for (std::uint64_t i = 0; i < n; ++i) {
    const MacAddr spoofed = tr.rng().mac();
    tr.add(tr.auth(s.t0 + uniform_offset(i, s.rate), spoofed, s.ap_bssid, sae_commit(group)));
  }
}

void gen_try_wpa2(const Scenario& s, Trace& tr, bool transition) {
  const auto attack = s.t0 + seconds(1);
  const auto end = attack + s.duration;
  tr.beacons(s.ap_bssid, s.ssid, transition ? rsn_transition() : rsn_sae(), s.t0, end,
             s.legit_interval);
  tr.beacons(s.ap_bssid, s.ssid, rsn_psk(), attack + milliseconds(3), end, s.attacker_interval,
             Trace::kSpoofed);
}

/// Client commit answered by a spoofed rejection that beats the AP's success.
void rejection_race(const Scenario& s, Trace& tr, const MacAddr& client, TimePoint start,
                    std::uint16_t group, StatusCode rejection, int retries) {
  const MacAddr& ap = s.ap_bssid;
  tr.add(tr.auth(start, client, ap, sae_commit(group)));
  const auto reply = start + milliseconds(5) + us(tr.rng().between(0, 999));
  tr.add(tr.auth(reply - s.race_lead, ap, client, sae_commit(group, rejection)), Trace::kSpoofed);
  const auto success = tr.add(tr.auth(reply, ap, client, sae_commit(group)));
  // a client that won the race acknowledged the success, so nothing is retransmitted
  if (s.race_lead <= Duration::zero()) return;
  for (int r = 1; r <= retries; ++r) tr.retry(success, reply + milliseconds(r));
}

void gen_commit_race(const Scenario& s, Trace& tr, StatusCode rejection) {
  const std::uint16_t group = s.groups.empty() ? 19 : s.groups.front();
  for (std::uint32_t i = 0; i < s.clients; ++i) {
    const auto start = s.t0 + seconds(i) + milliseconds(1);
    rejection_race(s, tr, tr.rng().mac(), start, group, rejection, 2);
  }
}

void gen_group_downgrade(const Scenario& s, Trace& tr) {
  for (std::uint32_t i = 0; i < s.clients; ++i) {
    const MacAddr client = tr.rng().mac();
    auto t = s.t0 + seconds(2 * i) + milliseconds(1);
    for (std::size_t g = 0; g + 1 < s.groups.size(); ++g) {
      rejection_race(s, tr, client, t, s.groups[g], StatusCode::GroupNotSupported, 0);
      t += milliseconds(60);
    }
    tr.connect(client, t, s.groups.back());
  }
}

void gen_timing_probes(const Scenario& s, Trace& tr) {
  for (std::uint32_t i = 0; i < s.count; ++i) {
    const auto t = s.t0 + us(static_cast<std::int64_t>(
                              static_cast<std::uint64_t>(s.duration.count()) * i / s.count));
    const std::uint16_t group = s.groups[tr.rng().below(s.groups.size())];
    const MacAddr probe = tr.rng().mac();
    tr.add(tr.auth(t, probe, s.ap_bssid, sae_commit(group)));
    tr.add(tr.auth(t + milliseconds(3) + us(tr.rng().between(0, 999)), s.ap_bssid, probe,
                   sae_commit(group, StatusCode::GroupNotSupported)));
  }
}

void gen_deauth_race(const Scenario& s, Trace& tr) {
  const MacAddr& ap = s.ap_bssid;
  for (std::uint32_t c = 0; c < s.clients; ++c) {
    const MacAddr client = tr.rng().mac();
    for (std::uint32_t r = 0; r < s.repetitions; ++r) {
      const auto start = s.t0 + seconds(1 + r) + seconds(20 * c);
      auto at = [&](int ms) { return start + milliseconds(ms); };
      tr.add(tr.auth(at(0), client, ap, sae_commit(19)));
      tr.add(tr.auth(at(5), ap, client, sae_commit(19)));
      tr.add(tr.auth(at(10), client, ap, sae_confirm()));
      tr.add(tr.auth(at(15), ap, client, sae_confirm()));
      AssocBody req;
      req.ssid = s.ssid;
      req.rsn = rsn_sae();
      tr.add(tr.mgmt(at(20), subtype::kAssocRequest, client, ap, ap, req));
      const auto reply = at(25);
      tr.add(tr.mgmt(reply - s.race_lead, subtype::kDeauthentication, ap, client, ap,
                     ReasonBody{ReasonCode::Unspecified}),
             Trace::kSpoofed);
      AssocBody resp;
      resp.status_code = StatusCode::Success;
      resp.aid = static_cast<std::uint16_t>(1 + c);
      tr.add(tr.mgmt(reply, subtype::kAssocResponse, ap, client, ap, resp));
      tr.add(tr.eapol(at(30), client, 1));
      tr.add(tr.mgmt(at(32), subtype::kDeauthentication, client, ap, ap,
                     ReasonBody{ReasonCode::Class3FromNonassociated}));
    }
  }
}

/// Two authorized APs beaconing from t0 to `end`.
void authorized_aps(const Scenario& s, Trace& tr, TimePoint end) {
  tr.beacons(s.ap_bssid, s.ssid, rsn_sae(), s.t0, end, s.legit_interval);
  tr.beacons(second_ap(s.ap_bssid), s.ssid + "-Guest", rsn_sae(), s.t0 + milliseconds(7), end,
             s.legit_interval);
}

void gen_beacon_flood(const Scenario& s, Trace& tr, bool probes) {
  const auto start = s.t0 + s.lead_in;
  const std::uint64_t n = s.n_ssids;
  const auto flood_end = start + uniform_offset(n, s.rate);
  authorized_aps(s, tr, flood_end + seconds(1));
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string ssid;
    do ssid = s.mode == BeaconFloodMode::RandomSsids ? random_ssid(tr.rng()) : confusing_ssid(s.ssid, tr.rng());
    while (ssid == s.ssid || ssid == s.ssid + "-Guest");
    const MacAddr bssid = tr.rng().mac();
    const auto t = start + uniform_offset(i, s.rate);
    if (probes)
      tr.add(tr.beacon(t, bssid, ssid, std::nullopt, s.legit_interval, tr.rng().mac(),
                       subtype::kProbeResponse));
    else
      tr.add(tr.beacon(t, bssid, ssid, std::nullopt, s.legit_interval));
  }
}

void gen_rogue(const Scenario& s, Trace& tr) {
  const auto start = s.t0 + s.lead_in;
  authorized_aps(s, tr, start + s.duration + seconds(1));
  const MacAddr rogue = tr.rng().mac();
  tr.beacons(rogue, "Free-WiFi", std::nullopt, start, start + s.duration, s.legit_interval);
}

void gen_mixed(const Scenario& s, Trace& tr) {
  Rng& rng = tr.rng();
  const auto end = s.t0 + s.duration;
  authorized_aps(s, tr, end);

  const auto bursts = 1 + rng.below(6);
  for (std::uint64_t b = 0; b < bursts; ++b) {
    const auto start = s.t0 + us(rng.between(0, s.duration.count() - 1));
    const double rate = 4.0 + static_cast<double>(rng.below(37));
    const auto len = seconds(rng.between(1, 30));
    const bool legit = rng.chance(0.3);
    for (std::uint64_t i = 0;; ++i) {
      const auto t = start + uniform_offset(i, rate);
      if (t >= start + len || t >= end) break;
      const MacAddr client = rng.mac();
      if (legit) {
        tr.connect(client, t);
      } else {
        tr.add(tr.auth(t, client, s.ap_bssid, sae_commit(19)));
      }
    }
  }

  std::vector<std::pair<MacAddr, std::string>> pool;
  for (int i = 0; i < 4; ++i) pool.emplace_back(rng.mac(), random_ssid(rng));
  pool.emplace_back(s.ap_bssid, "Evil-" + s.ssid);        // known bssid, foreign ssid
  pool.emplace_back(rng.mac(), s.ssid);                   // foreign bssid, known ssid
  const auto unauth = rng.below(8);
  for (std::uint64_t b = 0; b < unauth; ++b) {
    auto t = s.t0 + us(rng.between(0, s.duration.count() - 1));
    const auto frames = rng.between(1, 30);
    const auto gap = milliseconds(rng.between(20, 3000));
    const bool probe = rng.chance(0.3);
    const auto fixed = pool[rng.below(pool.size())];
    for (std::int64_t i = 0; i < frames && t < end; ++i, t += gap) {
      auto id = rng.chance(0.5) ? fixed : pool[rng.below(pool.size())];
      if (probe)
        tr.add(tr.beacon(t, id.first, id.second, std::nullopt, s.legit_interval, rng.mac(),
                         subtype::kProbeResponse));
      else
        tr.add(tr.beacon(t, id.first, id.second, std::nullopt, s.legit_interval));
    }
  }
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
    throw InvalidScenario("scenario key '" + std::string(key) + "': bad number '" + std::string(v) + "'");
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool client_dependent(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::BenignConnect:
    case ScenarioKind::ApRestartStorm:
    case ScenarioKind::LegitGroupRejection:
    case ScenarioKind::CommitOutOfRange:
    case ScenarioKind::GroupUnsupported:
    case ScenarioKind::GroupDowngrade:
    case ScenarioKind::DeauthRace:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string_view to_string(ScenarioKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<ScenarioKind> parse_scenario_kind(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kKindNames); ++i)
    if (kKindNames[i] == s) return static_cast<ScenarioKind>(i);
  return std::nullopt;
}

std::vector<ScenarioKind> all_scenario_kinds() {
  std::vector<ScenarioKind> out;
  for (std::size_t i = 0; i < std::size(kKindNames); ++i) out.push_back(static_cast<ScenarioKind>(i));
  return out;
}

Scenario Scenario::defaults(ScenarioKind kind) {
  Scenario s;
  s.kind = kind;
  switch (kind) {
    case ScenarioKind::ApRestartStorm:
      s.clients = 30;
      s.duration = seconds(60);
      break;
    case ScenarioKind::BenignBeacons:
      s.duration = seconds(60);
      break;
    case ScenarioKind::LegitGroupRejection:
      s.groups = {20, 19};
      break;
    case ScenarioKind::AuthFlood:
      s.rate = 200;
      s.duration = seconds(240);
      s.groups = {19};
      break;
    case ScenarioKind::CommitOutOfRange:
    case ScenarioKind::GroupUnsupported:
      s.groups = {19};
      break;
    case ScenarioKind::GroupDowngrade:
      s.groups = {21, 20, 19};
      break;
    case ScenarioKind::TimingProbes:
      s.count = 500;
      s.duration = std::chrono::hours(2);
      s.groups = {22, 23, 24, 27, 28, 29, 30};
      break;
    case ScenarioKind::BeaconFlood:
    case ScenarioKind::ProbeFlood:
      s.rate = 100;
      s.n_ssids = 200;
      break;
    case ScenarioKind::RogueAp:
      s.duration = seconds(60);
      break;
    case ScenarioKind::Mixed:
      s.duration = seconds(400);
      break;
    default:
      break;
  }
  return s;
}

void Scenario::validate() const {
  const auto bad = [&](const std::string& why) {
    throw InvalidScenario(std::string(to_string(kind)) + ": " + why);
  };
  if (client_dependent(kind) && clients == 0) bad("needs at least one client");
  if (duration <= Duration::zero()) bad("duration must be positive");
  if (legit_interval <= Duration::zero() || attacker_interval <= Duration::zero())
    bad("beacon intervals must be positive");
  if (gap < Duration::zero() || lead_in < Duration::zero()) bad("gap and lead_in must not be negative");
  if (race_lead >= milliseconds(5) || race_lead <= -milliseconds(5))
    bad("race_lead must lie strictly between -5ms and 5ms");
  if (ssid.size() > 32) bad("ssid longer than 32 bytes");
  const bool rated = kind == ScenarioKind::AuthFlood || kind == ScenarioKind::BeaconFlood ||
                     kind == ScenarioKind::ProbeFlood;
  if (rated && !(rate > 0 && std::isfinite(rate))) bad("rate must be positive");
  if (kind == ScenarioKind::AuthFlood && rate_count(*this) == 0) bad("rate x duration yields no frames");
  if (kind == ScenarioKind::GroupDowngrade && groups.size() < 2) bad("needs at least two groups");
  if (kind == ScenarioKind::TimingProbes && (count == 0 || groups.empty()))
    bad("needs a positive count and at least one group");
  if (kind == ScenarioKind::DeauthRace && repetitions == 0) bad("repetitions must be positive");
  if ((kind == ScenarioKind::BeaconFlood || kind == ScenarioKind::ProbeFlood) && n_ssids == 0)
    bad("n_ssids must be positive");
  if (kind == ScenarioKind::AuthFlood && rate_count(*this) > kMaxFrames) bad("too many frames");
  if ((kind == ScenarioKind::TryWpa2 || kind == ScenarioKind::DowngradeTransition ||
       kind == ScenarioKind::BenignBeacons || kind == ScenarioKind::RogueAp) &&
      duration / attacker_interval > static_cast<std::int64_t>(kMaxFrames))
    bad("too many frames");
}

std::vector<FrameRecord> gen(const Scenario& s) {
  s.validate();
  Rng rng(s.seed);
  Trace tr(s, rng);
  switch (s.kind) {
    case ScenarioKind::BenignConnect: gen_benign_connect(s, tr); break;
    case ScenarioKind::ApRestartStorm: gen_restart_storm(s, tr); break;
    case ScenarioKind::BenignBeacons: gen_benign_beacons(s, tr); break;
    case ScenarioKind::Reconfigure: gen_reconfigure(s, tr); break;
    case ScenarioKind::LegitGroupRejection: gen_legit_rejection(s, tr); break;
    case ScenarioKind::AuthFlood: gen_auth_flood(s, tr); break;
    case ScenarioKind::TryWpa2: gen_try_wpa2(s, tr, false); break;
    case ScenarioKind::DowngradeTransition: gen_try_wpa2(s, tr, true); break;
    case ScenarioKind::CommitOutOfRange: gen_commit_race(s, tr, StatusCode::UnspecifiedFailure); break;
    case ScenarioKind::GroupUnsupported: gen_commit_race(s, tr, StatusCode::GroupNotSupported); break;
    case ScenarioKind::GroupDowngrade: gen_group_downgrade(s, tr); break;
    case ScenarioKind::TimingProbes: gen_timing_probes(s, tr); break;
    case ScenarioKind::DeauthRace: gen_deauth_race(s, tr); break;
    case ScenarioKind::BeaconFlood: gen_beacon_flood(s, tr, false); break;
    case ScenarioKind::ProbeFlood: gen_beacon_flood(s, tr, true); break;
    case ScenarioKind::RogueAp: gen_rogue(s, tr); break;
    case ScenarioKind::Mixed: gen_mixed(s, tr); break;
  }
  return tr.finish();
}

DetectorConfig config_for(const Scenario& s) {
  DetectorConfig cfg;
  cfg.protected_bssid = s.ap_bssid;
  cfg.protected_ssid = s.ssid;
  return cfg;
}

Scenario parse_scenario(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InvalidScenario("scenario line " + std::to_string(line_no) + ": expected key = value");
    kv.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }

  std::optional<ScenarioKind> kind;
  for (const auto& [k, v] : kv) {
    if (k != "kind") continue;
    kind = parse_scenario_kind(v);
    if (!kind) throw InvalidScenario("unknown scenario kind '" + v + "'");
  }
  if (!kind) throw InvalidScenario("scenario has no kind");

  Scenario s = Scenario::defaults(*kind);
  const auto duration = [](const std::string& k, const std::string& v) {
    std::string_view body = v;
    const bool neg = !body.empty() && body.front() == '-';
    if (neg) body.remove_prefix(1);
    auto d = parse_duration(body);
    if (!d) throw InvalidScenario("scenario key '" + k + "': expected a duration with unit");
    return neg ? -*d : *d;
  };
  for (const auto& [k, v] : kv) {
    if (k == "kind") continue;
    if (k == "seed") s.seed = parse_number<std::uint64_t>(k, v);
    else if (k == "t0") {
      if (auto t = parse_iso8601(v)) s.t0 = *t;
      else s.t0 = from_micros(parse_number<std::int64_t>(k, v));
    } else if (k == "ap_bssid") {
      auto m = MacAddr::parse(v);
      if (!m) throw InvalidScenario("scenario key 'ap_bssid': bad MAC");
      s.ap_bssid = *m;
    } else if (k == "ssid") s.ssid = v;
    else if (k == "clients") s.clients = parse_number<std::uint32_t>(k, v);
    else if (k == "rate") s.rate = parse_number<double>(k, v);
    else if (k == "duration") s.duration = duration(k, v);
    else if (k == "legit_interval") s.legit_interval = duration(k, v);
    else if (k == "attacker_interval") s.attacker_interval = duration(k, v);
    else if (k == "gap") s.gap = duration(k, v);
    else if (k == "lead_in") s.lead_in = duration(k, v);
    else if (k == "race_lead") s.race_lead = duration(k, v);
    else if (k == "count") s.count = parse_number<std::uint32_t>(k, v);
    else if (k == "repetitions") s.repetitions = parse_number<std::uint32_t>(k, v);
    else if (k == "n_ssids") s.n_ssids = parse_number<std::uint32_t>(k, v);
    else if (k == "mode") {
      if (v == "RandomSsids") s.mode = BeaconFloodMode::RandomSsids;
      else if (v == "ConfusingSsids") s.mode = BeaconFloodMode::ConfusingSsids;
      else throw InvalidScenario("scenario key 'mode': expected RandomSsids or ConfusingSsids");
    } else if (k == "groups") {
      s.groups.clear();
      std::string_view rest = v;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        s.groups.push_back(parse_number<std::uint16_t>(k, trim(rest.substr(0, comma))));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
    } else {
      throw InvalidScenario("unknown scenario key '" + k + "'");
    }
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream o;
  const auto dur = [](Duration d) {
    return d < Duration::zero() ? "-" + format_duration(-d) : format_duration(d);
  };
  o << "kind = " << to_string(s.kind) << '\n'
    << "seed = " << s.seed << '\n'
    << "t0 = " << to_micros(s.t0) << '\n'
    << "ap_bssid = " << s.ap_bssid.to_string() << '\n'
    << "ssid = " << s.ssid << '\n'
    << "clients = " << s.clients << '\n';
  char rate[64];
  std::snprintf(rate, sizeof rate, "%.17g", s.rate);
  o << "rate = " << rate << '\n'
    << "duration = " << dur(s.duration) << '\n'
    << "legit_interval = " << dur(s.legit_interval) << '\n'
    << "attacker_interval = " << dur(s.attacker_interval) << '\n'
    << "gap = " << dur(s.gap) << '\n'
    << "lead_in = " << dur(s.lead_in) << '\n'
    << "race_lead = " << dur(s.race_lead) << '\n';
  if (!s.groups.empty()) {
    o << "groups = ";
    for (std::size_t i = 0; i < s.groups.size(); ++i) o << (i ? "," : "") << s.groups[i];
    o << '\n';
  }
  o << "count = " << s.count << '\n'
    << "repetitions = " << s.repetitions << '\n'
    << "mode = " << (s.mode == BeaconFloodMode::RandomSsids ? "RandomSsids" : "ConfusingSsids") << '\n'
    << "n_ssids = " << s.n_ssids << '\n';
  return o.str();
}

std::optional<TraceFormat> parse_trace_format(std::string_view s) {
  if (s == "pcap") return TraceFormat::Pcap;
  if (s == "csv") return TraceFormat::Csv;
  return std::nullopt;
}

void emit(const std::vector<FrameRecord>& trace, const std::filesystem::path& out, TraceFormat fmt) {
  if (fmt == TraceFormat::Pcap)
    write_pcap(out, trace);
  else
    write_csv(out, trace);
}

}  // namespace wids
