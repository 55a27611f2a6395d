// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/mitigate.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "wids3/csv.hpp"
#include "wids3/errors.hpp"

namespace wids {

void NoticeLog::append(const ClientNotice& n) {
  nlohmann::ordered_json j;
  j["client"] = n.client.to_string();
  j["kind"] = to_string(n.kind);
  j["first_seen"] = format_iso8601(n.first_seen);
  j["last_seen"] = format_iso8601(n.last_seen);
  j["count"] = n.count;
  *out_ << j.dump() << '\n';
}

std::size_t AffectedRegistry::record(const Alert& alert, NoticeLog* log) {
  if (!seen_.insert(to_json_line(alert)).second) return 0;
  for (const auto& client : alert.victim_addrs) {
    auto [it, fresh] = entries_.try_emplace({client, alert.kind});
    ClientNotice& n = it->second;
    if (fresh) {
      n.client = client;
      n.kind = alert.kind;
      n.first_seen = alert.detected_at;
      n.last_seen = alert.detected_at;
    } else {
      n.first_seen = std::min(n.first_seen, alert.detected_at);
      n.last_seen = std::max(n.last_seen, alert.detected_at);
    }
    ++n.count;
    if (log) log->append(n);
  }
  return alert.victim_addrs.size();
}

std::vector<ClientNotice> AffectedRegistry::entries() const {
  std::vector<ClientNotice> out;
  for (const auto& [key, n] : entries_) out.push_back(n);
  return out;
}

std::optional<ClientNotice> AffectedRegistry::find(const MacAddr& client, AlertKind kind) const {
  auto it = entries_.find({client, kind});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

namespace {
std::string_view status_text(ApStatus s) {
  switch (s) {
    case ApStatus::Active: return "Active";
    case ApStatus::Restarted: return "Restarted";
    case ApStatus::New: return "New";
  }
  return "Active";
}
}  // namespace

std::vector<AuthorizedApEntry> parse_authorized_aps(std::string_view text) {
  std::istringstream in{std::string(text)};
  CsvTokenizer tok(in);
  std::vector<std::string> fields;
  std::vector<AuthorizedApEntry> out;
  std::set<MacAddr> seen;
  while (tok.next(fields)) {
    if (!fields.empty() && !fields[0].empty() && fields[0][0] == '#') continue;
    if (fields.size() != 4)
      throw RecordError(tok.line(), "expected bssid,ssid,status,timestamp_us");
    AuthorizedApEntry e;
    auto mac = MacAddr::parse(fields[0]);
    if (!mac) throw RecordError(tok.line(), "bad bssid '" + fields[0] + "'");
    e.ap = {*mac, fields[1]};
    if (fields[2] == "Active")
      e.status = ApStatus::Active;
    else if (fields[2] == "Restarted")
      e.status = ApStatus::Restarted;
    else if (fields[2] == "New")
      e.status = ApStatus::New;
    else
      throw RecordError(tok.line(), "unknown status '" + fields[2] + "'");
    std::int64_t us = 0;
    const auto& ts = fields[3];
    const auto [p, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), us);
    if (ts.empty() || ec != std::errc{} || p != ts.data() + ts.size())
      throw RecordError(tok.line(), "bad timestamp '" + ts + "'");
    e.at = from_micros(us);
    if (!seen.insert(*mac).second)
      throw RecordError(tok.line(), "duplicate bssid " + mac->to_string());
    out.push_back(std::move(e));
  }
  return out;
}

std::string format_authorized_aps(const std::vector<AuthorizedApEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.ap.bssid.to_string() + ',' + csv_escape(e.ap.ssid) + ',' +
           std::string(status_text(e.status)) + ',' + std::to_string(to_micros(e.at)) + '\n';
  }
  return out;
}

std::string FileApSource::fetch() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw SourceUnavailable("cannot read authorized-AP list " + path_.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AuthorizedApMonitor::AuthorizedApMonitor(std::unique_ptr<AuthorizedApSource> source)
    : source_(std::move(source)) {}

ApRefresh AuthorizedApMonitor::refresh(TimePoint now) {
  ApRefresh r;
  std::vector<AuthorizedApEntry> entries;
  try {
    entries = parse_authorized_aps(source_->fetch());
  } catch (const Error& e) {
    r.warnings.push_back(std::string(e.what()) + "; keeping previous authorized set");
    r.authorized = authorized_;
    return r;
  }

  authorized_.clear();
  for (const auto& e : entries) authorized_.push_back(e.ap);
  r.authorized = authorized_;

  for (const auto& e : entries) {
    if (e.status == ApStatus::Active || e.at > now) continue;
    if (!signalled_.insert({e.ap.bssid, e.status, to_micros(e.at)}).second) continue;
    if (!primed_) continue;
    ControlSignal s;
    s.kind = e.status == ApStatus::Restarted ? SignalKind::ApRestarted : SignalKind::NmsUpdate;
    s.at = e.at;
    s.aps = {e.ap};
    r.signals.push_back(std::move(s));
  }
  primed_ = true;
  std::stable_sort(r.signals.begin(), r.signals.end(),
                   [](const auto& a, const auto& b) { return a.at < b.at; });
  return r;
}

std::optional<RogueRecord> RogueTracker::observe(const AuthorizedAp& id, TimePoint t,
                                                 std::uint64_t frame, bool suppressed) {
  auto [it, fresh] = seen_.try_emplace(id);
  State& s = it->second;
  if (fresh || t - s.rec.last_seen > persistence_) {
    // first sighting, or the identity went quiet long enough to start over
    const bool reported = !fresh && s.reported;
    s = State{{id, t, t, frame, frame}, reported};
  }
  s.rec.last_seen = t;
  s.rec.last_frame = frame;
  if (s.reported || suppressed || t - s.rec.first_seen < persistence_) return std::nullopt;
  s.reported = true;
  return s.rec;
}

std::vector<RogueRecord> RogueTracker::reported() const {
  std::vector<RogueRecord> out;
  for (const auto& [id, s] : seen_)
    if (s.reported) out.push_back(s.rec);
  return out;
}

}  // namespace wids
