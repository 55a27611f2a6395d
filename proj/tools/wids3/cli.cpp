// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "wids3/alert.hpp"
#include "wids3/config.hpp"
#include "wids3/csv.hpp"
#include "wids3/engine.hpp"
#include "wids3/errors.hpp"
#include "wids3/mitigate.hpp"
#include "wids3/pcap.hpp"
#include "wids3/synth.hpp"

namespace wids::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view format_name(CaptureFormat f) {
  switch (f) {
    case CaptureFormat::Pcap: return "pcap";
    case CaptureFormat::PcapNg: return "pcapng";
    case CaptureFormat::Csv: return "csv";
    case CaptureFormat::Unknown: break;
  }
  return "unknown";
}

std::ofstream open_out(const std::filesystem::path& p, std::ios::openmode extra = {}) {
  std::ofstream f(p, std::ios::binary | extra);
  if (!f) throw IoError("cannot write " + p.string());
  return f;
}

/// Feeds frames to the engine, polling the authorized-AP source on trace time.
class Session {
 public:
  Session(const RunConfig& rc, std::ostream& err) : rc_(rc), engine_(rc.detector), err_(err) {
    if (!rc.authorized_ap_file.empty())
      monitor_.emplace(std::make_unique<FileApSource>(rc.authorized_ap_file));
    if (!rc.notice_log.empty()) {
      notice_file_ = open_out(rc.notice_log, std::ios::app);
      notices_.emplace(notice_file_);
    }
  }

  void feed(const FrameRecord& f) {
    if (monitor_ && (!next_poll_ || f.timestamp >= *next_poll_)) {
      poll(f.timestamp);
      next_poll_ = f.timestamp + rc_.nms_poll_interval;
    }
    keep(engine_.process(f));
  }

  void finish() { keep(engine_.finish()); }

  Engine& engine() { return engine_; }
  const std::vector<Alert>& alerts() const { return alerts_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  void poll(TimePoint now) {
    auto r = monitor_->refresh(now);
    for (auto& w : r.warnings) {
      err_ << "warning: " << w << '\n';
      warnings_.push_back(std::move(w));
    }
    engine_.authorize(r.authorized);
    for (const auto& s : r.signals) keep(engine_.signal(s));
  }

  void keep(std::vector<Alert> batch) {
    for (auto& a : batch) {
      registry_.record(a, notices_ ? &*notices_ : nullptr);
      alerts_.push_back(std::move(a));
    }
  }

  const RunConfig& rc_;
  Engine engine_;
  std::ostream& err_;
  std::optional<AuthorizedApMonitor> monitor_;
  std::optional<TimePoint> next_poll_;
  std::ofstream notice_file_;
  std::optional<NoticeLog> notices_;
  AffectedRegistry registry_;
  std::vector<Alert> alerts_;
  std::vector<std::string> warnings_;
};

ordered_json counts_json(const auto& m, auto name) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : m) j[std::string(name(k))] = v;
  return j;
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto wall0 = std::chrono::steady_clock::now();
    RunConfig rc;
    std::optional<std::filesystem::path> cfg_path = opt.config;
    if (!cfg_path) {
      if (const char* env = std::getenv("WIDS3_CONFIG"); env && *env) cfg_path = env;
    }
    if (cfg_path) rc = load_config(*cfg_path);

    if (!std::filesystem::is_regular_file(opt.input))
      throw IoError("cannot read input " + opt.input.string());
    const CaptureFormat fmt = sniff_file(opt.input);
    Session session(rc, err);

    std::uint64_t total = 0;
    std::uint64_t skipped = 0;
    std::vector<std::string> warnings;
    if (fmt == CaptureFormat::Pcap || fmt == CaptureFormat::PcapNg) {
      auto reader = PcapReader::open(opt.input);
      while (auto f = reader.next()) session.feed(*f);
      total = reader.stats().packets;
      skipped = reader.stats().skipped;
      warnings = reader.stats().warnings;
    } else if (fmt == CaptureFormat::Csv) {
      const auto frames = read_csv(opt.input);
      for (const auto& f : frames) session.feed(f);
      total = frames.size();
    } else {
      throw FormatError(opt.input.string() + " is neither pcap, pcapng nor frame CSV");
    }
    session.finish();
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    const auto& alerts = session.alerts();
    if (opt.output) {
      auto f = open_out(*opt.output, std::ios::trunc);
      write_alert_log(f, alerts);
    } else {
      write_alert_log(out, alerts);
    }

    const EngineStats& st = session.engine().stats();
    if (opt.report) {
      ordered_json rep;
      rep["input"] = opt.input.string();
      rep["format"] = format_name(fmt);
      rep["frames_total"] = total;
      rep["frames_processed"] = st.frames_processed;
      rep["frames_skipped"] = skipped + st.out_of_order_dropped;
      rep["malformed"] = skipped;
      rep["out_of_order"] = st.out_of_order_dropped;
      rep["retries"] = st.retries;
      rep["signals"] = st.signals;
      rep["alerts_suppressed"] = st.alerts_suppressed;
      rep["blocks"] = counts_json(st.per_block, [](DispatchClass c) {
        return std::string(1, block_letter(c));
      });
      rep["events"] = counts_json(st.events, [](EventSource s) { return to_string(s); });
      auto arr = ordered_json::array();
      for (const auto& a : alerts) arr.push_back(ordered_json::parse(to_json_line(a)));
      rep["alerts"] = std::move(arr);
      auto warn = ordered_json(warnings);
      for (const auto& w : session.warnings()) warn.push_back(w);
      for (const auto& w : session.engine().warnings()) warn.push_back(w);
      rep["warnings"] = std::move(warn);
      rep["wall_ms"] = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - wall0).count();
      auto f = open_out(*opt.report, std::ios::trunc);
      f << rep.dump(2) << '\n';
    }
    err << "analyzed " << st.frames_processed << " of " << total << " frames ("
        << skipped + st.out_of_order_dropped << " skipped), " << alerts.size() << " alert"
        << (alerts.size() == 1 ? "" : "s") << '\n';
    return alerts.empty() ? kExitClean : kExitAlerts;
  } catch (const std::exception& e) {
    err << "wids3 analyze: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto fmt = parse_trace_format(opt.format);
    if (!fmt) throw InvalidScenario("format must be pcap or csv, got '" + opt.format + "'");
    Scenario s = load_scenario(opt.scenario);
    if (opt.seed) s.seed = *opt.seed;
    const auto trace = gen(s);
    emit(trace, opt.out, *fmt);
    const Duration span =
        trace.empty() ? Duration::zero() : trace.back().timestamp - trace.front().timestamp;
    out << "wrote " << trace.size() << " frames spanning " << format_duration(span) << " to "
        << opt.out.string() << '\n';
    return kExitClean;
  } catch (const std::exception& e) {
    err << "wids3 synth: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_report(const std::filesystem::path& log, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(log, std::ios::binary);
    if (!in) throw IoError("cannot read alert log " + log.string());
    const auto alerts = read_alert_log(in);
    if (alerts.empty()) {
      out << "no alerts\n";
      return kExitClean;
    }
    struct Row {
      std::size_t count = 0;
      TimePoint first = TimePoint::max();
      TimePoint last = TimePoint::min();
      std::set<MacAddr> victims;
    };
    std::map<AlertKind, Row> rows;
    for (const auto& a : alerts) {
      Row& r = rows[a.kind];
      ++r.count;
      r.first = std::min(r.first, a.detected_at);
      r.last = std::max(r.last, a.detected_at);
      r.victims.insert(a.victim_addrs.begin(), a.victim_addrs.end());
    }
    out << std::left << std::setw(18) << "KIND" << std::setw(7) << "COUNT" << std::setw(29)
        << "FIRST" << std::setw(29) << "LAST"
        << "VICTIMS\n";
    for (const auto& [kind, r] : rows) {
      std::string victims = r.victims.empty() ? "-" : "";
      std::size_t shown = 0;
      for (const auto& v : r.victims) {
        if (shown == 3) {
          victims += " +" + std::to_string(r.victims.size() - 3) + " more";
          break;
        }
        victims += (shown++ ? " " : "") + v.to_string();
      }
      out << std::left << std::setw(18) << to_string(kind) << std::setw(7) << r.count
          << std::setw(29) << format_iso8601(r.first) << std::setw(29) << format_iso8601(r.last)
          << victims << '\n';
    }
    return kExitClean;
  } catch (const std::exception& e) {
    err << "wids3 report: " << e.what() << '\n';
    return kExitError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"WPA3 signature-based intrusion detection"};
  app.require_subcommand(1);

  AnalyzeOptions an;
  std::string an_config, an_output, an_report;
  auto* analyze = app.add_subcommand("analyze", "run the detectors over a pcap, pcapng or frame CSV");
  analyze->add_option("--input,-i", an.input, "capture or frame CSV")->required();
  auto* an_cfg = analyze->add_option("--config,-c", an_config, "key = value config (default $WIDS3_CONFIG)");
  auto* an_out = analyze->add_option("--output,-o", an_output, "alert log, JSON lines (default stdout)");
  auto* an_rep = analyze->add_option("--report", an_report, "run report, JSON");

  SynthOptions sy;
  std::uint64_t seed = 0;
  auto* synth = app.add_subcommand("synth", "generate a scenario trace");
  synth->add_option("--scenario,-s", sy.scenario, "scenario file")->required();
  auto* seed_opt = synth->add_option("--seed", seed, "override the scenario seed");
  synth->add_option("--out,-o", sy.out, "output file")->required();
  synth->add_option("--format,-f", sy.format, "pcap or csv")->capture_default_str();

  std::filesystem::path log;
  auto* report = app.add_subcommand("report", "summarize an alert log");
  report->add_option("--log,-l", log, "alert log, JSON lines")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitError;
  }

  if (analyze->parsed()) {
    if (an_cfg->count()) an.config = an_config;
    if (an_out->count()) an.output = an_output;
    if (an_rep->count()) an.report = an_report;
    return cmd_analyze(an, out, err);
  }
  if (synth->parsed()) {
    if (seed_opt->count()) sy.seed = seed;
    return cmd_synth(sy, out, err);
  }
  return cmd_report(log, out, err);
}

}  // namespace wids::cli
