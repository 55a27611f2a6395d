// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wids::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitAlerts = 1;
inline constexpr int kExitError = 2;

struct AnalyzeOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> config;  // falls back to $WIDS3_CONFIG
  std::optional<std::filesystem::path> output;  // alert JSONL; stdout when unset
  std::optional<std::filesystem::path> report;  // run report JSON
};

struct SynthOptions {
  std::filesystem::path scenario;
  std::optional<std::uint64_t> seed;  // overrides the scenario file
  std::filesystem::path out;
  std::string format = "pcap";
};

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);
int cmd_report(const std::filesystem::path& log, std::ostream& out, std::ostream& err);

/// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wids::cli
