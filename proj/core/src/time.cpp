// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include "wids3/time.hpp"

#include <cctype>
#include <cstdio>

namespace wids {

std::string format_iso8601(TimePoint t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const auto tod = t - day;
  const auto h = duration_cast<hours>(tod);
  const auto m = duration_cast<minutes>(tod - h);
  const auto s = duration_cast<seconds>(tod - h - m);
  const auto us = tod - h - m - s;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%06lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(h.count()),
                static_cast<int>(m.count()), static_cast<int>(s.count()),
                static_cast<long long>(us.count()));
  return buf;
}

std::optional<TimePoint> parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  int y = 0;
  unsigned mo = 0, d = 0;
  int h = 0, mi = 0, s = 0;
  char frac[16] = {0};
  const std::string owned(text);
  const int n = std::sscanf(owned.c_str(), "%4d-%2u-%2uT%2d:%2d:%2d.%9[0-9]Z", &y, &mo, &d, &h,
                            &mi, &s, frac);
  if (n < 6) return std::nullopt;
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) return std::nullopt;
  long long micros = 0;
  if (n == 7) {
    std::string f(frac);
    f.resize(6, '0');
    micros = std::stoll(f);
  }
  return TimePoint(sys_days{ymd}.time_since_epoch() + hours{h} + minutes{mi} + seconds{s} +
                   microseconds{micros});
}

std::optional<Duration> parse_duration(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0;
  std::size_t i = 0;
  while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
    ++i;
  if (i == 0) return std::nullopt;
  const std::string number(text.substr(0, i));
  try {
    value = std::stod(number);
  } catch (...) {
    return std::nullopt;
  }
  const std::string_view unit = text.substr(i);
  double scale = 0;
  if (unit == "us") scale = 1;
  else if (unit == "ms") scale = 1e3;
  else if (unit == "s") scale = 1e6;
  else if (unit == "min") scale = 60e6;
  else if (unit == "h") scale = 3600e6;
  else return std::nullopt;
  return Duration(static_cast<std::int64_t>(value * scale + 0.5));
}

std::string format_duration(Duration d) {
  const auto us = d.count();
  if (us % 3600'000'000 == 0 && us != 0) return std::to_string(us / 3600'000'000) + "h";
  if (us % 60'000'000 == 0 && us != 0) return std::to_string(us / 60'000'000) + "min";
  if (us % 1'000'000 == 0) return std::to_string(us / 1'000'000) + "s";
  if (us % 1'000 == 0) return std::to_string(us / 1'000) + "ms";
  return std::to_string(us) + "us";
}

}  // namespace wids
