// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace wids {

/// 48-bit IEEE MAC address stored as six raw bytes.
class MacAddr {
 public:
  constexpr MacAddr() = default;
  constexpr explicit MacAddr(std::array<std::uint8_t, 6> bytes) : bytes_(bytes) {}

  /// Parses "aa:bb:cc:dd:ee:ff" (':' or '-' separators, any case).
  static std::optional<MacAddr> parse(std::string_view text);
  static MacAddr from_bytes(std::span<const std::uint8_t> six);
  static constexpr MacAddr broadcast() {
    return MacAddr({0xff, 0xff, 0xff, 0xff, 0xff, 0xff});
  }

  /// Lower-case colon form.
  std::string to_string() const;

  const std::array<std::uint8_t, 6>& bytes() const { return bytes_; }
  bool is_zero() const;
  bool is_broadcast() const { return *this == broadcast(); }
  bool is_group() const { return (bytes_[0] & 0x01) != 0; }

  std::uint64_t as_u64() const;

  constexpr auto operator<=>(const MacAddr&) const = default;

 private:
  std::array<std::uint8_t, 6> bytes_{};
};

}  // namespace wids

template <>
struct std::hash<wids::MacAddr> {
  std::size_t operator()(const wids::MacAddr& m) const noexcept {
    return std::hash<std::uint64_t>{}(m.as_u64());
  }
};
