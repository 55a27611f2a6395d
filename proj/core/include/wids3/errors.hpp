// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wids {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UnsupportedLinkType : public Error {
 public:
  explicit UnsupportedLinkType(std::uint32_t link_type)
      : Error("unsupported pcap link type " + std::to_string(link_type)),
        link_type_(link_type) {}
  std::uint32_t link_type() const { return link_type_; }

 private:
  std::uint32_t link_type_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class MalformedFrame : public Error {
 public:
  using Error::Error;
};

class MalformedElement : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

/// CSV or alert-log content error with the 1-based line it occurred on.
class RecordError : public Error {
 public:
  RecordError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidScenario : public Error {
 public:
  using Error::Error;
};

class SourceUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace wids
