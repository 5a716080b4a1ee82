/*
 * Copyright (c) 2026, The Tilecast Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tilecast {

enum class ErrorCode : int {
  invalid_argument = 1,
  invalid_geometry,
  invalid_pixel_buffer,
  codec,
  parse,
  validation,
  load,
  capture,
  mutation,
  not_found,
  conflict,
  sequence,
  integrity,
  transport,
  capacity,
  io,
};

const char* error_code_name(ErrorCode code) noexcept;

// Single exception type for the core. The code is what callers branch on;
// the message names the offending field or value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Malformed byte streams carry the offset at which parsing stopped.
class ParseError : public Error {
 public:
  ParseError(std::size_t byte_offset, const std::string& what)
      : Error(ErrorCode::parse, what + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Out-of-order ingest names the sequence number the relay expected.
class SequenceError : public Error {
 public:
  SequenceError(std::uint64_t expected, std::uint64_t got)
      : Error(ErrorCode::sequence, "expected seq " + std::to_string(expected) + ", got " +
                                       std::to_string(got)),
        expected_(expected) {}

  std::uint64_t expected() const noexcept { return expected_; }

 private:
  std::uint64_t expected_;
};

inline const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_geometry: return "invalid-geometry";
    case ErrorCode::invalid_pixel_buffer: return "invalid-pixel-buffer";
    case ErrorCode::codec: return "codec";
    case ErrorCode::parse: return "parse";
    case ErrorCode::validation: return "validation";
    case ErrorCode::load: return "load";
    case ErrorCode::capture: return "capture";
    case ErrorCode::mutation: return "mutation";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::sequence: return "sequence";
    case ErrorCode::integrity: return "integrity";
    case ErrorCode::transport: return "transport";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace tilecast
