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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "protocol/geometry.hpp"

namespace tilecast::protocol {

using Md5Digest = std::array<std::uint8_t, 16>;

// Incremental MD5 over OpenSSL's EVP interface.
class Md5 {
 public:
  Md5();
  ~Md5();
  Md5(const Md5&) = delete;
  Md5& operator=(const Md5&) = delete;

  Md5& update(std::span<const std::uint8_t> bytes);
  Md5& update(std::string_view text);
  Md5Digest finish();

 private:
  void* ctx_;
};

Md5Digest md5(std::span<const std::uint8_t> bytes);

// Content-addressed identity of one tile.
class TileSignature {
 public:
  TileSignature() = default;
  explicit TileSignature(const Md5Digest& digest) : digest_(digest) {}

  // 32 lowercase hex characters.
  std::string hex() const;
  // Accepts exactly 32 hex characters (either case); nullopt otherwise.
  static std::optional<TileSignature> from_hex(std::string_view hex);

  const Md5Digest& digest() const { return digest_; }

  friend bool operator==(const TileSignature&, const TileSignature&) = default;
  friend auto operator<=>(const TileSignature&, const TileSignature&) = default;

 private:
  Md5Digest digest_{};
};

// MD5 over: url ‖ 0x00 ‖ decimal(col) ‖ "," ‖ decimal(row) ‖ 0x00 ‖ rgba.
// Throws Error(invalid_pixel_buffer) if rgba is not 4 × width × height of the
// rect.
TileSignature tile_signature(std::string_view url, const TileRect& rect,
                             std::span<const std::uint8_t> rgba);

// Variant for callers that only know the position and the pixel dimensions.
TileSignature tile_signature(std::string_view url, TilePos pos, std::int64_t width,
                             std::int64_t height, std::span<const std::uint8_t> rgba);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace tilecast::protocol

template <>
struct std::hash<tilecast::protocol::TileSignature> {
  std::size_t operator()(const tilecast::protocol::TileSignature& s) const noexcept {
    std::size_t h = 0;
    for (int i = 0; i < 8; ++i) h = (h << 8) | s.digest()[i];
    return h;
  }
};
