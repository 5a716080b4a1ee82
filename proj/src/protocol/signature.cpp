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

#include "protocol/signature.hpp"

#include <openssl/evp.h>

#include <string>

#include "core/error.hpp"

namespace tilecast::protocol {

namespace {

EVP_MD_CTX* as_ctx(void* p) { return static_cast<EVP_MD_CTX*>(p); }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Md5::Md5() : ctx_(EVP_MD_CTX_new()) {
  if (ctx_ == nullptr || EVP_DigestInit_ex(as_ctx(ctx_), EVP_md5(), nullptr) != 1) {
    EVP_MD_CTX_free(as_ctx(ctx_));
    throw Error(ErrorCode::invalid_argument, "MD5 digest unavailable");
  }
}

Md5::~Md5() { EVP_MD_CTX_free(as_ctx(ctx_)); }

Md5& Md5::update(std::span<const std::uint8_t> bytes) {
  if (!bytes.empty()) EVP_DigestUpdate(as_ctx(ctx_), bytes.data(), bytes.size());
  return *this;
}

Md5& Md5::update(std::string_view text) {
  if (!text.empty()) EVP_DigestUpdate(as_ctx(ctx_), text.data(), text.size());
  return *this;
}

Md5Digest Md5::finish() {
  Md5Digest out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(as_ctx(ctx_), out.data(), &len);
  return out;
}

Md5Digest md5(std::span<const std::uint8_t> bytes) { return Md5().update(bytes).finish(); }

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

std::string TileSignature::hex() const { return to_hex(digest_); }

std::optional<TileSignature> TileSignature::from_hex(std::string_view hex) {
  if (hex.size() != 32) return std::nullopt;
  Md5Digest d{};
  for (std::size_t i = 0; i < d.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    d[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return TileSignature(d);
}

TileSignature tile_signature(std::string_view url, TilePos pos, std::int64_t width,
                             std::int64_t height, std::span<const std::uint8_t> rgba) {
  if (width < 1 || height < 1 || width > kTileSize || height > kTileSize) {
    throw Error(ErrorCode::invalid_pixel_buffer,
                "tile dimensions " + std::to_string(width) + "x" + std::to_string(height) +
                    " outside [1, 256]");
  }
  const auto expected = static_cast<std::size_t>(4 * width * height);
  if (rgba.size() != expected) {
    throw Error(ErrorCode::invalid_pixel_buffer, "pixel buffer has " +
                                                     std::to_string(rgba.size()) +
                                                     " bytes, expected " +
                                                     std::to_string(expected));
  }
  static constexpr std::uint8_t kSep[1] = {0};
  const std::string position = std::to_string(pos.col) + "," + std::to_string(pos.row);
  return TileSignature(
      Md5().update(url).update(kSep).update(position).update(kSep).update(rgba).finish());
}

TileSignature tile_signature(std::string_view url, const TileRect& rect,
                             std::span<const std::uint8_t> rgba) {
  return tile_signature(url, rect.pos, rect.width, rect.height, rgba);
}

}  // namespace tilecast::protocol
