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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "protocol/geometry.hpp"
#include "protocol/raster.hpp"
#include "protocol/signature.hpp"

namespace tilecast::protocol {

enum class Codec { png, jpeg };

const char* codec_name(Codec codec);
const char* codec_mime_type(Codec codec);
const char* codec_extension(Codec codec);

struct CodecPolicy {
  enum class Kind { png, jpeg, automatic };
  Kind kind = Kind::png;
  int jpeg_quality = 75;  // used by jpeg and automatic

  static CodecPolicy png() { return {}; }
  static CodecPolicy jpeg(int quality) { return {Kind::jpeg, quality}; }
  static CodecPolicy automatic(int quality = 75) { return {Kind::automatic, quality}; }

  // "png", "jpeg:<1..100>", "auto" or "auto:<q>".
  static CodecPolicy parse(std::string_view text);
  std::string to_string() const;
};

struct TileRecord {
  TileSignature signature;
  std::int64_t width = 0;
  std::int64_t height = 0;
  Codec codec = Codec::png;
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const TileRecord&, const TileRecord&) = default;
};

struct ImageInfo {
  Codec codec = Codec::png;
  std::int64_t width = 0;
  std::int64_t height = 0;
};

std::vector<std::uint8_t> encode_png(const Raster& image);
std::vector<std::uint8_t> encode_jpeg(const Raster& image, int quality);

// Decodes either codec to RGBA8; JPEG yields opaque alpha.
Raster decode_image(std::span<const std::uint8_t> bytes);

// Reads only the header. Throws Error(codec) on unrecognized data.
ImageInfo probe_image(std::span<const std::uint8_t> bytes);

struct EncodedImage {
  Codec codec = Codec::png;
  std::vector<std::uint8_t> bytes;
};

// Applies the policy; automatic encodes both and keeps the smaller payload.
EncodedImage encode_image(const Raster& image, const CodecPolicy& policy);

// Signature is computed from the input pixels before any encoding.
TileRecord encode_tile(std::string_view url, const TileRect& rect,
                       std::span<const std::uint8_t> rgba, const CodecPolicy& policy);

// Encodes a tile whose signature is already known (publisher fast path).
TileRecord encode_tile(const TileSignature& signature, const Raster& pixels,
                       const CodecPolicy& policy);

}  // namespace tilecast::protocol
