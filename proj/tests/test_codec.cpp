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

#include <doctest.h>

#include <random>

#include "core/error.hpp"
#include "protocol/codec.hpp"
#include "support.hpp"

using namespace tilecast;
using namespace tilecast::protocol;

TEST_CASE("PNG round trip is lossless, including alpha and cropped sizes") {
  std::mt19937_64 rng(5);
  for (auto [w, h] : {std::pair{256, 256}, std::pair{1, 1}, std::pair{44, 88}, std::pair{256, 184}}) {
    Raster r = testsupport::noise_raster(w, h, rng);
    r.rgba[3] = 17;
    const auto png = encode_png(r);
    const auto info = probe_image(png);
    CHECK(info.codec == Codec::png);
    CHECK(info.width == w);
    CHECK(info.height == h);
    CHECK(decode_image(png) == r);
  }
}

TEST_CASE("JPEG decodes to the right size with opaque alpha") {
  std::mt19937_64 rng(6);
  const Raster r = testsupport::noise_raster(100, 60, rng);
  const auto jpg = encode_jpeg(r, 75);
  const auto info = probe_image(jpg);
  CHECK(info.codec == Codec::jpeg);
  CHECK(info.width == 100);
  const Raster back = decode_image(jpg);
  CHECK(back.height == 60);
  for (std::size_t i = 3; i < back.rgba.size(); i += 4) REQUIRE(back.rgba[i] == 255);
}

TEST_CASE("higher JPEG quality never shrinks a noisy image") {
  std::mt19937_64 rng(8);
  const Raster r = testsupport::noise_raster(256, 256, rng);
  CHECK(encode_jpeg(r, 30).size() <= encode_jpeg(r, 75).size());
  CHECK(encode_jpeg(r, 75).size() <= encode_jpeg(r, 95).size());
}

TEST_CASE("automatic policy keeps the smaller payload") {
  std::mt19937_64 rng(9);
  const Raster noisy = testsupport::noise_raster(256, 256, rng);
  const Raster flat(256, 256, {255, 255, 255, 255});
  for (const Raster* r : {&noisy, &flat}) {
    const auto chosen = encode_image(*r, CodecPolicy::automatic(75));
    const auto png = encode_png(*r);
    const auto jpg = encode_jpeg(*r, 75);
    CHECK(chosen.bytes.size() == std::min(png.size(), jpg.size()));
  }
}

TEST_CASE("codec policy strings") {
  CHECK(CodecPolicy::parse("png").to_string() == "png");
  CHECK(CodecPolicy::parse("jpeg:40").to_string() == "jpeg:40");
  CHECK(CodecPolicy::parse("auto").to_string() == "auto:75");
  CHECK_THROWS_AS(CodecPolicy::parse("jpeg:0"), Error);
  CHECK_THROWS_AS(CodecPolicy::parse("webp"), Error);
}

TEST_CASE("encode_tile signs the input pixels, not the encoded bytes") {
  std::mt19937_64 rng(10);
  const Raster r = testsupport::noise_raster(256, 256, rng);
  const TileRect rect{{0, 0}, 0, 0, 256, 256};
  const auto png = encode_tile("u", rect, r.rgba, CodecPolicy::png());
  const auto jpg = encode_tile("u", rect, r.rgba, CodecPolicy::jpeg(50));
  CHECK(png.signature == jpg.signature);
  CHECK(png.signature == tile_signature("u", rect, r.rgba));
  CHECK(png.codec == Codec::png);
  CHECK(jpg.codec == Codec::jpeg);
}

TEST_CASE("garbage is not an image") {
  const std::vector<std::uint8_t> junk{1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK_THROWS_AS(probe_image(junk), Error);
  CHECK_THROWS_AS(decode_image(junk), Error);
}
