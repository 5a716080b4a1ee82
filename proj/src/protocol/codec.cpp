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

#include "protocol/codec.hpp"

// clang-format off
#include <cstdio>
#include <csetjmp>
#include <jpeglib.h>
#include <png.h>
// clang-format on

#include <algorithm>
#include <charconv>
#include <cstring>

#include "core/error.hpp"

namespace tilecast::protocol {

const char* codec_name(Codec codec) { return codec == Codec::png ? "png" : "jpeg"; }

const char* codec_mime_type(Codec codec) {
  return codec == Codec::png ? "image/png" : "image/jpeg";
}

const char* codec_extension(Codec codec) { return codec == Codec::png ? "png" : "jpg"; }

CodecPolicy CodecPolicy::parse(std::string_view text) {
  auto quality_of = [&](std::string_view q) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(q.data(), q.data() + q.size(), value);
    if (ec != std::errc{} || ptr != q.data() + q.size() || value < 1 || value > 100) {
      throw Error(ErrorCode::invalid_argument,
                  "jpeg quality must be an integer in [1, 100], got '" + std::string(q) + "'");
    }
    return value;
  };
  if (text == "png") return png();
  if (text == "auto") return automatic();
  if (text.starts_with("auto:")) return automatic(quality_of(text.substr(5)));
  if (text == "jpeg") return jpeg(75);
  if (text.starts_with("jpeg:")) return jpeg(quality_of(text.substr(5)));
  throw Error(ErrorCode::invalid_argument,
              "unknown codec policy '" + std::string(text) + "' (png|jpeg:<q>|auto)");
}

std::string CodecPolicy::to_string() const {
  switch (kind) {
    case Kind::png: return "png";
    case Kind::jpeg: return "jpeg:" + std::to_string(jpeg_quality);
    case Kind::automatic: return "auto:" + std::to_string(jpeg_quality);
  }
  return "png";
}

namespace {

void require_nonempty(const Raster& image) {
  if (image.width < 1 || image.height < 1) {
    throw Error(ErrorCode::invalid_geometry, "cannot encode a zero-sized image");
  }
  if (image.rgba.size() != static_cast<std::size_t>(image.width * image.height) * 4) {
    throw Error(ErrorCode::invalid_pixel_buffer, "raster buffer does not match its dimensions");
  }
}

bool is_opaque(const Raster& image) {
  for (std::size_t i = 3; i < image.rgba.size(); i += 4) {
    if (image.rgba[i] != 255) return false;
  }
  return true;
}

bool looks_like_png(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kMagic, 8) == 0;
}

bool looks_like_jpeg(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff;
}

// libjpeg reports fatal errors through error_exit; unwind with longjmp so the
// library never calls exit().
struct JpegErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void jpeg_silent(j_common_ptr, int) {}

std::vector<std::uint8_t> jpeg_compress(const Raster& image, int quality) {
  jpeg_compress_struct cinfo{};
  JpegErrorManager jerr{};
  unsigned char* out = nullptr;
  unsigned long out_size = 0;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_compress(&cinfo);
    std::free(out);
    throw Error(ErrorCode::codec, std::string("jpeg encode failed: ") + jerr.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &out, &out_size);
  cinfo.image_width = static_cast<JDIMENSION>(image.width);
  cinfo.image_height = static_cast<JDIMENSION>(image.height);
  cinfo.input_components = 4;
  cinfo.in_color_space = JCS_EXT_RGBA;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    auto* line = const_cast<JSAMPLE*>(image.row(cinfo.next_scanline).data());
    jpeg_write_scanlines(&cinfo, &line, 1);
  }
  jpeg_finish_compress(&cinfo);
  std::vector<std::uint8_t> bytes(out, out + out_size);
  jpeg_destroy_compress(&cinfo);
  std::free(out);
  return bytes;
}

// Decodes (or, with header_only, just measures) a JPEG stream.
Raster jpeg_decompress(std::span<const std::uint8_t> bytes, bool header_only) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager jerr{};
  Raster image;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  jerr.pub.emit_message = jpeg_silent;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::codec, std::string("jpeg decode failed: ") + jerr.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  image.width = cinfo.image_width;
  image.height = cinfo.image_height;
  if (!header_only) {
    cinfo.out_color_space = JCS_EXT_RGBA;
    jpeg_start_decompress(&cinfo);
    image.rgba.resize(static_cast<std::size_t>(image.width * image.height) * 4);
    while (cinfo.output_scanline < cinfo.output_height) {
      JSAMPLE* line = &image.rgba[static_cast<std::size_t>(cinfo.output_scanline) * image.stride()];
      jpeg_read_scanlines(&cinfo, &line, 1);
    }
    jpeg_finish_decompress(&cinfo);
  }
  jpeg_destroy_decompress(&cinfo);
  return image;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Raster& image) {
  require_nonempty(image);
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);

  // Opaque images are written as RGB; decoding restores alpha = 255, so the
  // round trip stays exact.
  std::vector<std::uint8_t> rgb;
  const void* pixels = image.rgba.data();
  if (is_opaque(image)) {
    png.format = PNG_FORMAT_RGB;
    rgb.resize(image.rgba.size() / 4 * 3);
    for (std::size_t i = 0, j = 0; i < image.rgba.size(); i += 4, j += 3) {
      rgb[j] = image.rgba[i];
      rgb[j + 1] = image.rgba[i + 1];
      rgb[j + 2] = image.rgba[i + 2];
    }
    pixels = rgb.data();
  } else {
    png.format = PNG_FORMAT_RGBA;
  }

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, pixels, 0, nullptr)) {
    throw Error(ErrorCode::codec, std::string("png encode failed: ") + png.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, pixels, 0, nullptr)) {
    throw Error(ErrorCode::codec, std::string("png encode failed: ") + png.message);
  }
  out.resize(size);
  return out;
}

std::vector<std::uint8_t> encode_jpeg(const Raster& image, int quality) {
  require_nonempty(image);
  if (quality < 1 || quality > 100) {
    throw Error(ErrorCode::invalid_argument, "jpeg quality must be in [1, 100]");
  }
  return jpeg_compress(image, quality);
}

Raster decode_image(std::span<const std::uint8_t> bytes) {
  if (looks_like_png(bytes)) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
      throw Error(ErrorCode::codec, std::string("png decode failed: ") + png.message);
    }
    png.format = PNG_FORMAT_RGBA;
    Raster image;
    image.width = png.width;
    image.height = png.height;
    image.rgba.resize(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, image.rgba.data(), 0, nullptr)) {
      png_image_free(&png);
      throw Error(ErrorCode::codec, std::string("png decode failed: ") + png.message);
    }
    return image;
  }
  if (looks_like_jpeg(bytes)) return jpeg_decompress(bytes, false);
  throw Error(ErrorCode::codec, "payload is neither PNG nor JPEG");
}

ImageInfo probe_image(std::span<const std::uint8_t> bytes) {
  if (looks_like_png(bytes)) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
      throw Error(ErrorCode::codec, std::string("png header unreadable: ") + png.message);
    }
    ImageInfo info{Codec::png, png.width, png.height};
    png_image_free(&png);
    return info;
  }
  if (looks_like_jpeg(bytes)) {
    const Raster header = jpeg_decompress(bytes, true);
    return ImageInfo{Codec::jpeg, header.width, header.height};
  }
  throw Error(ErrorCode::codec, "payload is neither PNG nor JPEG");
}

EncodedImage encode_image(const Raster& image, const CodecPolicy& policy) {
  switch (policy.kind) {
    case CodecPolicy::Kind::png:
      return {Codec::png, encode_png(image)};
    case CodecPolicy::Kind::jpeg:
      return {Codec::jpeg, encode_jpeg(image, policy.jpeg_quality)};
    case CodecPolicy::Kind::automatic: {
      EncodedImage png{Codec::png, encode_png(image)};
      EncodedImage jpg{Codec::jpeg, encode_jpeg(image, policy.jpeg_quality)};
      // Ties go to the lossless codec.
      return jpg.bytes.size() < png.bytes.size() ? std::move(jpg) : std::move(png);
    }
  }
  return {Codec::png, encode_png(image)};
}

TileRecord encode_tile(const TileSignature& signature, const Raster& pixels,
                       const CodecPolicy& policy) {
  require_nonempty(pixels);
  EncodedImage encoded = encode_image(pixels, policy);
  return TileRecord{signature, pixels.width, pixels.height, encoded.codec,
                    std::move(encoded.bytes)};
}

TileRecord encode_tile(std::string_view url, const TileRect& rect,
                       std::span<const std::uint8_t> rgba, const CodecPolicy& policy) {
  if (rect.width < 1 || rect.height < 1) {
    throw Error(ErrorCode::invalid_geometry, "cannot encode a zero-sized tile");
  }
  const TileSignature signature = tile_signature(url, rect, rgba);
  return encode_tile(signature, make_raster(rect.width, rect.height, rgba), policy);
}

}  // namespace tilecast::protocol
