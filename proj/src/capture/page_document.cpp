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

#include "capture/page_document.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "core/error.hpp"
#include "protocol/codec.hpp"
#include "protocol/json_fields.hpp"

namespace tilecast::capture {

namespace fs = std::filesystem;
using protocol::Raster;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

Raster read_png_file(const fs::path& path) {
  const std::string bytes = read_file(path);
  const auto* data = reinterpret_cast<const std::uint8_t*>(bytes.data());
  return protocol::decode_image(std::span<const std::uint8_t>(data, bytes.size()));
}

void write_png_file(const fs::path& path, const Raster& image) {
  const auto bytes = protocol::encode_png(image);
  write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void validate_page_document(const PageDocument& doc) {
  if (doc.url.empty()) throw Error(ErrorCode::load, "url: must be non-empty");
  if (doc.raster.width < 1 || doc.raster.height < 1) {
    throw Error(ErrorCode::load, "raster: must be at least 1x1");
  }
  for (std::size_t i = 0; i < doc.text_runs.size(); ++i) {
    const auto& b = doc.text_runs[i].bbox;
    const std::string where = "text_runs[" + std::to_string(i) + "]";
    if (b.w <= 0 || b.h <= 0) throw Error(ErrorCode::load, where + ": w and h must be positive");
    if (b.x < 0 || b.y < 0 || b.x + b.w > doc.raster.width || b.y + b.h > doc.raster.height) {
      throw Error(ErrorCode::load, where + ": bounding box exceeds the " +
                                       std::to_string(doc.raster.width) + "x" +
                                       std::to_string(doc.raster.height) + " raster");
    }
  }
}

std::vector<text::TextRun> parse_text_runs(std::string_view json, const std::string& url) {
  using protocol::detail::field;
  const auto j = protocol::detail::parse_json(json);
  if (!j.is_array()) throw Error(ErrorCode::validation, "text runs must be a JSON array");
  std::vector<text::TextRun> runs;
  runs.reserve(j.size());
  for (const auto& e : j) {
    text::TextRun run;
    run.text = field<std::string>(e, "text");
    run.bbox = {field<std::int64_t>(e, "x"), field<std::int64_t>(e, "y"),
                field<std::int64_t>(e, "w"), field<std::int64_t>(e, "h")};
    run.url = url;
    runs.push_back(std::move(run));
  }
  return runs;
}

std::string serialize_text_runs(const std::vector<text::TextRun>& runs) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& r : runs) {
    j.push_back({{"text", r.text}, {"x", r.bbox.x}, {"y", r.bbox.y}, {"w", r.bbox.w},
                 {"h", r.bbox.h}});
  }
  return j.dump();
}

PageDocument load_page_document(const fs::path& manifest_path) {
  using protocol::detail::field;
  std::string text;
  try {
    text = read_file(manifest_path);
  } catch (const Error&) {
    throw Error(ErrorCode::load, "manifest: cannot read " + manifest_path.string());
  }
  nlohmann::json j;
  try {
    j = protocol::detail::parse_json(text);
  } catch (const ParseError& e) {
    throw Error(ErrorCode::load, std::string("manifest: ") + e.what());
  }

  PageDocument doc;
  std::string raster_name;
  try {
    doc.url = field<std::string>(j, "url");
    raster_name = field<std::string>(j, "raster");
  } catch (const Error& e) {
    throw Error(ErrorCode::load, e.what());
  }
  const fs::path base = manifest_path.parent_path();
  const fs::path raster_path = base / raster_name;
  if (!fs::exists(raster_path)) {
    throw Error(ErrorCode::load, "raster: missing file " + raster_path.string());
  }
  try {
    doc.raster = read_png_file(raster_path);
  } catch (const Error& e) {
    throw Error(ErrorCode::load, std::string("raster: ") + e.what());
  }

  // Optional explicit dimensions must agree with the image.
  if (j.contains("width") || j.contains("height")) {
    const auto w = protocol::detail::field_or<std::int64_t>(j, "width", doc.raster.width);
    const auto h = protocol::detail::field_or<std::int64_t>(j, "height", doc.raster.height);
    if (w != doc.raster.width || h != doc.raster.height) {
      throw Error(ErrorCode::load, "raster: declared " + std::to_string(w) + "x" +
                                       std::to_string(h) + " but image is " +
                                       std::to_string(doc.raster.width) + "x" +
                                       std::to_string(doc.raster.height));
    }
  }

  if (j.contains("text_runs") && !j["text_runs"].is_null()) {
    std::string runs_name;
    try {
      runs_name = field<std::string>(j, "text_runs");
    } catch (const Error& e) {
      throw Error(ErrorCode::load, e.what());
    }
    const fs::path runs_path = base / runs_name;
    if (!fs::exists(runs_path)) {
      throw Error(ErrorCode::load, "text_runs: missing file " + runs_path.string());
    }
    try {
      doc.text_runs = parse_text_runs(read_file(runs_path), doc.url);
    } catch (const Error& e) {
      throw Error(ErrorCode::load, std::string("text_runs: ") + e.what());
    }
  }
  validate_page_document(doc);
  return doc;
}

}  // namespace tilecast::capture
