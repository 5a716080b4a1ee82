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

#include <filesystem>
#include <string>
#include <vector>

#include "protocol/raster.hpp"
#include "text/text_run.hpp"

namespace tilecast::capture {

// Stand-in for a rendered page: the full scrollable area at native
// resolution plus the text runs visible on it.
struct PageDocument {
  std::string url;
  protocol::Raster raster;
  std::vector<text::TextRun> text_runs;

  std::int64_t scrollable_width() const { return raster.width; }
  std::int64_t scrollable_height() const { return raster.height; }
};

// Throws Error(load) naming the offending field.
void validate_page_document(const PageDocument& doc);

// Manifest JSON: {"url": str, "raster": "page.png", "text_runs": "runs.json"?}.
// Relative paths resolve against the manifest's directory.
PageDocument load_page_document(const std::filesystem::path& manifest_path);

// Text-run file: [{"text": str, "x": int, "y": int, "w": int, "h": int}].
std::vector<text::TextRun> parse_text_runs(std::string_view json, const std::string& url);
std::string serialize_text_runs(const std::vector<text::TextRun>& runs);

protocol::Raster read_png_file(const std::filesystem::path& path);
void write_png_file(const std::filesystem::path& path, const protocol::Raster& image);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace tilecast::capture
