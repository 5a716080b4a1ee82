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
#include <string>

namespace tilecast::text {

struct BBox {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t w = 0;
  std::int64_t h = 0;

  friend bool operator==(const BBox&, const BBox&) = default;
};

// A captured string with its on-page bounding box (document coordinates).
struct TextRun {
  std::string text;
  BBox bbox;
  std::string url;
  std::uint64_t seq = 0;

  friend bool operator==(const TextRun&, const TextRun&) = default;
};

}  // namespace tilecast::text
