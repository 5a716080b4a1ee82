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
#include <filesystem>

#include "capture/script_player.hpp"
#include "capture/session_script.hpp"

namespace tilecast::bench {

inline constexpr int kBenchPages = 9;
inline constexpr std::int64_t kBenchPageWidth = 1024;
inline constexpr std::int64_t kBenchPageHeight = 3000;
inline constexpr std::int64_t kBenchDurationMs = 150000;

struct BenchmarkAssets {
  capture::SessionScript script;
  capture::DocumentSet documents;  // keyed "page0".."page8"
};

// Synthetic browsing session: 9 pages of text-like and image-like blocks and
// a 150 s script visiting all of them (plus revisits) with scrolling, cursor
// movement and small in-page changes. Output depends only on the seed.
BenchmarkAssets generate_benchmark_assets(std::uint64_t seed);

// Writes <dir>/script.jsonl and <dir>/docs/<id>.{json,png,runs.json}.
void write_benchmark_assets(const BenchmarkAssets& assets, const std::filesystem::path& dir);

}  // namespace tilecast::bench
