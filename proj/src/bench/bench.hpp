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
#include <string>
#include <vector>

#include "capture/publisher.hpp"
#include "capture/session_script.hpp"

namespace tilecast::bench {

enum class BenchMode { tiled, fullframe_jpeg };

const char* bench_mode_name(BenchMode mode);
// "tiled" or "fullframe" (also "fullframe-jpeg").
BenchMode parse_bench_mode(std::string_view text);

struct BenchOptions {
  // Flat per-request allowance for HTTP request/status lines and headers.
  std::uint64_t header_bytes = 200;
  // Simulated viewers that replay the finished session to account bytes_down.
  int viewers = 1;
  // Fullframe baseline quality.
  int jpeg_quality = 75;
  // Tiled mode publisher settings (tick_hz is shared by both modes).
  capture::PublisherConfig publisher;
};

struct BandwidthReport {
  BenchMode mode = BenchMode::tiled;
  double tick_hz = 4.0;
  double duration_s = 0;
  std::uint64_t header_bytes = 200;
  std::uint64_t requests = 0;
  std::uint64_t body_bytes = 0;
  // body_bytes + requests × header_bytes.
  std::uint64_t bytes_up = 0;
  // One entry per simulated viewer.
  std::vector<std::uint64_t> bytes_down;
  double avg_kbps = 0;
  std::uint64_t tiles_sent = 0;
  std::uint64_t ticks = 0;
  // Codec description: "png", "auto:75", "jpeg:75", ...
  std::string codec;
  double reference_interval_s = 0;
};

// 8 × bytes_up / duration_s / 1000.
double average_kbps(std::uint64_t bytes_up, double duration_s);

// Report JSON, including the comparison figures as non-normative context.
std::string report_to_json(const BandwidthReport& report);

// Publishes the script to a relay and accounts bytes. An empty relay_url
// runs an in-process relay on a loopback port for the duration of the call.
BandwidthReport measure_tiled(const capture::SessionScript& script,
                              const std::filesystem::path& docs_dir,
                              const std::string& relay_url, const BenchOptions& options);

// Naive baseline: each tick re-encodes the whole viewport as one JPEG and
// sends it as one request. No relay involved.
BandwidthReport measure_fullframe(const capture::SessionScript& script,
                                  const std::filesystem::path& docs_dir,
                                  const BenchOptions& options);

}  // namespace tilecast::bench
