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

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tilecast/tilecast.h"

namespace {

int report_failure(const char* what, tc_status status) {
  std::cerr << "tilecast: " << what << " failed (" << tc_status_name(status)
            << "): " << tc_last_error() << "\n";
  return status == TC_ERR_INVALID_ARGUMENT ? 2 : 1;
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int serve(const std::string& config, const std::string& listen, int port,
          const std::string& storage, bool storage_set, const std::string& viewer_root) {
  // Signals are consumed by sigwait below; block them before any thread starts.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  tc_relay_config cfg;
  tc_relay_config_init(&cfg);
  cfg.config_path = opt(config);
  cfg.listen_address = opt(listen);
  cfg.port = port;
  cfg.storage_root = storage_set ? storage.c_str() : nullptr;
  cfg.viewer_root = opt(viewer_root);

  tc_relay* relay = nullptr;
  if (const auto s = tc_relay_create(&cfg, &relay); s != TC_OK) return report_failure("serve", s);
  if (const auto s = tc_relay_start(relay); s != TC_OK) {
    tc_relay_destroy(relay);
    return report_failure("serve", s);
  }
  std::cout << "relay listening on port " << tc_relay_port(relay) << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  std::cout << "shutting down" << std::endl;
  tc_relay_stop(relay);
  tc_relay_destroy(relay);
  return 0;
}

int write_or_print(char* json, const std::string& path) {
  int rc = 0;
  if (path.empty() || path == "-") {
    std::cout << json << "\n";
  } else {
    std::ofstream out(path, std::ios::binary);
    out << json << "\n";
    if (!out) {
      std::cerr << "tilecast: cannot write " << path << "\n";
      rc = 1;
    }
  }
  tc_string_free(json);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tile-based web session sharing: relay, publisher and bandwidth bench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tc_version()));

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the relay server");
  std::string config_path, listen, storage, viewer_root;
  int port = -1;
  serve_cmd->add_option("--config", config_path, "Relay config JSON file")->check(CLI::ExistingFile);
  serve_cmd->add_option("--listen", listen, "Listen address (default 127.0.0.1)");
  serve_cmd->add_option("--port", port, "Port; 0 picks a free one (default 8080)")
      ->check(CLI::Range(0, 65535));
  auto* storage_opt =
      serve_cmd->add_option("--storage", storage, "Recording directory; empty keeps memory only");
  serve_cmd->add_option("--viewer-root", viewer_root, "Static viewer bundle served at /viewer/")
      ->check(CLI::ExistingDirectory);

  // publish
  auto* publish_cmd = app.add_subcommand("publish", "Publish a scripted session to a relay");
  tc_publish_options pub;
  tc_publish_options_init(&pub);
  std::string server, script, docs, codec = "png", privacy = "all", stats_out;
  bool no_text = false, realtime = false, drain = false;
  publish_cmd->add_option("--server", server, "Relay base URL, e.g. http://127.0.0.1:8080")
      ->required();
  publish_cmd->add_option("--script", script, "Session script (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  publish_cmd->add_option("--docs", docs, "Page document directory")->check(CLI::ExistingDirectory);
  publish_cmd->add_option("--tick-hz", pub.tick_hz, "Capture rate")->check(CLI::PositiveNumber);
  publish_cmd->add_option("--ref-interval-s", pub.reference_interval_s,
                          "Seconds between reference captures; 0 disables")
      ->check(CLI::NonNegativeNumber);
  publish_cmd->add_option("--codec", codec, "png | jpeg:Q | auto | auto:Q");
  publish_cmd->add_option("--privacy", privacy, "all | none | email,ssn,phone,address");
  publish_cmd->add_flag("--no-text", no_text, "Do not publish page text");
  publish_cmd->add_flag("--realtime", realtime, "Pace ticks against the wall clock");
  publish_cmd->add_flag("--drain", drain, "Upload tiles still missing before ending");
  publish_cmd->add_option("--stats", stats_out, "Write session statistics JSON here");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark assets and bandwidth runs");
  bench_cmd->require_subcommand(1);
  auto* gen_cmd = bench_cmd->add_subcommand("gen", "Generate the synthetic benchmark session");
  std::uint64_t seed = 42;
  std::string out_dir;
  gen_cmd->add_option("--seed", seed, "RNG seed")->required();
  gen_cmd->add_option("--out", out_dir, "Output directory")->required();

  auto* run_cmd = bench_cmd->add_subcommand("run", "Measure bytes on the wire");
  tc_bench_options bo;
  tc_bench_options_init(&bo);
  std::string mode = "tiled", bscript, bdocs, bserver, bcodec = "png", report_path;
  int jpeg_q = bo.jpeg_quality;
  run_cmd->add_option("--mode", mode, "tiled | fullframe")
      ->check(CLI::IsMember({"tiled", "fullframe", "fullframe-jpeg"}));
  run_cmd->add_option("--script", bscript, "Session script")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--docs", bdocs, "Page document directory")->check(CLI::ExistingDirectory);
  run_cmd->add_option("--server", bserver, "Relay URL; omitted runs an in-process relay");
  run_cmd->add_option("--viewers", bo.viewers, "Simulated viewers")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--jpeg-q", jpeg_q, "Fullframe JPEG quality")->check(CLI::Range(1, 100));
  run_cmd->add_option("--tick-hz", bo.tick_hz, "Capture rate")->check(CLI::PositiveNumber);
  run_cmd->add_option("--ref-interval-s", bo.reference_interval_s, "Reference capture interval")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--codec", bcodec, "Tile codec for tiled mode");
  run_cmd->add_option("--header-bytes", bo.header_bytes, "Per-request header estimate");
  run_cmd->add_option("--report", report_path, "Report JSON path ('-' for stdout)")->required();

  CLI11_PARSE(app, argc, argv);

  if (*serve_cmd) {
    return serve(config_path, listen, port, storage, storage_opt->count() > 0, viewer_root);
  }
  if (*publish_cmd) {
    pub.server_url = server.c_str();
    pub.script_path = script.c_str();
    pub.docs_dir = opt(docs);
    pub.codec = codec.c_str();
    pub.privacy = privacy.c_str();
    pub.publish_text = no_text ? 0 : 1;
    pub.realtime = realtime ? 1 : 0;
    pub.drain_missing_on_end = drain ? 1 : 0;
    char* json = nullptr;
    if (const auto s = tc_publish(&pub, &json); s != TC_OK) return report_failure("publish", s);
    return write_or_print(json, stats_out);
  }
  if (*gen_cmd) {
    if (const auto s = tc_bench_generate(seed, out_dir.c_str()); s != TC_OK) {
      return report_failure("bench gen", s);
    }
    std::cout << "wrote " << out_dir << "/script.jsonl and " << out_dir << "/docs/\n";
    return 0;
  }
  if (*run_cmd) {
    bo.mode = mode.c_str();
    bo.script_path = bscript.c_str();
    bo.docs_dir = opt(bdocs);
    bo.server_url = opt(bserver);
    bo.codec = bcodec.c_str();
    bo.jpeg_quality = jpeg_q;
    char* json = nullptr;
    if (const auto s = tc_bench_run(&bo, &json); s != TC_OK) return report_failure("bench run", s);
    return write_or_print(json, report_path);
  }
  return 0;
}
