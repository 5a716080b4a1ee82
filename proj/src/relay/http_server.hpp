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

#include <memory>
#include <string>

#include "relay/session_registry.hpp"

namespace tilecast::relay {

// HTTP front end for a Relay. Error responses carry
// {"error": <code name>, "message": ..., "expected"?: <seq>}.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<Relay> relay);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  // Serves on a background thread after bind().
  void start();
  // Serves on the calling thread until stop().
  void run();
  void stop();

  int port() const;
  Relay& relay() { return *relay_; }

 private:
  struct Impl;
  std::shared_ptr<Relay> relay_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tilecast::relay
