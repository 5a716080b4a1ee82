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
#include <shared_mutex>
#include <unordered_map>

#include "protocol/codec.hpp"

namespace tilecast::relay {

using TilePtr = std::shared_ptr<const protocol::TileRecord>;

// Content-addressed tile payloads shared by every session. Entries are
// reference-counted by the sessions holding them and dropped when the last
// holder releases.
class TileStore {
 public:
  enum class PutResult { stored, duplicate };

  // Idempotent for identical bytes; throws Error(integrity) when the
  // signature is already bound to different bytes. With retain, the caller
  // becomes a holder in the same step.
  PutResult put(const protocol::TileRecord& record, bool retain = false);

  TilePtr get(const protocol::TileSignature& sig) const;
  bool contains(const protocol::TileSignature& sig) const;

  // False when the signature is not stored.
  bool retain(const protocol::TileSignature& sig);
  void release(const protocol::TileSignature& sig);

  std::size_t size() const;

 private:
  struct Entry {
    TilePtr record;
    std::size_t holders = 0;
  };
  mutable std::shared_mutex mutex_;
  std::unordered_map<protocol::TileSignature, Entry> entries_;
};

}  // namespace tilecast::relay
