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

#include "relay/tile_store.hpp"

#include <mutex>

#include "core/error.hpp"

namespace tilecast::relay {

TileStore::PutResult TileStore::put(const protocol::TileRecord& record, bool retain) {
  std::unique_lock lock(mutex_);
  auto it = entries_.find(record.signature);
  PutResult result = PutResult::duplicate;
  if (it == entries_.end()) {
    it = entries_
             .emplace(record.signature,
                      Entry{std::make_shared<const protocol::TileRecord>(record), 0})
             .first;
    result = PutResult::stored;
  } else if (it->second.record->bytes != record.bytes) {
    throw Error(ErrorCode::integrity,
                "tile " + record.signature.hex() + " already stored with different bytes");
  }
  if (retain) ++it->second.holders;
  return result;
}

TilePtr TileStore::get(const protocol::TileSignature& sig) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(sig);
  return it == entries_.end() ? nullptr : it->second.record;
}

bool TileStore::contains(const protocol::TileSignature& sig) const {
  std::shared_lock lock(mutex_);
  return entries_.contains(sig);
}

bool TileStore::retain(const protocol::TileSignature& sig) {
  std::unique_lock lock(mutex_);
  const auto it = entries_.find(sig);
  if (it == entries_.end()) return false;
  ++it->second.holders;
  return true;
}

void TileStore::release(const protocol::TileSignature& sig) {
  std::unique_lock lock(mutex_);
  const auto it = entries_.find(sig);
  if (it == entries_.end()) return;
  if (it->second.holders > 0) --it->second.holders;
  if (it->second.holders == 0) entries_.erase(it);
}

std::size_t TileStore::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace tilecast::relay
