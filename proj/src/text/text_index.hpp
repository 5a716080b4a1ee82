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
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "text/text_run.hpp"

namespace tilecast::text {

struct SearchHit {
  std::string session;
  std::uint64_t seq = 0;
  std::int64_t timestamp_ms = 0;
  std::string url;
  BBox bbox;
  std::string snippet;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

// A run as stored by the index: the run plus where and when it was captured.
struct IndexedRun {
  std::string session;
  std::int64_t timestamp_ms = 0;
  TextRun run;
};

// Exact-token inverted index over captured text runs. Readers run
// concurrently; writers are serialized.
class TextIndex {
 public:
  // Returns the number of runs indexed. Session existence is the caller's
  // concern (the relay checks it before calling).
  std::size_t index_runs(const std::string& session, std::uint64_t seq, std::int64_t timestamp_ms,
                         std::span<const TextRun> runs);

  // Case-insensitive exact-token match. Multi-word queries require every
  // token to occur among the runs of one (session, seq); the hits are the
  // runs of that group containing at least one query token. Ordered by
  // (session, seq) then insertion order; at most `limit` hits.
  std::vector<SearchHit> search(std::string_view query, std::size_t limit) const;

  std::vector<IndexedRun> runs_for_session(const std::string& session) const;

  std::size_t run_count() const;

 private:
  mutable std::shared_mutex mutex_;
  std::vector<IndexedRun> runs_;
  std::unordered_map<std::string, std::vector<std::size_t>> postings_;
};

}  // namespace tilecast::text
