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

#include "text/text_index.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "text/tokenizer.hpp"

namespace tilecast::text {

std::size_t TextIndex::index_runs(const std::string& session, std::uint64_t seq,
                                  std::int64_t timestamp_ms, std::span<const TextRun> runs) {
  if (runs.empty()) return 0;
  // Tokenize outside the lock.
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(runs.size());
  for (const auto& run : runs) {
    auto t = tokenize(run.text);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    tokens.push_back(std::move(t));
  }

  std::unique_lock lock(mutex_);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    IndexedRun stored{session, timestamp_ms, runs[i]};
    stored.run.seq = seq;
    const std::size_t id = runs_.size();
    runs_.push_back(std::move(stored));
    for (const auto& token : tokens[i]) postings_[token].push_back(id);
  }
  return runs.size();
}

std::vector<SearchHit> TextIndex::search(std::string_view query, std::size_t limit) const {
  std::vector<std::string> terms = tokenize(query);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (terms.empty() || limit == 0) return {};

  std::shared_lock lock(mutex_);
  using GroupKey = std::pair<std::string, std::uint64_t>;
  struct Group {
    std::set<std::size_t> terms_seen;
    std::set<std::size_t> runs;
  };
  std::map<GroupKey, Group> groups;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto it = postings_.find(terms[t]);
    if (it == postings_.end()) return {};
    for (std::size_t id : it->second) {
      const auto& r = runs_[id];
      Group& g = groups[{r.session, r.run.seq}];
      g.terms_seen.insert(t);
      g.runs.insert(id);
    }
  }

  std::vector<SearchHit> hits;
  for (const auto& [key, group] : groups) {
    if (group.terms_seen.size() != terms.size()) continue;
    for (std::size_t id : group.runs) {
      const auto& r = runs_[id];
      hits.push_back(SearchHit{r.session, r.run.seq, r.timestamp_ms, r.run.url, r.run.bbox,
                               r.run.text});
      if (hits.size() == limit) return hits;
    }
  }
  return hits;
}

std::vector<IndexedRun> TextIndex::runs_for_session(const std::string& session) const {
  std::shared_lock lock(mutex_);
  std::vector<IndexedRun> out;
  for (const auto& r : runs_) {
    if (r.session == session) out.push_back(r);
  }
  return out;
}

std::size_t TextIndex::run_count() const {
  std::shared_lock lock(mutex_);
  return runs_.size();
}

}  // namespace tilecast::text
