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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "text/text_run.hpp"

namespace tilecast::capture {

inline constexpr std::string_view kRedacted = "[REDACTED]";

struct PrivacyPolicy {
  bool email = false;
  bool ssn = false;
  bool phone = false;
  bool street_address = false;

  static PrivacyPolicy none() { return {}; }
  static PrivacyPolicy all() { return {true, true, true, true}; }
  // Comma-separated subset of email,ssn,phone,address; "all" and "none"
  // are accepted too.
  static PrivacyPolicy parse(std::string_view list);
  std::string to_string() const;

  bool any() const { return email || ssn || phone || street_address; }
};

// Replaces each match of an enabled pattern with "[REDACTED]", repeating
// until no enabled pattern matches.
std::string redact(std::string_view text, const PrivacyPolicy& policy);

// Bounding boxes, urls and seqs are preserved.
std::vector<text::TextRun> apply_privacy_filter(std::span<const text::TextRun> runs,
                                                const PrivacyPolicy& policy);

}  // namespace tilecast::capture
