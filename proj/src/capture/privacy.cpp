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

#include "capture/privacy.hpp"

#include <regex>

#include "core/error.hpp"

namespace tilecast::capture {

namespace {

struct Patterns {
  std::regex email{R"(\b[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,}\b)"};
  std::regex ssn{R"(\b\d{3}-\d{2}-\d{4}\b)"};
  // An opening parenthesis has no word boundary before it, so the boundary
  // is asserted per alternative.
  std::regex phone{R"((\b1[ .-]?)?(\(\d{3}\)|\b\d{3})[ .-]?\d{3}[ .-]?\d{4}\b)"};
  std::regex street_address{
      R"(\b\d{1,6}\s+\w+(\s\w+){0,3}\s(Ave|Avenue|St|Street|Rd|Road|Blvd|Boulevard|Dr|Drive|Ln|Lane)\.?\b)",
      std::regex::ECMAScript | std::regex::icase};
};

const Patterns& patterns() {
  static const Patterns p;
  return p;
}

std::vector<const std::regex*> enabled(const PrivacyPolicy& policy) {
  const auto& p = patterns();
  std::vector<const std::regex*> out;
  // Addresses first: their house numbers would otherwise be eaten by the
  // digit patterns and leave the street name behind.
  if (policy.street_address) out.push_back(&p.street_address);
  if (policy.email) out.push_back(&p.email);
  if (policy.ssn) out.push_back(&p.ssn);
  if (policy.phone) out.push_back(&p.phone);
  return out;
}

}  // namespace

PrivacyPolicy PrivacyPolicy::parse(std::string_view list) {
  PrivacyPolicy policy;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    const std::string_view item = list.substr(pos, comma - pos);
    if (item == "email") {
      policy.email = true;
    } else if (item == "ssn") {
      policy.ssn = true;
    } else if (item == "phone") {
      policy.phone = true;
    } else if (item == "address" || item == "street_address") {
      policy.street_address = true;
    } else if (item == "all") {
      policy = all();
    } else if (item == "none" || item.empty()) {
    } else {
      throw Error(ErrorCode::invalid_argument, "unknown privacy filter '" + std::string(item) +
                                                   "' (email,ssn,phone,address)");
    }
    pos = comma + 1;
  }
  return policy;
}

std::string PrivacyPolicy::to_string() const {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += ',';
    s += name;
  };
  add(email, "email");
  add(ssn, "ssn");
  add(phone, "phone");
  add(street_address, "address");
  return s.empty() ? "none" : s;
}

std::string redact(std::string_view text, const PrivacyPolicy& policy) {
  std::string out(text);
  const auto active = enabled(policy);
  if (active.empty()) return out;
  // Every match holds an '@' or a digit and the replacement holds neither, so
  // each pass strictly reduces their count.
  for (bool changed = true; changed;) {
    changed = false;
    for (const std::regex* re : active) {
      if (!std::regex_search(out, *re)) continue;
      out = std::regex_replace(out, *re, std::string(kRedacted));
      changed = true;
    }
  }
  return out;
}

std::vector<text::TextRun> apply_privacy_filter(std::span<const text::TextRun> runs,
                                                const PrivacyPolicy& policy) {
  std::vector<text::TextRun> out(runs.begin(), runs.end());
  for (auto& run : out) run.text = redact(run.text, policy);
  return out;
}

}  // namespace tilecast::capture
