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

#include "capture/session_script.hpp"

#include <set>

#include "capture/page_document.hpp"
#include "core/error.hpp"
#include "protocol/json_fields.hpp"

namespace tilecast::capture {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

protocol::Rgba parse_color(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (!hex.empty() && hex.front() == '#') hex.remove_prefix(1);
  if (hex.size() != 6 && hex.size() != 8) {
    throw Error(ErrorCode::validation, "fill must be #rrggbb or #rrggbbaa");
  }
  protocol::Rgba c{0, 0, 0, 255};
  for (std::size_t i = 0; i < hex.size() / 2; ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::validation, "fill has a non-hex digit");
    c[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return c;
}

std::string format_color(const protocol::Rgba& c) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s = "#";
  const std::size_t n = c[3] == 255 ? 3 : 4;
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(kDigits[c[i] >> 4]);
    s.push_back(kDigits[c[i] & 0xf]);
  }
  return s;
}

ScriptEvent event_from_json(const nlohmann::json& j) {
  using protocol::detail::field;
  using protocol::detail::field_or;
  if (!j.is_object()) throw Error(ErrorCode::validation, "event must be a JSON object");
  ScriptEvent e;
  e.t_ms = field<std::int64_t>(j, "t_ms");
  const std::string kind = field<std::string>(j, "ev");
  if (kind == "navigate") {
    NavigateEvent nav;
    nav.document_id = field<std::string>(j, "doc");
    if (j.contains("vw")) nav.viewport_width = field<std::int64_t>(j, "vw");
    if (j.contains("vh")) nav.viewport_height = field<std::int64_t>(j, "vh");
    e.action = std::move(nav);
  } else if (kind == "scroll") {
    e.action = ScrollEvent{field<std::int64_t>(j, "x"), field<std::int64_t>(j, "y")};
  } else if (kind == "cursor") {
    e.action = CursorEvent{field<std::int64_t>(j, "x"), field<std::int64_t>(j, "y"),
                           protocol::parse_cursor_shape(
                               field_or<std::string>(j, "shape", "default"))};
  } else if (kind == "mutate") {
    MutateEvent m;
    m.x = field<std::int64_t>(j, "x");
    m.y = field<std::int64_t>(j, "y");
    if (j.contains("patch")) {
      m.patch_file = field<std::string>(j, "patch");
    } else {
      m.width = field<std::int64_t>(j, "w");
      m.height = field<std::int64_t>(j, "h");
      m.fill = parse_color(field<std::string>(j, "fill"));
      if (m.width < 0 || m.height < 0) {
        throw Error(ErrorCode::validation, "mutate w and h must be non-negative");
      }
    }
    e.action = std::move(m);
  } else if (kind == "end") {
    e.action = EndEvent{};
  } else {
    throw Error(ErrorCode::validation, "unknown event kind '" + kind + "'");
  }
  return e;
}

}  // namespace

std::int64_t SessionScript::duration_ms() const {
  return events.empty() ? 0 : events.back().t_ms;
}

std::vector<std::string> SessionScript::document_ids() const {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& e : events) {
    if (const auto* nav = std::get_if<NavigateEvent>(&e.action)) {
      if (seen.insert(nav->document_id).second) ids.push_back(nav->document_id);
    }
  }
  return ids;
}

void validate_script(const SessionScript& script) {
  if (script.events.empty()) throw Error(ErrorCode::validation, "script has no events");
  const auto& first = script.events.front();
  if (first.t_ms != 0 || !std::holds_alternative<NavigateEvent>(first.action)) {
    throw Error(ErrorCode::validation, "first event must be navigate at t_ms=0");
  }
  if (!std::holds_alternative<EndEvent>(script.events.back().action)) {
    throw Error(ErrorCode::validation, "last event must be end");
  }
  for (std::size_t i = 0; i < script.events.size(); ++i) {
    const auto& e = script.events[i];
    if (e.t_ms < 0) throw Error(ErrorCode::validation, "event " + std::to_string(i + 1) + ": negative t_ms");
    if (i > 0 && e.t_ms < script.events[i - 1].t_ms) {
      throw Error(ErrorCode::validation,
                  "event " + std::to_string(i + 1) + ": t_ms decreases");
    }
    if (i + 1 < script.events.size() && std::holds_alternative<EndEvent>(e.action)) {
      throw Error(ErrorCode::validation, "event " + std::to_string(i + 1) + ": end before last event");
    }
    if (const auto* nav = std::get_if<NavigateEvent>(&e.action)) {
      if (nav->document_id.empty()) {
        throw Error(ErrorCode::validation, "event " + std::to_string(i + 1) + ": empty doc id");
      }
      if ((nav->viewport_width && *nav->viewport_width < 1) ||
          (nav->viewport_height && *nav->viewport_height < 1)) {
        throw Error(ErrorCode::validation,
                    "event " + std::to_string(i + 1) + ": viewport must be at least 1x1");
      }
    }
  }
}

SessionScript parse_session_script(std::string_view jsonl) {
  SessionScript script;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (offset <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', offset);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(offset, end - offset);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      try {
        script.events.push_back(event_from_json(protocol::detail::parse_json(line)));
      } catch (const Error& e) {
        throw Error(e.code(), "script line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    offset = end + 1;
  }
  validate_script(script);
  return script;
}

SessionScript load_session_script(const std::filesystem::path& path) {
  return parse_session_script(read_file(path));
}

std::string serialize_session_script(const SessionScript& script) {
  std::string out;
  for (const auto& e : script.events) {
    nlohmann::ordered_json j;
    j["t_ms"] = e.t_ms;
    std::visit(overloaded{
                   [&](const NavigateEvent& n) {
                     j["ev"] = "navigate";
                     j["doc"] = n.document_id;
                     if (n.viewport_width) j["vw"] = *n.viewport_width;
                     if (n.viewport_height) j["vh"] = *n.viewport_height;
                   },
                   [&](const ScrollEvent& s) {
                     j["ev"] = "scroll";
                     j["x"] = s.x;
                     j["y"] = s.y;
                   },
                   [&](const CursorEvent& c) {
                     j["ev"] = "cursor";
                     j["x"] = c.x;
                     j["y"] = c.y;
                     j["shape"] = protocol::cursor_shape_name(c.shape);
                   },
                   [&](const MutateEvent& m) {
                     j["ev"] = "mutate";
                     j["x"] = m.x;
                     j["y"] = m.y;
                     if (!m.patch_file.empty()) {
                       j["patch"] = m.patch_file;
                     } else {
                       j["w"] = m.width;
                       j["h"] = m.height;
                       j["fill"] = format_color(m.fill);
                     }
                   },
                   [&](const EndEvent&) { j["ev"] = "end"; },
               },
               e.action);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace tilecast::capture
