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

// Strict field access for wire JSON. Internal to the core; pulls in
// nlohmann/json.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

#include <json.hpp>

#include "core/error.hpp"

namespace tilecast::protocol {

struct UpdateMessage;

UpdateMessage update_from_json(const nlohmann::json& j);

namespace detail {

inline nlohmann::json parse_json(std::string_view bytes) {
  try {
    return nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "malformed JSON");
  }
}

template <typename T>
T field(const nlohmann::json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw Error(ErrorCode::validation, std::string("missing field '") + name + "'");
  if constexpr (std::is_same_v<T, std::string>) {
    if (!it->is_string()) {
      throw Error(ErrorCode::validation, std::string("field '") + name + "' must be a string");
    }
    return it->template get<std::string>();
  } else if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) {
      throw Error(ErrorCode::validation, std::string("field '") + name + "' must be a boolean");
    }
    return it->template get<bool>();
  } else {
    static_assert(std::is_integral_v<T>);
    const auto bad = [&] {
      return Error(ErrorCode::validation,
                   std::string("field '") + name + "' must be an integer in range");
    };
    if (it->is_number_unsigned()) {
      const auto v = it->template get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) throw bad();
      return static_cast<T>(v);
    }
    if (it->is_number_integer()) {
      const auto v = it->template get<std::int64_t>();
      if constexpr (std::is_unsigned_v<T>) {
        if (v < 0 || static_cast<std::uint64_t>(v) > std::numeric_limits<T>::max()) throw bad();
      } else {
        if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max()) throw bad();
      }
      return static_cast<T>(v);
    }
    throw bad();
  }
}

template <typename T>
T field_or(const nlohmann::json& j, const char* name, T fallback) {
  return j.contains(name) ? field<T>(j, name) : fallback;
}

inline const nlohmann::json& array_field(const nlohmann::json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end() || !it->is_array()) {
    throw Error(ErrorCode::validation, std::string("field '") + name + "' must be an array");
  }
  return *it;
}

}  // namespace detail
}  // namespace tilecast::protocol
