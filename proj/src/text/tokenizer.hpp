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

#include <string>
#include <string_view>
#include <vector>

namespace tilecast::text {

// Splits UTF-8 text on whitespace and punctuation and lowercases each token.
// Letters and digits outside ASCII are kept as word characters; invalid
// UTF-8 bytes act as separators.
std::vector<std::string> tokenize(std::string_view utf8);

}  // namespace tilecast::text
