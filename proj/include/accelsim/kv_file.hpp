/**
 * Copyright 2026 The accelsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ACCELSIM_KV_FILE_HPP_
#define ACCELSIM_KV_FILE_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace accelsim {

/// Ordered `key = value` pairs. '#' starts a comment; blank lines are
/// skipped. Duplicate keys are a parse error.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(const std::string &text, const std::string &origin);
KeyValues load_key_values(const std::filesystem::path &path);

std::string read_text_file(const std::filesystem::path &path);

/// Strict numeric conversion; the whole token must be consumed.
double parse_number(const std::string &token, const std::string &context);

}  // namespace accelsim

#endif  // ACCELSIM_KV_FILE_HPP_
