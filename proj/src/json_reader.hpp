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


// Strict JSON object reader shared by the file parsers. Internal header.

#ifndef ACCELSIM_SRC_JSON_READER_HPP_
#define ACCELSIM_SRC_JSON_READER_HPP_

#include <json.hpp>
#include <optional>
#include <set>
#include <string>

#include "accelsim/error.hpp"

namespace accelsim::detail {

using json = nlohmann::ordered_json;

class Reader {
 public:
  Reader(const json &obj, std::string context) : obj_(obj), context_(std::move(context)) {
    if (!obj_.is_object()) bad("expected an object");
  }

  [[noreturn]] void bad(const std::string &msg) const { fail(ErrorKind::kParse, context_ + ": " + msg); }

  const json *find(const char *key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json &need(const char *key) {
    const json *v = find(key);
    if (!v) bad(std::string("missing field '") + key + "'");
    return *v;
  }

  std::size_t count(const char *key, std::optional<std::size_t> fallback = std::nullopt) {
    const json *v = find(key);
    if (!v) {
      if (fallback) return *fallback;
      bad(std::string("missing field '") + key + "'");
    }
    if (!v->is_number_unsigned()) bad(std::string("field '") + key + "' must be a nonnegative integer");
    return v->get<std::size_t>();
  }

  int integer(const char *key, std::optional<int> fallback = std::nullopt) {
    const json *v = find(key);
    if (!v) {
      if (fallback) return *fallback;
      bad(std::string("missing field '") + key + "'");
    }
    if (!v->is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return v->get<int>();
  }

  double number(const char *key) {
    const json &v = need(key);
    if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
    return v.get<double>();
  }

  bool flag(const char *key, bool fallback) {
    const json *v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) bad(std::string("field '") + key + "' must be true or false");
    return v->get<bool>();
  }

  std::string text(const char *key, std::optional<std::string> fallback = std::nullopt) {
    const json *v = find(key);
    if (!v) {
      if (fallback) return *fallback;
      bad(std::string("missing field '") + key + "'");
    }
    if (!v->is_string()) bad(std::string("field '") + key + "' must be a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (const auto &[key, value] : obj_.items()) {
      if (!seen_.contains(key)) bad("unknown field '" + key + "'");
    }
  }

  const std::string &context() const { return context_; }

 private:
  const json &obj_;
  std::string context_;
  std::set<std::string> seen_;
};

}  // namespace accelsim::detail

#endif  // ACCELSIM_SRC_JSON_READER_HPP_
