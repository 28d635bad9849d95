// Copyright 2026 The Descend Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "descend/uri.hpp"

namespace descend {

struct Memento {
  std::string uri;
  std::chrono::sys_seconds datetime;

  friend bool operator==(const Memento&, const Memento&) = default;
};

struct TimeMap {
  UriR original;
  std::vector<Memento> mementos;
};

struct TimeMapWarning {
  std::size_t offset = 0;  // byte offset of the link-value
  std::string message;
};

struct ParsedTimeMap {
  TimeMap timemap;
  std::vector<TimeMapWarning> warnings;
};

// Parses an application/link-format TimeMap body. Links whose rel contains
// the "memento" token become entries; original, timegate, self and other
// rels are ignored. A memento link without a usable datetime (or with a
// non-absolute target) is skipped and reported as a warning. Syntax errors
// throw TimeMapParseError with the byte offset.
ParsedTimeMap parse_timemap(std::string_view body, const UriR& original);

std::string serialize_timemap(const TimeMap& timemap);

// RFC 1123 dates as used by Memento, e.g. "Sun, 06 Nov 1994 08:49:37 GMT".
std::optional<std::chrono::sys_seconds> parse_http_date(std::string_view text);
std::string format_http_date(std::chrono::sys_seconds t);

}  // namespace descend
