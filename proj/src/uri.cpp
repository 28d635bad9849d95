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

#include "descend/uri.hpp"

#include <algorithm>
#include <cctype>

#include "descend/errors.hpp"

namespace descend {
namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_plain_literal(std::string_view pattern) {
  return !pattern.empty() && std::all_of(pattern.begin(), pattern.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

bool is_scheme_char(unsigned char c) {
  return std::isalnum(c) || c == '+' || c == '-' || c == '.';
}

[[noreturn]] void fail(std::string_view raw, std::string_view why) {
  throw UriParseError("malformed URI '" + std::string(raw) + "': " + std::string(why));
}

}  // namespace

SessionPatterns::SessionPatterns()
    : SessionPatterns(std::vector<std::string>{"sessionid", "sid", "kdntuid", "s", "a", "it"}) {}

SessionPatterns::SessionPatterns(std::vector<std::string> patterns)
    : patterns_(std::move(patterns)) {
  matchers_.reserve(patterns_.size());
  for (const auto& p : patterns_) {
    Matcher m;
    if (is_plain_literal(p)) {
      m.literal = to_lower(p);
      m.is_literal = true;
    } else {
      m.regex = std::regex(p, std::regex::ECMAScript | std::regex::icase);
    }
    matchers_.push_back(std::move(m));
  }
}

const SessionPatterns& SessionPatterns::defaults() {
  static const SessionPatterns instance;
  return instance;
}

bool SessionPatterns::matches(std::string_view key) const {
  std::string lowered;
  bool lowered_ready = false;
  for (const auto& m : matchers_) {
    if (m.is_literal) {
      if (m.literal.size() != key.size()) continue;
      if (!lowered_ready) {
        lowered = to_lower(key);
        lowered_ready = true;
      }
      if (lowered == m.literal) return true;
    } else if (std::regex_match(key.begin(), key.end(), m.regex)) {
      return true;
    }
  }
  return false;
}

UriR canonicalize(std::string_view raw, const SessionPatterns& patterns) {
  if (raw.empty()) fail(raw, "empty");
  for (unsigned char c : raw) {
    if (c <= 0x20 || c == 0x7f) fail(raw, "contains whitespace or control characters");
  }

  std::size_t colon = raw.find(':');
  if (colon == std::string_view::npos || colon == 0) fail(raw, "missing scheme");
  if (!std::isalpha(static_cast<unsigned char>(raw[0]))) fail(raw, "scheme must start with a letter");
  for (std::size_t i = 1; i < colon; ++i) {
    if (!is_scheme_char(static_cast<unsigned char>(raw[i]))) fail(raw, "invalid scheme character");
  }
  if (raw.substr(colon + 1, 2) != "//") fail(raw, "missing '//' authority");

  const std::size_t auth_begin = colon + 3;
  const std::size_t auth_end = std::min(raw.find_first_of("/?#", auth_begin), raw.size());
  std::string_view authority = raw.substr(auth_begin, auth_end - auth_begin);

  std::string_view userinfo;
  std::string_view hostport = authority;
  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = authority.substr(0, at + 1);
    hostport = authority.substr(at + 1);
  }
  std::string_view host = hostport;
  std::string_view port;
  if (!hostport.empty() && hostport.front() == '[') {
    auto close = hostport.find(']');
    if (close == std::string_view::npos) fail(raw, "unterminated IPv6 literal");
    host = hostport.substr(0, close + 1);
    port = hostport.substr(close + 1);
    if (!port.empty() && port.front() != ':') fail(raw, "junk after IPv6 literal");
  } else if (auto c = hostport.rfind(':'); c != std::string_view::npos) {
    host = hostport.substr(0, c);
    port = hostport.substr(c);
  }
  if (host.empty()) fail(raw, "empty host");
  if (!port.empty()) {
    auto digits = port.substr(1);
    if (!std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      fail(raw, "non-numeric port");
    }
  }

  const std::size_t hash = std::min(raw.find('#', auth_end), raw.size());
  const std::size_t qmark = std::min(raw.find('?', auth_end), hash);
  std::string_view path = raw.substr(auth_end, qmark - auth_end);
  std::string_view query = qmark < hash ? raw.substr(qmark + 1, hash - qmark - 1) : std::string_view{};

  std::string out;
  out.reserve(raw.size());
  out += to_lower(raw.substr(0, colon));
  out += "://";
  out += userinfo;
  out += to_lower(host);
  out += port;
  out += path;

  std::string kept;
  std::size_t pos = 0;
  while (qmark < hash && pos <= query.size()) {
    std::size_t amp = std::min(query.find('&', pos), query.size());
    std::string_view param = query.substr(pos, amp - pos);
    std::string_view key = param.substr(0, std::min(param.find('='), param.size()));
    if (!patterns.matches(key)) {
      if (!kept.empty()) kept += '&';
      kept += param;
    }
    pos = amp + 1;
  }
  if (!kept.empty()) {
    out += '?';
    out += kept;
  }

  UriR uri;
  uri.raw_ = std::string(raw);
  uri.canonical_ = std::move(out);
  return uri;
}

}  // namespace descend
