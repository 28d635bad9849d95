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

#include <compare>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace descend {

// Query-parameter keys that identify a session rather than a resource.
// Each pattern is an ECMAScript regex matched case-insensitively against
// the whole key.
class SessionPatterns {
 public:
  SessionPatterns();
  explicit SessionPatterns(std::vector<std::string> patterns);

  static const SessionPatterns& defaults();

  bool matches(std::string_view key) const;
  const std::vector<std::string>& patterns() const { return patterns_; }

 private:
  struct Matcher {
    std::string literal;  // lowercase, used when the pattern has no metacharacters
    std::regex regex;
    bool is_literal = false;
  };
  std::vector<std::string> patterns_;
  std::vector<Matcher> matchers_;
};

// An absolute URI-R together with its canonical form. Identity (equality,
// ordering, hashing) is the canonical text.
class UriR {
 public:
  UriR() = default;

  // Rebuilds a previously canonicalized URI from its stored parts without
  // re-running canonicalization.
  static UriR restore(std::string raw, std::string canonical) {
    UriR u;
    u.raw_ = std::move(raw);
    u.canonical_ = std::move(canonical);
    return u;
  }

  const std::string& raw() const { return raw_; }
  const std::string& canonical() const { return canonical_; }

  friend bool operator==(const UriR& a, const UriR& b) { return a.canonical_ == b.canonical_; }
  friend std::strong_ordering operator<=>(const UriR& a, const UriR& b) {
    return a.canonical_ <=> b.canonical_;
  }

 private:
  friend UriR canonicalize(std::string_view, const SessionPatterns&);
  std::string raw_;
  std::string canonical_;
};

// Drops the fragment, lowercases scheme and host, and removes query
// parameters whose key matches `patterns`. Surviving parameters keep their
// order. Throws UriParseError when `raw` is not an absolute
// scheme://authority URI.
UriR canonicalize(std::string_view raw,
                  const SessionPatterns& patterns = SessionPatterns::defaults());

}  // namespace descend

template <>
struct std::hash<descend::UriR> {
  std::size_t operator()(const descend::UriR& u) const noexcept {
    return std::hash<std::string>{}(u.canonical());
  }
};
