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

// Hand-rolled generators for property tests.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "descend/fixture_gen.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(g_); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(g_) < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 g_;
};

inline std::string mixed_case(Rng& r, const std::string& s) {
  std::string out = s;
  for (auto& c : out) {
    if (r.chance(0.3)) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

inline std::string word(Rng& r, std::size_t max_len = 8) {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789-_.~%";
  std::string w;
  const std::size_t n = 1 + r.below(max_len);
  for (std::size_t i = 0; i < n; ++i) w += alphabet[r.below(alphabet.size())];
  return w;
}

// Default session keys in assorted spellings plus keys that merely look similar.
inline std::string query_key(Rng& r) {
  static const std::vector<std::string> session = {"sessionid", "sid", "kdntuid", "s", "a", "it"};
  static const std::vector<std::string> near = {"sids", "ssid", "session", "as", "its", "p", "q", "page", "id", ""};
  if (r.chance(0.4)) return mixed_case(r, r.pick(session));
  if (r.chance(0.4)) return r.pick(near);
  return word(r, 6);
}

inline std::string fuzz_uri(Rng& r) {
  std::string u = mixed_case(r, r.pick(std::vector<std::string>{"http", "https", "ftp", "ws"})) + "://";
  if (r.chance(0.1)) u += word(r, 5) + (r.chance(0.5) ? ":" + word(r, 5) : "") + "@";
  if (r.chance(0.05)) {
    u += "[2001:db8::" + std::to_string(r.below(999)) + "]";
  } else {
    const std::size_t labels = 1 + r.below(4);
    for (std::size_t i = 0; i < labels; ++i) u += (i ? "." : "") + mixed_case(r, word(r, 10));
  }
  if (r.chance(0.2)) u += ":" + std::to_string(r.below(70000));
  const std::size_t segments = r.below(5);
  for (std::size_t i = 0; i < segments; ++i) u += "/" + mixed_case(r, word(r, 12));
  if (r.chance(0.3)) u += "/";
  if (r.chance(0.6)) {
    u += "?";
    const std::size_t params = r.below(6);
    for (std::size_t i = 0; i < params; ++i) {
      if (i) u += "&";
      if (r.chance(0.05)) continue;  // empty parameter
      u += query_key(r);
      if (r.chance(0.8)) u += "=" + word(r, 10);
    }
  }
  if (r.chance(0.4)) {
    u += "#" + word(r, 8);
    if (r.chance(0.3)) u += "?sid=" + word(r, 4) + "&x=1#more";
  }
  return u;
}

inline descend::RandomFixtureSpec fixture_spec(Rng& r, std::size_t max_states = 500) {
  descend::RandomFixtureSpec spec;
  spec.breadth = r.below(8);
  spec.depth = static_cast<int>(r.below(4));
  spec.overlap = static_cast<double>(r.below(101)) / 100.0;
  spec.resources_per_state = 1 + r.below(8);
  spec.max_states = 1 + r.below(max_states);
  return spec;
}

}  // namespace gen
