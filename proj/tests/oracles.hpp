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

// Brute-force reference computations used to check the library. They work
// directly on fixture files and plain std containers.
#pragma once

#include <algorithm>
#include <deque>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "descend/fixture.hpp"
#include "descend/uri.hpp"

namespace oracle {

using UriSet = std::set<std::string>;

struct WalkState {
  std::string key;
  int level = 0;
  UriSet cumulative;
  UriSet fresh;
  std::vector<std::string> events;  // tokens
};

struct SeedWalk {
  std::string seed;
  std::vector<WalkState> states;  // breadth-first
  UriSet r0;
  UriSet rp_total;
  std::size_t contributing = 0;
  std::map<int, UriSet> per_level_new;
  std::map<std::string, std::size_t> insertions;
  int depth = 0;
  bool deferred = false;
};

// Visits every state reachable from s0 by following declared events whose
// target state exists, down to `max_depth`.
inline SeedWalk walk(const descend::SiteFixture& f, int max_depth = 1 << 20,
                     const descend::SessionPatterns& patterns = descend::SessionPatterns::defaults()) {
  SeedWalk w;
  w.seed = descend::canonicalize(f.seed.raw(), patterns).canonical();
  auto own = [&](const std::string& key) {
    UriSet s;
    for (const auto& r : f.states.at(key).resources) s.insert(descend::canonicalize(r.uri, patterns).canonical());
    return s;
  };
  std::deque<std::size_t> queue;
  WalkState root;
  root.cumulative = own("");
  for (const auto& e : f.states.at("").events) root.events.push_back(e.token());
  w.states.push_back(root);
  queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (w.states[i].level >= max_depth) continue;
    const WalkState parent = w.states[i];
    for (const auto& token : parent.events) {
      const std::string key = parent.key.empty() ? token : parent.key + "/" + token;
      auto it = f.states.find(key);
      if (it == f.states.end()) continue;
      WalkState child;
      child.key = key;
      child.level = parent.level + 1;
      child.cumulative = parent.cumulative;
      for (const auto& u : own(key)) child.cumulative.insert(u);
      std::set_difference(child.cumulative.begin(), child.cumulative.end(), parent.cumulative.begin(),
                          parent.cumulative.end(), std::inserter(child.fresh, child.fresh.end()));
      for (const auto& e : it->second.events) child.events.push_back(e.token());
      w.states.push_back(child);
      queue.push_back(w.states.size() - 1);
    }
  }
  w.r0 = w.states.front().cumulative;
  for (const auto& s : w.states) {
    w.rp_total.insert(s.cumulative.begin(), s.cumulative.end());
    w.depth = std::max(w.depth, s.level);
    if (s.level == 0) continue;
    w.per_level_new[s.level];
    if (s.fresh.empty()) continue;
    ++w.contributing;
    if (s.level == 1) w.deferred = true;
    w.per_level_new[s.level].insert(s.fresh.begin(), s.fresh.end());
    for (const auto& u : s.fresh) ++w.insertions[u];
  }
  return w;
}

struct Ranked {
  std::string uri;
  std::size_t count;
};

// Full sort of every insertion count: count descending, URI ascending.
inline std::vector<Ranked> ranking(const std::vector<SeedWalk>& walks, std::size_t k) {
  std::map<std::string, std::size_t> total;
  for (const auto& w : walks) {
    for (const auto& [u, n] : w.insertions) total[u] += n;
  }
  std::vector<Ranked> all;
  for (const auto& [u, n] : total) all.push_back({u, n});
  std::sort(all.begin(), all.end(), [](const Ranked& a, const Ranked& b) {
    return a.count != b.count ? a.count > b.count : a.uri < b.uri;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

// Distinct URIs first seen at each level across the corpus, cumulated.
inline std::map<int, std::size_t> cumulative_levels(const std::vector<SeedWalk>& walks) {
  std::map<std::string, int> first_level;
  for (const auto& w : walks) {
    for (const auto& u : w.r0) first_level[u] = 0;
  }
  for (const auto& w : walks) {
    for (const auto& [level, set] : w.per_level_new) {
      for (const auto& u : set) {
        auto [it, inserted] = first_level.emplace(u, level);
        if (!inserted) it->second = std::min(it->second, level);
      }
    }
  }
  std::map<int, std::size_t> per_level;
  for (const auto& w : walks) {
    for (const auto& [level, set] : w.per_level_new) per_level[level];
  }
  per_level[0];
  for (const auto& [u, level] : first_level) ++per_level[level];
  std::map<int, std::size_t> out;
  std::size_t running = 0;
  for (const auto& [level, n] : per_level) out[level] = running += n;
  return out;
}

// Query keys of a URI, in order. Independent of the canonicalizer.
inline std::vector<std::string> query_keys(const std::string& uri) {
  std::vector<std::string> keys;
  const std::string base = uri.substr(0, uri.find('#'));
  auto q = base.find('?');
  if (q == std::string::npos) return keys;
  std::string query = base.substr(q + 1);
  std::size_t pos = 0;
  while (pos <= query.size()) {
    auto amp = query.find('&', pos);
    if (amp == std::string::npos) amp = query.size();
    std::string param = query.substr(pos, amp - pos);
    if (!param.empty()) keys.push_back(param.substr(0, param.find('=')));
    pos = amp + 1;
  }
  return keys;
}

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace oracle
