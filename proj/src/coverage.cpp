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

#include "descend/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "descend/errors.hpp"

namespace descend {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

void MockArchive::set(const std::string& canonical, std::size_t memento_count) {
  std::lock_guard lock(*mu_);
  holdings_[canonical] = memento_count;
  failing_.erase(canonical);
}

void MockArchive::set_failing(const std::string& canonical) {
  std::lock_guard lock(*mu_);
  failing_[canonical] = true;
}

MockArchive MockArchive::from_holdings(std::string_view text) {
  MockArchive archive;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos && (hash == 0 || std::isspace(static_cast<unsigned char>(line[hash - 1])))) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string uri, count, extra;
    if (!(fields >> uri)) continue;
    if (!(fields >> count) || (fields >> extra)) {
      throw FormatError("holdings line " + std::to_string(line_no) + ": expected '<uri> <count>'");
    }
    if (count == "error") {
      archive.failing_[uri] = true;
      continue;
    }
    if (!std::all_of(count.begin(), count.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw FormatError("holdings line " + std::to_string(line_no) + ": bad memento count '" + count + "'");
    }
    archive.holdings_[uri] = std::stoull(count);
  }
  return archive;
}

MockArchive MockArchive::from_holdings_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read holdings file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_holdings(buf.str());
}

std::string MockArchive::to_holdings() const {
  std::lock_guard lock(*mu_);
  std::map<std::string, std::string> lines;
  for (const auto& [uri, n] : holdings_) lines[uri] = std::to_string(n);
  for (const auto& [uri, f] : failing_) lines[uri] = "error";
  std::string out;
  for (const auto& [uri, v] : lines) out += uri + " " + v + "\n";
  return out;
}

LookupResult MockArchive::lookup(const UriR& uri) {
  std::lock_guard lock(*mu_);
  ++lookups_;
  if (failing_.count(uri.canonical())) return LookupResult{false, 0, "mock lookup failure"};
  auto it = holdings_.find(uri.canonical());
  return LookupResult{true, it == holdings_.end() ? 0 : it->second, {}};
}

std::size_t MockArchive::lookups() const {
  std::lock_guard lock(*mu_);
  return lookups_;
}

HttpTimeMapBackend::HttpTimeMapBackend(HttpBackendOptions options) : options_(std::move(options)) {
  if (options_.endpoint.empty()) throw DomainError("TimeMap endpoint is empty");
  if (options_.attempts < 1 || options_.per_host_concurrency == 0) {
    throw DomainError("TimeMap backend needs at least one attempt and one connection per host");
  }
}

std::string HttpTimeMapBackend::timemap_url(const UriR& uri) const {
  std::string url = options_.endpoint;
  if (auto p = url.find("{uri}"); p != std::string::npos) return url.replace(p, 5, uri.canonical());
  return url + uri.canonical();
}

HttpTimeMapBackend::HostSlot& HttpTimeMapBackend::slot_for(const std::string& host) {
  std::lock_guard lock(slots_mu_);
  auto& slot = slots_[host];
  if (!slot) slot = std::make_unique<HostSlot>();
  return *slot;
}

LookupResult HttpTimeMapBackend::fetch_once(const std::string& url, const UriR& uri) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return LookupResult{false, 0, "bad TimeMap URL " + url};
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  HostSlot& slot = slot_for(origin);
  {
    std::unique_lock lock(slot.mu);
    slot.cv.wait(lock, [&] { return slot.active < options_.per_host_concurrency; });
    ++slot.active;
    const auto earliest = slot.last_start + options_.politeness_delay;
    const auto now = std::chrono::steady_clock::now();
    slot.last_start = std::max(now, earliest);
    if (earliest > now) {
      lock.unlock();
      std::this_thread::sleep_until(earliest);
    }
  }
  LookupResult result;
  {
    httplib::Client client(origin);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_follow_location(true);
    auto res = client.Get(path);
    if (!res) {
      result = LookupResult{false, 0, "request failed: " + httplib::to_string(res.error())};
    } else if (res->status == 404) {
      result = LookupResult{true, 0, {}};
    } else if (res->status != 200) {
      result = LookupResult{false, 0, "HTTP " + std::to_string(res->status)};
    } else {
      try {
        result = LookupResult{true, parse_timemap(res->body, uri).timemap.mementos.size(), {}};
      } catch (const TimeMapParseError& e) {
        result = LookupResult{false, 0, e.what()};
      }
    }
  }
  {
    std::lock_guard lock(slot.mu);
    --slot.active;
  }
  slot.cv.notify_one();
  return result;
}

LookupResult HttpTimeMapBackend::lookup(const UriR& uri) {
  const std::string url = timemap_url(uri);
  auto backoff = options_.initial_backoff;
  LookupResult last;
  for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
    last = fetch_once(url, uri);
    if (last.ok) return last;
    if (attempt < options_.attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  return last;
}

CoverageReport coverage(const std::map<int, ResourceSet>& frontier, ArchiveBackend& backend,
                        const CoverageOptions& options) {
  std::vector<const ResourceRef*> distinct;
  {
    std::map<std::string, const ResourceRef*, std::less<>> by_key;
    for (const auto& [level, set] : frontier) {
      for (const auto& [key, ref] : set) by_key.emplace(key, &ref);
    }
    for (const auto& [key, ref] : by_key) distinct.push_back(ref);
  }

  std::vector<LookupResult> results(distinct.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < distinct.size(); i = next++) {
      try {
        results[i] = backend.lookup(distinct[i]->uri);
      } catch (const std::exception& e) {
        results[i] = LookupResult{false, 0, e.what()};
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(1, distinct.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  std::map<std::string, const LookupResult*, std::less<>> by_uri;
  for (std::size_t i = 0; i < distinct.size(); ++i) by_uri.emplace(distinct[i]->key(), &results[i]);

  CoverageReport report;
  report.lookups = distinct.size();
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const auto& r = results[i];
    if (!r.ok) {
      ++report.errors;
      report.failed_uris.push_back(distinct[i]->key());
    } else if (r.memento_count == 0) {
      ++report.unarchived_by_mime[distinct[i]->mime];
      report.unarchived_sizes_by_mime[distinct[i]->mime].push_back(distinct[i]->size_bytes);
    }
  }
  for (auto& [mime, sizes] : report.unarchived_sizes_by_mime) std::sort(sizes.begin(), sizes.end());

  for (const auto& [level, set] : frontier) {
    LevelCoverage lc;
    lc.level = level;
    lc.total = set.size();
    for (const auto& [key, ref] : set) {
      const auto& r = *by_uri.find(key)->second;
      if (!r.ok) {
        ++lc.failed;
      } else if (r.memento_count == 0) {
        ++lc.unarchived;
      } else {
        ++lc.archived;
      }
    }
    const std::size_t evaluated = lc.total - lc.failed;
    lc.fraction_unarchived = evaluated ? static_cast<double>(lc.unarchived) / static_cast<double>(evaluated) : 0.0;
    report.levels.push_back(lc);
  }
  return report;
}

MockArchive tune_mock_archive(const std::map<int, ResourceSet>& frontier,
                              const std::map<int, double>& unarchived_fraction) {
  MockArchive archive;
  std::map<std::string, bool, std::less<>> assigned;
  for (const auto& [level, set] : frontier) {
    std::vector<std::string> keys;
    for (const auto& [key, ref] : set) {
      if (!assigned.count(key)) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
      const auto ha = fnv1a(a), hb = fnv1a(b);
      return ha != hb ? ha < hb : a < b;
    });
    auto f = unarchived_fraction.find(level);
    const double fraction = f == unarchived_fraction.end() ? 0.0 : std::clamp(f->second, 0.0, 1.0);
    const auto missing = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(keys.size())));
    for (std::size_t i = 0; i < keys.size(); ++i) {
      assigned.emplace(keys[i], true);
      if (i >= missing) archive.set(keys[i], 1 + fnv1a(keys[i]) % 40);
    }
  }
  return archive;
}

nlohmann::json coverage_to_json(const CoverageReport& report) {
  using nlohmann::json;
  json levels = json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"level", l.level},
                      {"total", l.total},
                      {"archived", l.archived},
                      {"unarchived", l.unarchived},
                      {"failed", l.failed},
                      {"fraction_unarchived", l.fraction_unarchived}});
  }
  return json{{"levels", levels},
              {"unarchived_by_mime", report.unarchived_by_mime},
              {"unarchived_sizes_by_mime", report.unarchived_sizes_by_mime},
              {"lookups", report.lookups},
              {"errors", report.errors},
              {"failed_uris", report.failed_uris}};
}

}  // namespace descend
