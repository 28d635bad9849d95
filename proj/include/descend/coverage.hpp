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
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "descend/state_model.hpp"
#include "descend/timemap.hpp"

namespace descend {

struct LookupResult {
  bool ok = true;
  std::size_t memento_count = 0;
  std::string error;
};

// Answers "how many mementos does this URI-R have". Implementations must
// tolerate concurrent lookup() calls.
class ArchiveBackend {
 public:
  virtual ~ArchiveBackend() = default;
  virtual LookupResult lookup(const UriR& uri) = 0;
};

// In-process holdings table. The holdings file has one
// "<canonical-uri> <memento-count>" pair per line; '#' starts a comment and
// a count of "error" makes lookups of that URI fail.
class MockArchive : public ArchiveBackend {
 public:
  MockArchive() = default;

  void set(const std::string& canonical, std::size_t memento_count);
  void set_failing(const std::string& canonical);

  static MockArchive from_holdings(std::string_view text);
  static MockArchive from_holdings_file(const std::filesystem::path& path);
  std::string to_holdings() const;

  LookupResult lookup(const UriR& uri) override;
  std::size_t lookups() const;

 private:
  std::map<std::string, std::size_t> holdings_;
  std::map<std::string, bool> failing_;
  std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  std::size_t lookups_ = 0;
};

struct HttpBackendOptions {
  // TimeMap URL template. "{uri}" is replaced by the URI-R; without it the
  // URI-R is appended.
  std::string endpoint;
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::milliseconds politeness_delay{100};
  std::size_t per_host_concurrency = 2;
  std::chrono::seconds timeout{30};
};

// Fetches link-format TimeMaps over HTTP(S). 404 means no mementos; other
// failures are retried with exponential backoff.
class HttpTimeMapBackend : public ArchiveBackend {
 public:
  explicit HttpTimeMapBackend(HttpBackendOptions options);
  LookupResult lookup(const UriR& uri) override;

  std::string timemap_url(const UriR& uri) const;

 private:
  struct HostSlot {
    std::mutex mu;
    std::condition_variable cv;
    std::size_t active = 0;
    std::chrono::steady_clock::time_point last_start{};
  };
  HostSlot& slot_for(const std::string& host);
  LookupResult fetch_once(const std::string& url, const UriR& uri);

  HttpBackendOptions options_;
  std::mutex slots_mu_;
  std::map<std::string, std::unique_ptr<HostSlot>> slots_;
};

struct LevelCoverage {
  int level = 0;
  std::size_t total = 0;
  std::size_t archived = 0;
  std::size_t unarchived = 0;
  std::size_t failed = 0;
  // unarchived / (total - failed); 0 when nothing was evaluated.
  double fraction_unarchived = 0;
};

struct CoverageReport {
  std::vector<LevelCoverage> levels;
  std::map<std::string, std::size_t> unarchived_by_mime;
  std::map<std::string, std::vector<std::uint64_t>> unarchived_sizes_by_mime;  // ascending
  std::size_t lookups = 0;
  std::size_t errors = 0;
  std::vector<std::string> failed_uris;
};

struct CoverageOptions {
  std::size_t workers = 4;
};

// Looks every distinct canonical URI of the frontier up once and reports
// per-level unarchived fractions. Failed lookups leave the denominator.
CoverageReport coverage(const std::map<int, ResourceSet>& frontier, ArchiveBackend& backend,
                        const CoverageOptions& options = {});

// Holdings in which exactly round(fraction * |level|) resources of each
// level have no mementos. Choice within a level is a fixed hash order.
MockArchive tune_mock_archive(const std::map<int, ResourceSet>& frontier,
                              const std::map<int, double>& unarchived_fraction);

nlohmann::json coverage_to_json(const CoverageReport& report);

}  // namespace descend
