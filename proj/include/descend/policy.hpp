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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "descend/path_analysis.hpp"

namespace descend {

// Measured throughput of a plain archival crawler and of a crawler that
// renders pages and executes interactions, in URIs per second.
struct CrawlRates {
  double baseline_rate = 2.065;
  double descendant_rate = 0.170;
  void validate() const;
};

struct LevelEstimate {
  int level = 0;
  double time_s = 0;
  double size = 0;
  double time_ratio = 0;
  double size_ratio = 0;
  // New URIs per added second relative to the previous level (the baseline
  // for the first); empty when time did not increase.
  std::optional<double> marginal;
};

struct CrawlEstimate {
  double baseline_time_s = 0;
  double baseline_size = 0;
  std::vector<LevelEstimate> levels;  // ascending level
  bool modeled_times = false;         // times came from rates, not measurements
};

// Throws DomainError for a non-positive baseline or mismatched level keys.
CrawlEstimate estimate_crawl(const std::map<int, double>& frontier_by_level, double baseline_size,
                             const std::map<int, double>& times_by_level, double baseline_time);

// Forward model: each level's frontier crawled at the descendant rate, the
// baseline at the baseline rate. Marked `modeled_times`.
CrawlEstimate model_crawl(const std::map<int, double>& frontier_by_level, double baseline_size,
                          const CrawlRates& rates);

enum class PolicyKind { kMaxCoverage, kMaxRoi };

std::string policy_name(PolicyKind kind);
PolicyKind policy_from_name(const std::string& name);

struct CrawlPolicy {
  PolicyKind kind = PolicyKind::kMaxCoverage;
  std::set<int> levels_included;
};

// MaxCoverage keeps every level. MaxRoi drops the deepest levels, one at a
// time, while their marginal is strictly below the best marginal of the
// shallower descendant levels (level >= 1).
CrawlPolicy select_policy(PolicyKind kind, const CrawlEstimate& estimate);

// Mean stored size of a resource, by stratum and level. Unlisted levels use
// `level0_bytes` for level 0 and `descendant_bytes` otherwise.
struct MeanResourceSizes {
  double level0_bytes = 2600;
  double descendant_bytes = 2400;
  std::map<std::string, std::map<int, double>> overrides;

  double bytes_for(const std::string& stratum, int level) const;
};

enum class MetadataAccounting { kPerDescendant, kPerSeed };

struct StratumCounts {
  std::string name;
  double seeds = 0;
  double descendants = 0;
  std::map<int, double> resources_by_level;
};

struct LevelStorage {
  double count = 0;
  double mean_bytes = 0;
  double bytes = 0;
};

struct StratumStorage {
  std::string name;
  double seeds = 0;
  double descendants = 0;
  std::map<int, LevelStorage> levels;
  double resource_bytes = 0;
  double metadata_bytes_per_descendant = 0;
  double metadata_bytes_per_seed = 0;
  double metadata_bytes = 0;  // per the estimate's accounting mode
  double total_without_metadata = 0;
  double total_with_metadata = 0;
};

struct CrawlVolume {
  double uris = 0;
  double bytes = 0;
};

struct Extrapolation {
  int months = 1;
  double seeds = 0;
  double scale = 0;  // base.uris / seeds
  std::uint64_t monthly_additional_bytes = 0;
  std::uint64_t monthly_additional_metadata_bytes = 0;
  std::uint64_t monthly_base_bytes = 0;
  std::uint64_t additional_bytes = 0;
  std::uint64_t additional_metadata_bytes = 0;
  std::uint64_t base_bytes = 0;
  std::uint64_t total_bytes = 0;

  std::uint64_t monthly_total_bytes() const { return monthly_base_bytes + monthly_additional_bytes; }
};

struct StorageEstimate {
  double metadata_record_bytes = 16450;
  MetadataAccounting accounting = MetadataAccounting::kPerDescendant;
  std::vector<StratumStorage> strata;
  double seeds = 0;
  double descendants = 0;
  double metadata_bytes = 0;
  double resource_bytes = 0;
  double descendant_resource_bytes = 0;  // levels >= 1
  double total_without_metadata = 0;
  double total_with_metadata = 0;
  std::optional<Extrapolation> extrapolation;

  // Storage attributable to descendants: their resources plus metadata.
  double additional_bytes() const { return descendant_resource_bytes + metadata_bytes; }
};

// Throws DomainError for negative counts or non-positive sizes.
StorageEstimate estimate_storage(const std::vector<StratumCounts>& strata, const MeanResourceSizes& sizes,
                                 double metadata_record_bytes = 16450,
                                 MetadataAccounting accounting = MetadataAccounting::kPerDescendant);
// Uses the deferred and nondeferred strata of `stats`.
StorageEstimate estimate_storage(const CorpusStats& stats, const MeanResourceSizes& sizes,
                                 double metadata_record_bytes = 16450,
                                 MetadataAccounting accounting = MetadataAccounting::kPerDescendant);

std::vector<StratumCounts> storage_counts(const CorpusStats& stats);

// Scales the descendant storage of a `seeds`-seed corpus to a crawl of
// `base.uris` URIs per month, over `months` months. Throws DomainError
// unless seeds > 0 and months >= 1.
StorageEstimate extrapolate(const CrawlVolume& base, const StorageEstimate& per_seed, double seeds,
                            int months);

nlohmann::json crawl_estimate_to_json(const CrawlEstimate& e);
nlohmann::json policy_to_json(const CrawlPolicy& p);
nlohmann::json storage_to_json(const StorageEstimate& s);

}  // namespace descend
