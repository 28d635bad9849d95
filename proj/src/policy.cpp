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

#include "descend/policy.hpp"

#include <cmath>

#include "descend/errors.hpp"

namespace descend {

using nlohmann::json;

void CrawlRates::validate() const {
  if (!(baseline_rate > 0) || !(descendant_rate > 0)) throw DomainError("crawl rates must be positive");
}

CrawlEstimate estimate_crawl(const std::map<int, double>& frontier_by_level, double baseline_size,
                             const std::map<int, double>& times_by_level, double baseline_time) {
  if (!(baseline_size > 0) || !(baseline_time > 0)) {
    throw DomainError("baseline size and time must be positive");
  }
  if (frontier_by_level.size() != times_by_level.size()) {
    throw DomainError("frontier sizes and times cover different levels");
  }
  CrawlEstimate est;
  est.baseline_time_s = baseline_time;
  est.baseline_size = baseline_size;
  double prev_time = baseline_time;
  double prev_size = baseline_size;
  for (const auto& [level, size] : frontier_by_level) {
    auto t = times_by_level.find(level);
    if (t == times_by_level.end()) {
      throw DomainError("no time for level " + std::to_string(level));
    }
    if (size < 0 || t->second < 0) throw DomainError("negative size or time");
    LevelEstimate le;
    le.level = level;
    le.time_s = t->second;
    le.size = size;
    le.time_ratio = t->second / baseline_time;
    le.size_ratio = size / baseline_size;
    if (t->second > prev_time) le.marginal = (size - prev_size) / (t->second - prev_time);
    prev_time = t->second;
    prev_size = size;
    est.levels.push_back(le);
  }
  return est;
}

CrawlEstimate model_crawl(const std::map<int, double>& frontier_by_level, double baseline_size,
                          const CrawlRates& rates) {
  rates.validate();
  std::map<int, double> times;
  for (const auto& [level, size] : frontier_by_level) times[level] = size / rates.descendant_rate;
  auto est = estimate_crawl(frontier_by_level, baseline_size, times, baseline_size / rates.baseline_rate);
  est.modeled_times = true;
  return est;
}

std::string policy_name(PolicyKind kind) {
  return kind == PolicyKind::kMaxCoverage ? "max-coverage" : "max-roi";
}

PolicyKind policy_from_name(const std::string& name) {
  if (name == "max-coverage" || name == "MaxCoverage") return PolicyKind::kMaxCoverage;
  if (name == "max-roi" || name == "MaxROI") return PolicyKind::kMaxRoi;
  throw DomainError("unknown crawl policy '" + name + "'");
}

CrawlPolicy select_policy(PolicyKind kind, const CrawlEstimate& estimate) {
  if (estimate.levels.empty()) throw DomainError("estimate has no levels");
  CrawlPolicy policy{kind, {}};
  for (const auto& l : estimate.levels) policy.levels_included.insert(l.level);
  if (kind == PolicyKind::kMaxCoverage) return policy;

  std::vector<const LevelEstimate*> kept;
  for (const auto& l : estimate.levels) kept.push_back(&l);
  while (kept.size() > 1) {
    const LevelEstimate& deepest = *kept.back();
    if (deepest.level < 1 || !deepest.marginal) break;
    std::optional<double> best;
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
      if (kept[i]->level >= 1 && kept[i]->marginal) {
        best = best ? std::max(*best, *kept[i]->marginal) : *kept[i]->marginal;
      }
    }
    // Equal marginals (up to rounding noise) are not a reason to drop a level.
    if (!best || !(*deepest.marginal < *best * (1 - 1e-9))) break;
    policy.levels_included.erase(deepest.level);
    kept.pop_back();
  }
  return policy;
}

double MeanResourceSizes::bytes_for(const std::string& stratum, int level) const {
  if (auto s = overrides.find(stratum); s != overrides.end()) {
    if (auto l = s->second.find(level); l != s->second.end()) return l->second;
  }
  return level == 0 ? level0_bytes : descendant_bytes;
}

StorageEstimate estimate_storage(const std::vector<StratumCounts>& strata, const MeanResourceSizes& sizes,
                                 double metadata_record_bytes, MetadataAccounting accounting) {
  if (!(metadata_record_bytes > 0)) throw DomainError("metadata record size must be positive");
  StorageEstimate est;
  est.metadata_record_bytes = metadata_record_bytes;
  est.accounting = accounting;
  for (const auto& counts : strata) {
    if (counts.seeds < 0 || counts.descendants < 0) throw DomainError("negative count in " + counts.name);
    StratumStorage st;
    st.name = counts.name;
    st.seeds = counts.seeds;
    st.descendants = counts.descendants;
    for (const auto& [level, count] : counts.resources_by_level) {
      if (count < 0) throw DomainError("negative resource count in " + counts.name);
      const double mean = sizes.bytes_for(counts.name, level);
      if (!(mean > 0)) throw DomainError("non-positive mean resource size for " + counts.name);
      LevelStorage ls{count, mean, count * mean};
      st.resource_bytes += ls.bytes;
      if (level >= 1) est.descendant_resource_bytes += ls.bytes;
      st.levels[level] = ls;
    }
    st.metadata_bytes_per_descendant = st.descendants * metadata_record_bytes;
    st.metadata_bytes_per_seed = st.seeds * metadata_record_bytes;
    st.metadata_bytes = accounting == MetadataAccounting::kPerDescendant ? st.metadata_bytes_per_descendant
                                                                       : st.metadata_bytes_per_seed;
    st.total_without_metadata = st.resource_bytes;
    st.total_with_metadata = st.resource_bytes + st.metadata_bytes;
    est.seeds += st.seeds;
    est.descendants += st.descendants;
    est.metadata_bytes += st.metadata_bytes;
    est.resource_bytes += st.resource_bytes;
    est.strata.push_back(std::move(st));
  }
  est.total_without_metadata = est.resource_bytes;
  est.total_with_metadata = est.resource_bytes + est.metadata_bytes;
  return est;
}

std::vector<StratumCounts> storage_counts(const CorpusStats& stats) {
  std::vector<StratumCounts> out;
  for (const auto* s : {&stats.nondeferred, &stats.deferred}) {
    StratumCounts c;
    c.name = s->name;
    c.seeds = static_cast<double>(s->seeds);
    c.descendants = static_cast<double>(s->descendants);
    for (const auto& [level, n] : s->frontier_by_level) c.resources_by_level[level] = static_cast<double>(n);
    out.push_back(std::move(c));
  }
  return out;
}

StorageEstimate estimate_storage(const CorpusStats& stats, const MeanResourceSizes& sizes,
                                 double metadata_record_bytes, MetadataAccounting accounting) {
  return estimate_storage(storage_counts(stats), sizes, metadata_record_bytes, accounting);
}

StorageEstimate extrapolate(const CrawlVolume& base, const StorageEstimate& per_seed, double seeds, int months) {
  if (!(seeds > 0)) throw DomainError("extrapolation needs a positive seed count");
  if (months < 1) throw DomainError("extrapolation needs at least one month");
  if (base.uris < 0 || base.bytes < 0) throw DomainError("negative base crawl volume");
  auto whole = [](double bytes) { return static_cast<std::uint64_t>(std::llround(bytes)); };
  Extrapolation x;
  x.months = months;
  x.seeds = seeds;
  x.scale = base.uris / seeds;
  x.monthly_additional_bytes = whole(per_seed.additional_bytes() * x.scale);
  x.monthly_additional_metadata_bytes = whole(per_seed.metadata_bytes * x.scale);
  x.monthly_base_bytes = whole(base.bytes);
  const auto m = static_cast<std::uint64_t>(months);
  x.additional_bytes = x.monthly_additional_bytes * m;
  x.additional_metadata_bytes = x.monthly_additional_metadata_bytes * m;
  x.base_bytes = x.monthly_base_bytes * m;
  x.total_bytes = x.base_bytes + x.additional_bytes;
  StorageEstimate out = per_seed;
  out.extrapolation = x;
  return out;
}

json crawl_estimate_to_json(const CrawlEstimate& e) {
  json levels = json::array();
  for (const auto& l : e.levels) {
    levels.push_back({{"level", l.level},
                      {"time_s", l.time_s},
                      {"size", l.size},
                      {"time_ratio", l.time_ratio},
                      {"size_ratio", l.size_ratio},
                      {"marginal", l.marginal ? json(*l.marginal) : json(nullptr)},
                      {"marginal_undefined", !l.marginal.has_value()}});
  }
  return json{{"baseline_time_s", e.baseline_time_s},
              {"baseline_size", e.baseline_size},
              {"modeled_times", e.modeled_times},
              {"levels", levels}};
}

json policy_to_json(const CrawlPolicy& p) {
  return json{{"kind", policy_name(p.kind)}, {"levels_included", p.levels_included}};
}

json storage_to_json(const StorageEstimate& s) {
  json strata = json::array();
  for (const auto& st : s.strata) {
    json levels = json::object();
    for (const auto& [level, ls] : st.levels) {
      levels[std::to_string(level)] = {{"count", ls.count}, {"mean_bytes", ls.mean_bytes}, {"bytes", ls.bytes}};
    }
    strata.push_back({{"name", st.name},
                      {"seeds", st.seeds},
                      {"descendants", st.descendants},
                      {"levels", levels},
                      {"resource_bytes", st.resource_bytes},
                      {"metadata_bytes_per_descendant", st.metadata_bytes_per_descendant},
                      {"metadata_bytes_per_seed", st.metadata_bytes_per_seed},
                      {"metadata_bytes", st.metadata_bytes},
                      {"total_without_metadata", st.total_without_metadata},
                      {"total_with_metadata", st.total_with_metadata}});
  }
  json out{{"metadata_record_bytes", s.metadata_record_bytes},
           {"accounting", s.accounting == MetadataAccounting::kPerDescendant ? "per-descendant" : "per-seed"},
           {"strata", strata},
           {"seeds", s.seeds},
           {"descendants", s.descendants},
           {"metadata_bytes", s.metadata_bytes},
           {"resource_bytes", s.resource_bytes},
           {"descendant_resource_bytes", s.descendant_resource_bytes},
           {"total_without_metadata", s.total_without_metadata},
           {"total_with_metadata", s.total_with_metadata}};
  if (s.extrapolation) {
    const auto& x = *s.extrapolation;
    out["extrapolation"] = {{"months", x.months},
                            {"seeds", x.seeds},
                            {"scale", x.scale},
                            {"monthly_additional_bytes", x.monthly_additional_bytes},
                            {"monthly_additional_metadata_bytes", x.monthly_additional_metadata_bytes},
                            {"monthly_base_bytes", x.monthly_base_bytes},
                            {"monthly_total_bytes", x.monthly_total_bytes()},
                            {"additional_bytes", x.additional_bytes},
                            {"additional_metadata_bytes", x.additional_metadata_bytes},
                            {"base_bytes", x.base_bytes},
                            {"total_bytes", x.total_bytes}};
  }
  return out;
}

}  // namespace descend
