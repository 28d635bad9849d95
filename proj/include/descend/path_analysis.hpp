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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "descend/crawler.hpp"
#include "descend/state_model.hpp"
#include "descend/stats.hpp"

namespace descend {

// A state whose resource set grew relative to its parent: the terminal of a
// contributing path.
struct NodeYield {
  std::string state_id;
  int level = 0;
  EventKind kind;                  // final event of the state's script
  std::vector<std::string> path;   // state ids from the root to this state
  ResourceSet fresh;               // new_resources(parent, state)
};

struct PathAnalysis {
  UriR seed;
  std::size_t descendant_count = 0;
  std::size_t breadth = 0;  // events available at s0
  int tree_depth = 0;
  ResourceSet r0;
  std::map<int, ResourceSet> per_level_new;      // every level >= 1 that has states
  std::map<int, std::size_t> level_node_counts;  // every level that has states
  ResourceSet rp_total;
  std::vector<NodeYield> yields;                 // contributing paths, depth-first order
  std::set<std::string> event_kinds;             // kinds listened for anywhere in the tree
  std::size_t nodes_visited = 0;

  std::size_t contributing_path_count() const { return yields.size(); }
  // Deepest level at which a state added resources; 0 when none did.
  int contributing_depth() const;
};

PathAnalysis analyze_tree(const StateTree& tree);

// Materializes the contributing paths of `analysis` against its tree.
std::vector<StatePath> contributing_paths(const StateTree& tree, const PathAnalysis& analysis);

struct SeedAnalysis {
  SeedClassification classification;
  PathAnalysis analysis;
};

struct StratumStats {
  std::string name;
  std::size_t seeds = 0;
  std::size_t descendants = 0;
  std::size_t contributing_paths = 0;
  int max_tree_depth = 0;
  SummaryStats descendant_stats;
  SummaryStats depth_stats;  // contributing depth
  SummaryStats tree_depth_stats;
  SummaryStats breadth_stats;
  std::map<int, std::size_t> nodes_by_level;
  // Distinct resources first required at each level, deduplicated within
  // the stratum; level 0 is the union of R0.
  std::map<int, std::size_t> frontier_by_level;
};

struct EventKindRow {
  std::string kind;
  double deferred_seed_share = 0;
  double nondeferred_seed_share = 0;
  std::size_t rnew_count = 0;
  double rnew_share = 0;
};

struct SeedRow {
  std::string seed;
  bool deferred = false;
  std::size_t descendants = 0;
  int depth = 0;
  int tree_depth = 0;
  std::size_t breadth = 0;
  std::size_t r0 = 0;
  std::size_t rp = 0;
  std::size_t contributing_paths = 0;
};

struct CorpusStats {
  StratumStats all;
  StratumStats deferred;
  StratumStats nondeferred;
  // Each distinct new resource is credited to the final event of the first
  // state (seed order, then depth-first) that required it.
  std::vector<EventKindRow> event_kinds;
  std::map<std::string, std::size_t> occurrences;  // canonical URI -> new-resource insertions
  std::size_t total_insertions = 0;
  // (rank, cumulative share) over seeds sorted by decreasing |RP - R0|.
  std::vector<std::pair<std::size_t, double>> contribution_cdf;
  std::vector<SeedRow> seeds;
};

// Throws DomainError on empty input.
CorpusStats aggregate(const std::vector<SeedAnalysis>& analyses);

// Per-level distinct frontier across the corpus. Levels are disjoint: a
// resource belongs to the shallowest level that required it.
std::map<int, ResourceSet> corpus_frontier(const std::vector<SeedAnalysis>& analyses);

// Cumulative deduplicated frontier size through each level.
std::map<int, std::size_t> level_contributions(const std::vector<SeedAnalysis>& analyses);

struct OccurrenceEntry {
  std::string uri;
  std::size_t count = 0;
  friend bool operator==(const OccurrenceEntry&, const OccurrenceEntry&) = default;
};

struct OccurrenceRanking {
  std::vector<OccurrenceEntry> top;
  std::size_t top_total = 0;
  std::size_t total_insertions = 0;
  double share() const {
    return total_insertions ? static_cast<double>(top_total) / static_cast<double>(total_insertions) : 0.0;
  }
};

// Descending count, ties by canonical URI. Throws DomainError when k == 0.
OccurrenceRanking occurrence_ranking(const std::vector<SeedAnalysis>& analyses, std::size_t k);

nlohmann::json seed_analysis_to_json(const SeedAnalysis& a);
SeedAnalysis seed_analysis_from_json(const nlohmann::json& j);
nlohmann::json corpus_stats_to_json(const CorpusStats& stats);

}  // namespace descend
