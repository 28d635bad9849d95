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

#include "descend/path_analysis.hpp"

#include <algorithm>
#include <functional>

#include "descend/errors.hpp"
#include "descend/json_io.hpp"

namespace descend {

using nlohmann::json;

int PathAnalysis::contributing_depth() const {
  int d = 0;
  for (const auto& y : yields) d = std::max(d, y.level);
  return d;
}

PathAnalysis analyze_tree(const StateTree& tree) {
  PathAnalysis a;
  a.seed = tree.seed();
  const ClientState& root = tree.root();
  a.r0 = root.resources;
  a.breadth = root.available_events.size();
  a.descendant_count = tree.size() - 1;
  a.tree_depth = tree.depth();

  for (const ClientState& node : tree.nodes()) {
    ++a.nodes_visited;
    ++a.level_node_counts[node.level];
    a.rp_total.insert_all(node.resources);
    for (const auto& e : node.available_events) a.event_kinds.insert(e.kind.name());
    if (node.level == 0) continue;

    const ClientState* parent = tree.parent_of(node.id);
    ResourceSet fresh = new_resources(parent->resources, node.resources);
    ResourceSet& level_new = a.per_level_new[node.level];
    if (fresh.empty()) continue;
    level_new.insert_all(fresh);

    NodeYield y;
    y.state_id = node.id;
    y.level = node.level;
    y.kind = node.script.events.back().kind;
    for (const ClientState* s = &node; s; s = tree.parent_of(s->id)) y.path.push_back(s->id);
    std::reverse(y.path.begin(), y.path.end());
    y.fresh = std::move(fresh);
    a.yields.push_back(std::move(y));
  }
  return a;
}

std::vector<StatePath> contributing_paths(const StateTree& tree, const PathAnalysis& analysis) {
  std::vector<StatePath> out;
  out.reserve(analysis.yields.size());
  for (const auto& y : analysis.yields) out.push_back(path_to(tree, y.state_id));
  return out;
}

namespace {

using Filter = std::function<bool(const SeedAnalysis&)>;

std::map<int, ResourceSet> frontier_of(const std::vector<SeedAnalysis>& analyses, const Filter& keep) {
  std::map<int, ResourceSet> by_level;
  bool any = false;
  for (const auto& s : analyses) {
    if (!keep(s)) continue;
    any = true;
    by_level[0].insert_all(s.analysis.r0);
    for (const auto& [level, set] : s.analysis.per_level_new) by_level[level].insert_all(set);
  }
  if (!any) return {};
  ResourceSet seen;
  for (auto& [level, set] : by_level) {
    set = set_difference(set, seen);
    seen.insert_all(set);
  }
  return by_level;
}

StratumStats stratum(const std::string& name, const std::vector<SeedAnalysis>& analyses,
                     const Filter& keep) {
  StratumStats st;
  st.name = name;
  std::vector<double> descendants, depth, tree_depth, breadth;
  for (const auto& s : analyses) {
    if (!keep(s)) continue;
    const auto& a = s.analysis;
    ++st.seeds;
    st.descendants += a.descendant_count;
    st.contributing_paths += a.contributing_path_count();
    st.max_tree_depth = std::max(st.max_tree_depth, a.tree_depth);
    for (const auto& [level, n] : a.level_node_counts) st.nodes_by_level[level] += n;
    descendants.push_back(static_cast<double>(a.descendant_count));
    depth.push_back(a.contributing_depth());
    tree_depth.push_back(a.tree_depth);
    breadth.push_back(static_cast<double>(a.breadth));
  }
  st.descendant_stats = summarize(descendants);
  st.depth_stats = summarize(depth);
  st.tree_depth_stats = summarize(tree_depth);
  st.breadth_stats = summarize(breadth);
  for (const auto& [level, set] : frontier_of(analyses, keep)) st.frontier_by_level[level] = set.size();
  return st;
}

}  // namespace

CorpusStats aggregate(const std::vector<SeedAnalysis>& analyses) {
  if (analyses.empty()) throw DomainError("aggregate needs at least one seed analysis");
  CorpusStats c;
  c.all = stratum("all", analyses, [](const SeedAnalysis&) { return true; });
  c.deferred = stratum("deferred", analyses, [](const SeedAnalysis& s) { return s.classification.deferred; });
  c.nondeferred =
      stratum("nondeferred", analyses, [](const SeedAnalysis& s) { return !s.classification.deferred; });

  // Event kinds: presence per stratum and first-discovery credit.
  std::map<std::string, std::size_t> deferred_has, nondeferred_has, credit;
  std::set<std::string, std::less<>> credited;
  std::size_t credited_total = 0;
  for (const auto& s : analyses) {
    auto& has = s.classification.deferred ? deferred_has : nondeferred_has;
    for (const auto& k : s.analysis.event_kinds) ++has[k];
    for (const auto& y : s.analysis.yields) {
      for (const auto& [key, ref] : y.fresh) {
        ++c.occurrences[key];
        ++c.total_insertions;
        if (credited.insert(key).second) {
          ++credit[y.kind.name()];
          ++credited_total;
        }
      }
    }
  }
  std::vector<std::string> kinds;
  for (auto tag : EventKind::known_tags()) kinds.emplace_back(EventKind::tag_name(tag));
  std::set<std::string> others;
  for (const auto* m : {&deferred_has, &nondeferred_has, &credit}) {
    for (const auto& [k, n] : *m) {
      if (EventKind::from_name(k).is_other()) others.insert(k);
    }
  }
  kinds.insert(kinds.end(), others.begin(), others.end());
  auto share = [](std::size_t n, std::size_t d) { return d ? static_cast<double>(n) / static_cast<double>(d) : 0.0; };
  for (const auto& k : kinds) {
    EventKindRow row;
    row.kind = k;
    row.deferred_seed_share = share(deferred_has[k], c.deferred.seeds);
    row.nondeferred_seed_share = share(nondeferred_has[k], c.nondeferred.seeds);
    row.rnew_count = credit[k];
    row.rnew_share = share(credit[k], credited_total);
    c.event_kinds.push_back(row);
  }

  std::vector<std::size_t> contributions;
  for (const auto& s : analyses) {
    const auto& a = s.analysis;
    contributions.push_back(a.rp_total.size() - set_intersection(a.rp_total, a.r0).size());
    c.seeds.push_back(SeedRow{a.seed.canonical(), s.classification.deferred, a.descendant_count,
                              a.contributing_depth(), a.tree_depth, a.breadth, a.r0.size(),
                              a.rp_total.size(), a.contributing_path_count()});
  }
  std::sort(contributions.begin(), contributions.end(), std::greater<>());
  std::size_t total = 0;
  for (auto v : contributions) total += v;
  std::size_t running = 0;
  for (std::size_t i = 0; i < contributions.size(); ++i) {
    running += contributions[i];
    c.contribution_cdf.emplace_back(i + 1, total ? static_cast<double>(running) / static_cast<double>(total) : 1.0);
  }
  return c;
}

std::map<int, ResourceSet> corpus_frontier(const std::vector<SeedAnalysis>& analyses) {
  return frontier_of(analyses, [](const SeedAnalysis&) { return true; });
}

std::map<int, std::size_t> level_contributions(const std::vector<SeedAnalysis>& analyses) {
  std::map<int, std::size_t> out;
  std::size_t running = 0;
  for (const auto& [level, set] : corpus_frontier(analyses)) {
    running += set.size();
    out[level] = running;
  }
  return out;
}

OccurrenceRanking occurrence_ranking(const std::vector<SeedAnalysis>& analyses, std::size_t k) {
  if (k == 0) throw DomainError("occurrence ranking needs k >= 1");
  std::map<std::string, std::size_t> counts;
  OccurrenceRanking r;
  for (const auto& s : analyses) {
    for (const auto& y : s.analysis.yields) {
      for (const auto& [key, ref] : y.fresh) {
        ++counts[key];
        ++r.total_insertions;
      }
    }
  }
  std::vector<OccurrenceEntry> all;
  all.reserve(counts.size());
  for (auto& [uri, n] : counts) all.push_back({uri, n});
  const std::size_t n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                    [](const OccurrenceEntry& a, const OccurrenceEntry& b) {
                      return a.count != b.count ? a.count > b.count : a.uri < b.uri;
                    });
  all.resize(n);
  for (const auto& e : all) r.top_total += e.count;
  r.top = std::move(all);
  return r;
}

json seed_analysis_to_json(const SeedAnalysis& s) {
  const auto& a = s.analysis;
  json levels = json::object();
  for (const auto& [level, n] : a.level_node_counts) levels[std::to_string(level)] = n;
  json yields = json::array();
  for (const auto& y : a.yields) {
    yields.push_back({{"state", y.state_id},
                      {"level", y.level},
                      {"kind", y.kind.name()},
                      {"path", y.path},
                      {"fresh", json_io::resources_to_json(y.fresh)}});
  }
  return json{{"seed", json_io::uri_to_json(a.seed)},
              {"classification", classification_to_json(s.classification)},
              {"descendants", a.descendant_count},
              {"breadth", a.breadth},
              {"tree_depth", a.tree_depth},
              {"nodes_by_level", levels},
              {"event_kinds", a.event_kinds},
              {"r0", json_io::resources_to_json(a.r0)},
              {"yields", yields}};
}

SeedAnalysis seed_analysis_from_json(const json& j) {
  try {
    SeedAnalysis s;
    s.classification = classification_from_json(j.at("classification"));
    auto& a = s.analysis;
    a.seed = json_io::uri_from_json(j.at("seed"));
    a.descendant_count = j.at("descendants").get<std::size_t>();
    a.breadth = j.at("breadth").get<std::size_t>();
    a.tree_depth = j.at("tree_depth").get<int>();
    for (const auto& [level, n] : j.at("nodes_by_level").items()) {
      const int l = std::stoi(level);
      a.level_node_counts[l] = n.get<std::size_t>();
      a.nodes_visited += n.get<std::size_t>();
      if (l > 0) a.per_level_new[l];
    }
    a.event_kinds = j.at("event_kinds").get<std::set<std::string>>();
    a.r0 = json_io::resources_from_json(j.at("r0"));
    a.rp_total = a.r0;
    for (const auto& yj : j.at("yields")) {
      NodeYield y;
      y.state_id = yj.at("state").get<std::string>();
      y.level = yj.at("level").get<int>();
      y.kind = EventKind::from_name(yj.at("kind").get<std::string>());
      y.path = yj.at("path").get<std::vector<std::string>>();
      y.fresh = json_io::resources_from_json(yj.at("fresh"));
      a.per_level_new[y.level].insert_all(y.fresh);
      a.rp_total.insert_all(y.fresh);
      a.yields.push_back(std::move(y));
    }
    return s;
  } catch (const json::exception& e) {
    throw FormatError(std::string("seed analysis: ") + e.what());
  }
}

namespace {

json summary_json(const SummaryStats& s) {
  return json{{"count", s.count}, {"mean", s.mean},     {"stddev", s.stddev},
              {"median", s.median}, {"min", s.min},     {"max", s.max},
              {"median_occurrences", s.median_occurrences}};
}

json level_map_json(const std::map<int, std::size_t>& m) {
  json out = json::object();
  for (const auto& [level, n] : m) out[std::to_string(level)] = n;
  return out;
}

json stratum_json(const StratumStats& s) {
  return json{{"seeds", s.seeds},
              {"descendants", s.descendants},
              {"contributing_paths", s.contributing_paths},
              {"max_tree_depth", s.max_tree_depth},
              {"descendant_stats", summary_json(s.descendant_stats)},
              {"depth_stats", summary_json(s.depth_stats)},
              {"tree_depth_stats", summary_json(s.tree_depth_stats)},
              {"breadth_stats", summary_json(s.breadth_stats)},
              {"nodes_by_level", level_map_json(s.nodes_by_level)},
              {"frontier_by_level", level_map_json(s.frontier_by_level)}};
}

}  // namespace

json corpus_stats_to_json(const CorpusStats& c) {
  json kinds = json::array();
  for (const auto& r : c.event_kinds) {
    kinds.push_back({{"kind", r.kind},
                     {"deferred_seed_share", r.deferred_seed_share},
                     {"nondeferred_seed_share", r.nondeferred_seed_share},
                     {"rnew_count", r.rnew_count},
                     {"rnew_share", r.rnew_share}});
  }
  json cdf = json::array();
  for (const auto& [rank, share] : c.contribution_cdf) cdf.push_back({rank, share});
  return json{{"all", stratum_json(c.all)},
              {"deferred", stratum_json(c.deferred)},
              {"nondeferred", stratum_json(c.nondeferred)},
              {"event_kinds", kinds},
              {"total_insertions", c.total_insertions},
              {"distinct_inserted", c.occurrences.size()},
              {"contribution_cdf", cdf}};
}

}  // namespace descend
