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

#include "descend/report.hpp"

#include <cstdio>

#include "descend/stats.hpp"

namespace descend {
namespace {

std::string fixed(double value, int places = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, round_half_up(value, places));
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string mb(double bytes) { return fixed(bytes / 1e6, 2); }

const StratumStats* strata_of(const CorpusStats& c, int i) {
  return i == 0 ? &c.deferred : i == 1 ? &c.nondeferred : &c.all;
}

std::string descendants_table(const CorpusStats& c) {
  std::string out = "stratum,seeds,descendants,mean,stddev,median,median_occurrences,min,max\n";
  for (int i = 0; i < 3; ++i) {
    const auto& s = *strata_of(c, i);
    const auto& d = s.descendant_stats;
    out += s.name + "," + std::to_string(s.seeds) + "," + std::to_string(s.descendants) + "," + fixed(d.mean) +
           "," + fixed(d.stddev) + "," + fixed(d.median, 0) + "," + std::to_string(d.median_occurrences) + "," +
           fixed(d.min, 0) + "," + fixed(d.max, 0) + "\n";
  }
  return out;
}

std::string depth_breadth_table(const CorpusStats& c) {
  std::string out =
      "stratum,depth_mean,depth_stddev,depth_max,tree_depth_max,breadth_mean,breadth_stddev,breadth_median,"
      "breadth_max,contributing_paths\n";
  for (int i = 0; i < 3; ++i) {
    const auto& s = *strata_of(c, i);
    out += s.name + "," + fixed(s.depth_stats.mean) + "," + fixed(s.depth_stats.stddev) + "," +
           fixed(s.depth_stats.max, 0) + "," + std::to_string(s.max_tree_depth) + "," + fixed(s.breadth_stats.mean) +
           "," + fixed(s.breadth_stats.stddev) + "," + fixed(s.breadth_stats.median, 0) + "," +
           fixed(s.breadth_stats.max, 0) + "," + std::to_string(s.contributing_paths) + "\n";
  }
  return out;
}

std::string event_kind_table(const CorpusStats& c) {
  std::string out = "kind,deferred_pct,nondeferred_pct,rnew_count,rnew_pct\n";
  for (const auto& row : c.event_kinds) {
    out += csv_cell(row.kind) + "," + fixed(100 * row.deferred_seed_share) + "," +
           fixed(100 * row.nondeferred_seed_share) + "," + std::to_string(row.rnew_count) + "," +
           fixed(100 * row.rnew_share, 1) + "\n";
  }
  return out;
}

std::string level_series(const std::vector<SeedAnalysis>& seeds) {
  std::string out = "level,cumulative_frontier,added\n";
  std::size_t prev = 0;
  for (const auto& [level, total] : level_contributions(seeds)) {
    out += std::to_string(level) + "," + std::to_string(total) + "," + std::to_string(total - prev) + "\n";
    prev = total;
  }
  return out;
}

std::string crawl_table(const nlohmann::json& estimate) {
  const auto& crawl = estimate.at("crawl");
  std::string out = "level,time_s,size,time_ratio,size_ratio,marginal\n";
  out += "baseline," + fixed(crawl.at("baseline_time_s").get<double>()) + "," +
         fixed(crawl.at("baseline_size").get<double>(), 0) + ",,,\n";
  for (const auto& l : crawl.at("levels")) {
    out += std::to_string(l.at("level").get<int>()) + "," + fixed(l.at("time_s").get<double>()) + "," +
           fixed(l.at("size").get<double>(), 0) + "," + format_ratio(l.at("time_ratio").get<double>()) + "," +
           format_ratio(l.at("size_ratio").get<double>()) + "," +
           (l.at("marginal").is_null() ? std::string("undefined") : fixed(l.at("marginal").get<double>())) + "\n";
  }
  return out;
}

std::string storage_table(const nlohmann::json& estimate) {
  const auto& s = estimate.at("storage");
  std::string out =
      "stratum,seeds,descendants,resource_mb,metadata_mb_per_descendant,metadata_mb_per_seed,total_without_metadata_mb,"
      "total_with_metadata_mb\n";
  for (const auto& st : s.at("strata")) {
    out += st.at("name").get<std::string>() + "," + fixed(st.at("seeds").get<double>(), 0) + "," +
           fixed(st.at("descendants").get<double>(), 0) + "," + mb(st.at("resource_bytes").get<double>()) + "," +
           mb(st.at("metadata_bytes_per_descendant").get<double>()) + "," +
           mb(st.at("metadata_bytes_per_seed").get<double>()) + "," +
           mb(st.at("total_without_metadata").get<double>()) + "," + mb(st.at("total_with_metadata").get<double>()) +
           "\n";
  }
  out += "total," + fixed(s.at("seeds").get<double>(), 0) + "," + fixed(s.at("descendants").get<double>(), 0) + "," +
         mb(s.at("resource_bytes").get<double>()) + "," + mb(s.at("metadata_bytes").get<double>()) + ",," +
         mb(s.at("total_without_metadata").get<double>()) + "," + mb(s.at("total_with_metadata").get<double>()) + "\n";
  return out;
}

}  // namespace

std::string format_ratio(double value) { return fixed(value) + "x"; }

std::vector<ReportFile> render_report(const ReportInputs& in) {
  std::vector<ReportFile> files;
  nlohmann::json summary = nlohmann::json::object();
  summary["seeds"] = in.seeds.size();

  if (!in.seeds.empty()) {
    const CorpusStats c = aggregate(in.seeds);
    files.push_back({"descendants.csv", descendants_table(c)});
    files.push_back({"depth_breadth.csv", depth_breadth_table(c)});
    files.push_back({"event_kinds.csv", event_kind_table(c)});
    files.push_back({"level_contributions.csv", level_series(in.seeds)});

    const auto ranking = c.occurrences.empty() ? OccurrenceRanking{} : occurrence_ranking(in.seeds, 10);
    std::string top_csv = "rank,uri,occurrences\n";
    for (std::size_t i = 0; i < ranking.top.size(); ++i) {
      top_csv += std::to_string(i + 1) + "," + csv_cell(ranking.top[i].uri) + "," + std::to_string(ranking.top[i].count) + "\n";
    }
    top_csv += "total,," + std::to_string(ranking.top_total) + "\n";
    files.push_back({"top_occurrences.csv", top_csv});

    std::string ranking_csv = "rank,occurrences\n";
    if (!c.occurrences.empty()) {
      const auto full = occurrence_ranking(in.seeds, c.occurrences.size());
      for (std::size_t i = 0; i < full.top.size(); ++i) {
        ranking_csv += std::to_string(i + 1) + "," + std::to_string(full.top[i].count) + "\n";
      }
    }
    files.push_back({"fig_occurrence_ranking.csv", ranking_csv});

    std::string cdf = "rank,cumulative_share\n";
    for (const auto& [rank, share] : c.contribution_cdf) cdf += std::to_string(rank) + "," + fixed(share, 6) + "\n";
    files.push_back({"fig_contribution_cdf.csv", cdf});

    std::string per_seed = "seed,deferred,descendants,depth,tree_depth,breadth,r0,rp,contributing_paths\n";
    for (const auto& s : c.seeds) {
      per_seed += csv_cell(s.seed) + "," + (s.deferred ? "1" : "0") + "," + std::to_string(s.descendants) + "," +
                  std::to_string(s.depth) + "," + std::to_string(s.tree_depth) + "," + std::to_string(s.breadth) +
                  "," + std::to_string(s.r0) + "," + std::to_string(s.rp) + "," +
                  std::to_string(s.contributing_paths) + "\n";
    }
    files.push_back({"fig_descendants_per_seed.csv", per_seed});

    summary["deferred"] = c.deferred.seeds;
    summary["nondeferred"] = c.nondeferred.seeds;
    summary["descendants"] = {{"all", c.all.descendants},
                              {"deferred", c.deferred.descendants},
                              {"nondeferred", c.nondeferred.descendants}};
    summary["contributing_paths"] = c.all.contributing_paths;
    summary["max_tree_depth"] = c.all.max_tree_depth;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& [level, total] : level_contributions(in.seeds)) levels.push_back(total);
    summary["level_contributions"] = levels;
    summary["occurrences"] = {{"top10_total", ranking.top_total},
                              {"total_insertions", ranking.total_insertions},
                              {"top10_share", ranking.share()}};
  }

  if (in.coverage) {
    const auto& cov = *in.coverage;
    std::string by_level = "level,total,archived,unarchived,failed,fraction_unarchived\n";
    nlohmann::json fractions = nlohmann::json::array();
    for (const auto& l : cov.at("levels")) {
      by_level += std::to_string(l.at("level").get<int>()) + "," + std::to_string(l.at("total").get<std::size_t>()) +
                  "," + std::to_string(l.at("archived").get<std::size_t>()) + "," +
                  std::to_string(l.at("unarchived").get<std::size_t>()) + "," +
                  std::to_string(l.at("failed").get<std::size_t>()) + "," +
                  fixed(l.at("fraction_unarchived").get<double>(), 4) + "\n";
      fractions.push_back(l.at("fraction_unarchived"));
    }
    files.push_back({"fig_unarchived_by_level.csv", by_level});
    std::string mime = "mime,unarchived\n";
    for (const auto& [m, n] : cov.at("unarchived_by_mime").items()) {
      mime += csv_cell(m) + "," + std::to_string(n.get<std::size_t>()) + "\n";
    }
    files.push_back({"fig_mime_histogram.csv", mime});
    std::string sizes = "mime,size_bytes\n";
    for (const auto& [m, list] : cov.at("unarchived_sizes_by_mime").items()) {
      for (const auto& v : list) sizes += csv_cell(m) + "," + std::to_string(v.get<std::uint64_t>()) + "\n";
    }
    files.push_back({"fig_unarchived_sizes.csv", sizes});
    summary["unarchived_fraction_by_level"] = fractions;
    summary["coverage_errors"] = cov.at("errors");
  }

  if (in.estimate) {
    files.push_back({"crawl_estimate.csv", crawl_table(*in.estimate)});
    if (in.estimate->contains("storage")) files.push_back({"storage.csv", storage_table(*in.estimate)});
    summary["policy"] = in.estimate->at("policy");
  }

  files.push_back({"summary.json", summary.dump(1) + "\n"});
  return files;
}

}  // namespace descend
