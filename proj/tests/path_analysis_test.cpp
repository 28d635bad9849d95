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

#include <gtest/gtest.h>

#include "descend/crawler.hpp"
#include "descend/errors.hpp"
#include "descend/fixture_gen.hpp"
#include "descend/page_driver.hpp"
#include "descend/path_analysis.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace descend {
namespace {

std::set<std::string> keyset(const ResourceSet& s) {
  auto k = s.keys();
  return {k.begin(), k.end()};
}

SeedAnalysis crawl_and_analyze(const SiteFixture& f) {
  SimulatedDriver d(f);
  const auto t = build_tree(f.seed, d);
  return SeedAnalysis{classify(t), analyze_tree(t)};
}

// s0 requests {a}; click#A adds {b}; A then click#B adds {c, b}; mouseover#C adds nothing.
SiteFixture hand_fixture(const std::string& host = "h.example.com") {
  SiteFixture f;
  f.seed = canonicalize("http://" + host + "/");
  auto res = [&](const std::string& name) { return FixtureResource{"http://" + host + "/" + name, "image/png", 1}; };
  f.states[""].resources = {res("a")};
  f.states[""].events = {{"A", EventKind::from_name("click")}, {"C", EventKind::from_name("mouseover")}};
  f.states["A:click"].resources = {res("b")};
  f.states["A:click"].events = {{"B", EventKind::from_name("click")}};
  f.states["A:click/B:click"].resources = {res("c"), res("b")};
  f.states["C:mouseover"].resources = {res("a")};
  return f;
}

TEST(AnalyzeTree, HandBuiltTree) {
  const auto a = crawl_and_analyze(hand_fixture()).analysis;
  EXPECT_EQ(a.descendant_count, 3u);
  EXPECT_EQ(a.breadth, 2u);
  EXPECT_EQ(a.tree_depth, 2);
  EXPECT_EQ(a.r0.size(), 1u);
  EXPECT_EQ(a.rp_total.size(), 3u);
  EXPECT_EQ(a.contributing_path_count(), 2u);
  EXPECT_EQ(a.contributing_depth(), 2);
  ASSERT_EQ(a.per_level_new.size(), 2u);
  EXPECT_EQ(keyset(a.per_level_new.at(1)), std::set<std::string>{"http://h.example.com/b"});
  EXPECT_EQ(keyset(a.per_level_new.at(2)), std::set<std::string>{"http://h.example.com/c"});
  EXPECT_EQ(a.yields[1].path, (std::vector<std::string>{"n0", "n1", "n2"}));
  EXPECT_EQ(a.event_kinds, (std::set<std::string>{"click", "mouseover"}));
  EXPECT_EQ(a.level_node_counts.at(1), 2u);
}

TEST(ContributingPaths, CarryCumulativeResources) {
  const auto f = hand_fixture();
  SimulatedDriver d(f);
  const auto t = build_tree(f.seed, d);
  const auto a = analyze_tree(t);
  const auto paths = contributing_paths(t, a);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[1].states.size(), 3u);
  EXPECT_EQ(paths[1].cumulative.size(), 3u);
}

TEST(Aggregate, StrataAndEventCredit) {
  auto quiet = hand_fixture("q.example.com");
  quiet.states["A:click"].resources.clear();
  quiet.states["A:click/B:click"].resources.clear();
  const std::vector<SeedAnalysis> seeds{crawl_and_analyze(hand_fixture()), crawl_and_analyze(quiet)};
  const auto c = aggregate(seeds);
  EXPECT_EQ(c.all.seeds, 2u);
  EXPECT_EQ(c.deferred.seeds, 1u);
  EXPECT_EQ(c.nondeferred.seeds, 1u);
  EXPECT_EQ(c.all.descendants, 6u);
  EXPECT_EQ(c.all.contributing_paths, 2u);
  EXPECT_EQ(c.total_insertions, 2u);
  const auto click = std::find_if(c.event_kinds.begin(), c.event_kinds.end(),
                                  [](const EventKindRow& r) { return r.kind == "click"; });
  ASSERT_NE(click, c.event_kinds.end());
  EXPECT_EQ(click->rnew_count, 2u);
  EXPECT_DOUBLE_EQ(click->rnew_share, 1.0);
  EXPECT_DOUBLE_EQ(click->deferred_seed_share, 1.0);
  EXPECT_DOUBLE_EQ(click->nondeferred_seed_share, 1.0);
  ASSERT_EQ(c.contribution_cdf.size(), 2u);
  EXPECT_DOUBLE_EQ(c.contribution_cdf[0].second, 1.0);
  EXPECT_EQ(level_contributions(seeds), (std::map<int, std::size_t>{{0, 2}, {1, 3}, {2, 4}}));
  EXPECT_THROW(aggregate({}), DomainError);
}

TEST(Aggregate, EventCreditGoesToFirstDiscoverer) {
  auto first = hand_fixture("one.example.com");
  auto second = hand_fixture("two.example.com");
  // The second seed finds the first seed's level-1 resource through a blur.
  second.states[""].events.push_back({"D", EventKind::from_name("blur")});
  second.states["D:blur"].resources = {{"http://one.example.com/b", "image/png", 1}};
  const auto c = aggregate({crawl_and_analyze(first), crawl_and_analyze(second)});
  const auto blur = std::find_if(c.event_kinds.begin(), c.event_kinds.end(),
                                 [](const EventKindRow& r) { return r.kind == "blur"; });
  EXPECT_EQ(blur->rnew_count, 0u);
  EXPECT_EQ(c.occurrences.at("http://one.example.com/b"), 2u);
}

TEST(OccurrenceRanking, TiesBreakByUri) {
  const std::vector<SeedAnalysis> seeds{crawl_and_analyze(hand_fixture())};
  const auto r = occurrence_ranking(seeds, 5);
  ASSERT_EQ(r.top.size(), 2u);
  EXPECT_EQ(r.top[0].uri, "http://h.example.com/b");
  EXPECT_EQ(r.top_total, 2u);
  EXPECT_DOUBLE_EQ(r.share(), 1.0);
  EXPECT_THROW(occurrence_ranking(seeds, 0), DomainError);
}

TEST(SeedAnalysisJson, RoundTrip) {
  const auto s = crawl_and_analyze(hand_fixture());
  const auto back = seed_analysis_from_json(seed_analysis_to_json(s));
  EXPECT_EQ(seed_analysis_to_json(back), seed_analysis_to_json(s));
  EXPECT_TRUE(back.analysis.rp_total.same_keys(s.analysis.rp_total));
  EXPECT_EQ(back.analysis.descendant_count, s.analysis.descendant_count);
}

TEST(AnalyzeTreeProperty, MatchesBruteForceWalk) {
  gen::Rng rng(17);
  std::vector<SeedAnalysis> analyses;
  std::vector<oracle::SeedWalk> walks;
  for (int i = 0; i < 60; ++i) {
    char uri[64];
    std::snprintf(uri, sizeof uri, "http://seed%d.example.com/", i);
    const auto f = random_fixture(gen::fixture_spec(rng, 300), 500 + i, uri);
    const auto s = crawl_and_analyze(f);
    const auto w = oracle::walk(f);
    ASSERT_EQ(keyset(s.analysis.rp_total), w.rp_total);
    ASSERT_EQ(s.analysis.contributing_path_count(), w.contributing);
    ASSERT_EQ(s.analysis.per_level_new.size(), w.per_level_new.size());
    for (const auto& [level, set] : w.per_level_new) ASSERT_EQ(keyset(s.analysis.per_level_new.at(level)), set);
    ASSERT_EQ(s.classification.deferred, w.deferred);
    analyses.push_back(s);
    walks.push_back(w);
  }
  const auto r = occurrence_ranking(analyses, 25);
  const auto expected = oracle::ranking(walks, 25);
  ASSERT_EQ(r.top.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(r.top[i].uri, expected[i].uri);
    EXPECT_EQ(r.top[i].count, expected[i].count);
  }
  EXPECT_EQ(level_contributions(analyses), oracle::cumulative_levels(walks));
}

}  // namespace
}  // namespace descend
