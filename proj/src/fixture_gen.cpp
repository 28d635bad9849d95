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

#include "descend/fixture_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <random>

#include "descend/coverage.hpp"
#include "descend/errors.hpp"
#include "descend/json_io.hpp"

namespace descend {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
  }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  bool chance(double p) { return unit() < p; }
  std::size_t weighted(const std::vector<double>& w) {
    return std::discrete_distribution<std::size_t>(w.begin(), w.end())(gen_);
  }
  // Heavy-tailed positive weight.
  double pareto(double alpha) { return std::pow(1.0 - unit(), -1.0 / alpha); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), gen_);
  }

 private:
  std::mt19937_64 gen_;
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Splits `total` into bins of at least `min_each` and at most caps[i], with
// the surplus drawn in proportion to `weights`.
std::vector<std::size_t> distribute(std::size_t total, std::size_t min_each,
                                    const std::vector<std::size_t>& caps, std::vector<double> weights,
                                    Rng& rng) {
  const std::size_t bins = caps.size();
  std::vector<std::size_t> out(bins, min_each);
  std::size_t capacity = 0;
  for (std::size_t i = 0; i < bins; ++i) {
    if (caps[i] < min_each) throw DomainError("fixture generator: bin cap below minimum");
    capacity += caps[i];
    if (caps[i] == min_each) weights[i] = 0;
  }
  if (total < min_each * bins || total > capacity) {
    throw DomainError("fixture generator: cannot split " + std::to_string(total) + " into " +
                      std::to_string(bins) + " bins");
  }
  std::size_t left = total - min_each * bins;
  while (left > 0) {
    const std::size_t i = rng.weighted(weights);
    ++out[i];
    --left;
    if (out[i] == caps[i]) weights[i] = 0;
  }
  return out;
}

struct MimeKind {
  const char* ext;
  const char* mime;
  double weight;
};

constexpr MimeKind kMimes[] = {
    {"png", "image/png", 34},       {"jpg", "image/jpeg", 20},
    {"gif", "image/gif", 14},       {"js", "application/javascript", 14},
    {"json", "application/json", 10}, {"css", "text/css", 5},
    {"html", "text/html", 3},
};

const MimeKind& pick_mime(Rng& rng) {
  static const std::vector<double> weights = [] {
    std::vector<double> w;
    for (const auto& m : kMimes) w.push_back(m.weight);
    return w;
  }();
  return kMimes[rng.weighted(weights)];
}

struct KindWeight {
  EventKind::Tag tag;
  double deferred;
  double nondeferred;
  double contributing;
};

// Share of seeds listening for each event kind and share of new resources
// each kind uncovered in the reference crawl.
constexpr KindWeight kKinds[] = {
    {EventKind::Tag::kClick, 62.11, 4.29, 63.2},     {EventKind::Tag::kMouseover, 25.26, 3.00, 4.7},
    {EventKind::Tag::kMousedown, 16.84, 1.72, 2.8},  {EventKind::Tag::kBlur, 14.74, 0.86, 9.8},
    {EventKind::Tag::kChange, 11.58, 2.14, 0.0},     {EventKind::Tag::kMouseout, 8.42, 0.00, 0.8},
    {EventKind::Tag::kSubmit, 6.42, 0.43, 0.9},      {EventKind::Tag::kUnload, 5.26, 0.00, 1.2},
    {EventKind::Tag::kKeydown, 4.21, 0.00, 0.2},     {EventKind::Tag::kFocus, 4.21, 0.43, 0.0},
    {EventKind::Tag::kKeypress, 2.11, 0.00, 5.5},    {EventKind::Tag::kFocusout, 1.05, 0.00, 0.0},
    {EventKind::Tag::kDblclick, 1.05, 0.00, 0.0},    {EventKind::Tag::kMouseup, 0.00, 0.86, 0.0},
};

enum class KindColumn { kDeferred, kNondeferred, kContributing };

EventKind pick_kind(Rng& rng, KindColumn column) {
  static const auto weights = [] {
    std::vector<std::vector<double>> w(3);
    for (const auto& k : kKinds) {
      w[0].push_back(k.deferred);
      w[1].push_back(k.nondeferred);
      w[2].push_back(k.contributing);
    }
    return w;
  }();
  return EventKind(kKinds[rng.weighted(weights[static_cast<int>(column)])].tag);
}

std::string event_key(const std::string& parent_key, const InteractionEvent& e) {
  return parent_key.empty() ? e.token() : parent_key + "/" + e.token();
}

}  // namespace

void RandomFixtureSpec::validate() const {
  if (depth < 0) throw DomainError("depth must be non-negative");
  if (max_states == 0) throw DomainError("max_states must be positive");
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw DomainError("overlap must lie in [0, 1]");
}

SiteFixture random_fixture(const RandomFixtureSpec& spec, std::uint64_t rng_seed, const std::string& seed_uri) {
  spec.validate();
  Rng rng(splitmix(rng_seed));
  SiteFixture fixture;
  fixture.seed = canonicalize(seed_uri);

  std::vector<std::string> used;  // raw URIs already requested in this fixture
  std::size_t minted = 0;
  const std::string host_tag = std::to_string(splitmix(rng_seed) % 100000);
  auto request = [&]() -> FixtureResource {
    if (!used.empty() && rng.chance(spec.overlap)) {
      const std::string& base = used[rng.below(used.size())];
      // Occasionally ask for the same resource under a different spelling.
      if (rng.chance(0.1)) {
        const bool has_query = base.find('?') != std::string::npos;
        return FixtureResource{base + (rng.chance(0.5) ? "#frag" : (has_query ? "&sid=" : "?sid=") + std::to_string(rng.below(1000))),
                               "image/png", 100 + rng.below(5000)};
      }
      return FixtureResource{base, "image/png", 100 + rng.below(5000)};
    }
    const auto& m = pick_mime(rng);
    std::string uri = "http://r" + std::to_string(minted % 7) + ".h" + host_tag + ".example.org/p/" +
                      std::to_string(minted) + "." + m.ext;
    ++minted;
    used.push_back(uri);
    return FixtureResource{uri, m.mime, 100 + rng.below(5000)};
  };
  auto fill = [&](FixtureState& s, std::size_t min_count) {
    const std::size_t n = std::max<std::size_t>(min_count, rng.below(spec.resources_per_state + 1));
    for (std::size_t i = 0; i < n; ++i) s.resources.push_back(request());
  };

  fixture.states[""] = FixtureState{};
  fill(fixture.states[""], 1);
  std::deque<std::pair<std::string, int>> queue{{"", 0}};
  std::size_t states = 1;
  while (!queue.empty()) {
    auto [key, level] = queue.front();
    queue.pop_front();
    if (level >= spec.depth) continue;
    const std::size_t n_events = spec.breadth ? rng.below(spec.breadth + 1) : 0;
    for (std::size_t j = 0; j < n_events && states < spec.max_states; ++j) {
      EventKind kind = rng.chance(0.05) ? EventKind::from_name("touchstart")
                                        : EventKind(EventKind::known_tags()[rng.below(EventKind::known_tags().size())]);
      InteractionEvent e{"el" + std::to_string(j), kind};
      const std::string child = event_key(key, e);
      fixture.states[key].events.push_back(e);
      FixtureState cs;
      fill(cs, 0);
      fixture.states.emplace(child, std::move(cs));
      queue.emplace_back(child, level + 1);
      ++states;
    }
  }
  return fixture;
}

std::vector<SiteFixture> random_corpus(const RandomFixtureSpec& spec, std::size_t count, std::uint64_t rng_seed) {
  std::vector<SiteFixture> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    char uri[64];
    std::snprintf(uri, sizeof uri, "http://seed%04zu.example.com/", i);
    out.push_back(random_fixture(spec, splitmix(rng_seed ^ (0x1000 + i)), uri));
  }
  return out;
}

const std::vector<PlantedResource>& planted_resources() {
  static const std::vector<PlantedResource> kPlanted = {
      {"http://ads.pubmatic.com/AdServer/js/showad.js?PIX&kdntuid=1&p=52041&s=undefined&a=undefined&it=0",
       "application/javascript", 1782},
      {"http://edge.quantserve.com/quant.js", "application/javascript", 1656},
      {"http://www.benzinga.com/ajax-cache/market-overview/index-update", "application/json", 1629},
      {"http://ads.pubmatic.com/AdServer/js/showad.js", "application/javascript", 1503},
      {"http://www.google-analytics.com/analytics.js", "application/javascript", 1330},
      {"http://b.scorecardresearch.com/beacon.js", "application/javascript", 1291},
      {"http://www.google-analytics.com/ga.js", "application/javascript", 1208},
      {"http://www.google.com/pagead/drt/ui", "text/html", 1151},
      {"http://js.moatads.com/advancedigital402839074273/moatad.js", "application/javascript", 1112},
      {"http://a.postrelease.com/serve/load.js?async=true", "application/javascript", 907},
  };
  return kPlanted;
}

GeneratedCorpus reference_corpus(std::uint64_t rng_seed) {
  const ReferenceCorpusTargets t;
  Rng rng(splitmix(rng_seed));
  const std::size_t n_seeds = t.deferred_seeds + t.nondeferred_seeds;

  std::vector<bool> is_deferred(n_seeds, false);
  std::fill(is_deferred.begin(), is_deferred.begin() + t.deferred_seeds, true);
  rng.shuffle(is_deferred);
  std::vector<std::size_t> deferred_idx, nondeferred_idx;
  for (std::size_t i = 0; i < n_seeds; ++i) (is_deferred[i] ? deferred_idx : nondeferred_idx).push_back(i);

  std::vector<SiteFixture> fixtures(n_seeds);
  for (std::size_t i = 0; i < n_seeds; ++i) {
    char uri[64];
    std::snprintf(uri, sizeof uri, "http://www.site%03zu.example.com/", i);
    fixtures[i].seed = canonicalize(uri);
    fixtures[i].states[""] = FixtureState{};
  }

  std::map<int, ResourceSet> frontier;
  auto note = [&](int level, const FixtureResource& r) {
    frontier[level].insert(ResourceRef{canonicalize(r.uri), r.mime, r.size});
  };
  std::size_t minted = 0;
  auto mint = [&](const std::string& host, const char* dir, std::uint64_t base_size) {
    const auto& m = pick_mime(rng);
    std::string uri = "http://" + host + "/" + dir + "/" + std::to_string(minted);
    uri += std::string(".") + m.ext;
    if (rng.chance(0.05)) uri += "?v=" + std::to_string(minted % 9) + "&sid=" + std::to_string(rng.below(100000));
    ++minted;
    return FixtureResource{uri, m.mime, base_size - 1000 + rng.below(2001)};
  };

  // Level 0: per-seed first-party resources plus a shared third-party pool.
  auto seed_r0 = [&](const std::vector<std::size_t>& idx, std::size_t own_total) {
    std::vector<double> w(idx.size());
    for (auto& x : w) x = rng.pareto(2.5);
    const auto counts = distribute(own_total, 1, std::vector<std::size_t>(idx.size(), own_total), w, rng);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      auto& root = fixtures[idx[k]].states[""];
      const std::string host = "cdn.site" + std::to_string(idx[k]) + ".example.com";
      for (std::size_t j = 0; j < counts[k]; ++j) {
        root.resources.push_back(mint(host, "assets", 2600));
        note(0, root.resources.back());
      }
    }
  };
  seed_r0(deferred_idx, t.deferred_r0_own);
  seed_r0(nondeferred_idx, t.nondeferred_r0_own);
  for (std::size_t j = 0; j < t.shared_r0; ++j) {
    const FixtureResource shared{"http://lib" + std::to_string(j % 20) + ".thirdparty.example.net/shared/" +
                                     std::to_string(j) + ".js",
                                 "application/javascript", 1600 + rng.below(2001)};
    note(0, shared);
    std::vector<std::size_t> owners{deferred_idx[rng.below(deferred_idx.size())],
                                    nondeferred_idx[rng.below(nondeferred_idx.size())]};
    for (std::size_t extra = rng.below(4); extra > 0; --extra) owners.push_back(rng.below(n_seeds));
    std::sort(owners.begin(), owners.end());
    owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
    for (auto o : owners) fixtures[o].states[""].resources.push_back(shared);
  }

  // Nondeferred: a few seeds have descendants, none of which add resources.
  {
    std::vector<std::size_t> sizes{13};
    sizes.insert(sizes.end(), 6, 10);
    sizes.insert(sizes.end(), 11, 9);
    std::vector<std::size_t> order = nondeferred_idx;
    rng.shuffle(order);
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      auto& f = fixtures[order[k]];
      for (std::size_t j = 0; j < sizes[k]; ++j) {
        InteractionEvent e{"el" + std::to_string(j), pick_kind(rng, KindColumn::kNondeferred)};
        f.states[""].events.push_back(e);
        f.states[e.token()] = FixtureState{};
      }
    }
  }

  // Deferred tree shapes.
  const std::size_t nd = deferred_idx.size();
  std::vector<double> w(nd);
  for (auto& x : w) x = rng.pareto(1.2);
  const auto l1 = distribute(t.deferred_level1, 1, std::vector<std::size_t>(nd, 256), w, rng);
  std::vector<std::size_t> caps(nd);
  for (std::size_t k = 0; k < nd; ++k) {
    caps[k] = l1[k] - 1;
    w[k] = static_cast<double>(l1[k] - 1);
  }
  auto c1 = distribute(t.contributing_level1 - nd, 0, caps, w, rng);
  for (auto& c : c1) ++c;

  std::vector<std::size_t> eligible;
  for (std::size_t k = 0; k < nd; ++k) {
    if (l1[k] > c1[k]) eligible.push_back(k);
  }
  rng.shuffle(eligible);
  eligible.resize(std::min<std::size_t>(eligible.size(), 142));
  std::sort(eligible.begin(), eligible.end());
  std::vector<std::size_t> deep_caps;
  std::vector<double> deep_w;
  for (auto k : eligible) {
    deep_caps.push_back((l1[k] - c1[k]) * 256);
    deep_w.push_back(rng.pareto(1.5));
  }
  const auto l2 = distribute(t.deferred_level2, 1, deep_caps, deep_w, rng);
  const auto c2 = distribute(t.contributing_level2, 1, l2, std::vector<double>(l2.begin(), l2.end()), rng);

  struct Contributing {
    std::size_t fixture;
    std::string key;
    int level;
  };
  std::vector<Contributing> contributing;

  for (std::size_t k = 0; k < nd; ++k) {
    auto& f = fixtures[deferred_idx[k]];
    std::vector<bool> contributes(l1[k], false);
    std::fill(contributes.begin() + 1, contributes.begin() + c1[k], true);
    std::shuffle(contributes.begin() + 1, contributes.end(), std::mt19937_64(rng.below(1ull << 62)));
    contributes[0] = true;
    std::vector<std::string> quiet;
    for (std::size_t j = 0; j < l1[k]; ++j) {
      InteractionEvent e{"el" + std::to_string(j),
                         pick_kind(rng, contributes[j] ? KindColumn::kContributing : KindColumn::kDeferred)};
      f.states[""].events.push_back(e);
      FixtureState s;
      if (rng.chance(0.3)) s.resources.push_back(f.states[""].resources[rng.below(f.states[""].resources.size())]);
      f.states[e.token()] = s;
      if (contributes[j]) {
        contributing.push_back({deferred_idx[k], e.token(), 1});
      } else {
        quiet.push_back(e.token());
      }
    }
    auto deep = std::lower_bound(eligible.begin(), eligible.end(), k);
    if (deep == eligible.end() || *deep != k) continue;
    const std::size_t d = static_cast<std::size_t>(deep - eligible.begin());
    std::vector<double> pw(quiet.size());
    for (auto& x : pw) x = rng.pareto(1.0);
    const auto per_parent = distribute(l2[d], 0, std::vector<std::size_t>(quiet.size(), 256), pw, rng);
    std::vector<bool> child_contributes(l2[d], false);
    std::fill(child_contributes.begin(), child_contributes.begin() + c2[d], true);
    rng.shuffle(child_contributes);
    std::size_t child = 0;
    for (std::size_t p = 0; p < quiet.size(); ++p) {
      for (std::size_t j = 0; j < per_parent[p]; ++j, ++child) {
        const bool contributes_here = child_contributes[child];
        InteractionEvent e{"el" + std::to_string(j),
                           pick_kind(rng, contributes_here ? KindColumn::kContributing : KindColumn::kDeferred)};
        f.states[quiet[p]].events.push_back(e);
        const std::string key = event_key(quiet[p], e);
        FixtureState s;
        if (rng.chance(0.3)) s.resources.push_back(f.states[""].resources[rng.below(f.states[""].resources.size())]);
        f.states[key] = s;
        if (contributes_here) contributing.push_back({deferred_idx[k], key, 2});
      }
    }
  }

  // Fresh resources, each required by exactly one contributing state.
  std::vector<std::size_t> level1_nodes, level2_nodes;
  for (std::size_t i = 0; i < contributing.size(); ++i) {
    (contributing[i].level == 1 ? level1_nodes : level2_nodes).push_back(i);
  }
  auto spread_fresh = [&](const std::vector<std::size_t>& nodes, std::size_t total, int level) {
    std::vector<double> fw(nodes.size());
    for (auto& x : fw) x = rng.pareto(1.3);
    const auto counts = distribute(total, 1, std::vector<std::size_t>(nodes.size(), total), fw, rng);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& c = contributing[nodes[i]];
      auto& s = fixtures[c.fixture].states[c.key];
      for (std::size_t j = 0; j < counts[i]; ++j) {
        const std::string host = "img" + std::to_string(minted % 37) + ".cdn.example.org";
        s.resources.push_back(mint(host, level == 1 ? "d1" : "d2", 2400));
        note(level, s.resources.back());
      }
    }
  };
  spread_fresh(level1_nodes, t.fresh_level1, 1);
  spread_fresh(level2_nodes, t.fresh_level2, 2);

  for (const auto& planted : planted_resources()) {
    const FixtureResource r{planted.uri, planted.mime, 1400 + rng.below(2001)};
    note(1, r);
    std::vector<std::size_t> pool(contributing.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    // One holder at level 1 fixes the resource's first level.
    const std::size_t first = level1_nodes[rng.below(level1_nodes.size())];
    std::swap(pool[first], pool.back());
    pool.pop_back();
    std::vector<std::size_t> holders{first};
    for (std::size_t j = 1; j < planted.occurrences; ++j) {
      const std::size_t pick = j - 1 + rng.below(pool.size() - (j - 1));
      std::swap(pool[j - 1], pool[pick]);
      holders.push_back(pool[j - 1]);
    }
    for (auto h : holders) {
      const auto& c = contributing[h];
      fixtures[c.fixture].states[c.key].resources.push_back(r);
    }
  }

  // Descendant levels only count resources not already seen at a shallower level.
  std::map<int, ResourceSet> disjoint;
  ResourceSet seen;
  for (const auto& [level, set] : frontier) {
    disjoint[level] = set_difference(set, seen);
    seen.insert_all(set);
  }

  GeneratedCorpus out;
  out.fixtures = std::move(fixtures);
  out.holdings = tune_mock_archive(disjoint, t.unarchived_fraction).to_holdings();
  return out;
}

void write_corpus(const std::filesystem::path& dir, const std::vector<SiteFixture>& fixtures,
                  const std::string& holdings) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw LoadError("cannot create fixture directory " + dir.string() + ": " + ec.message());
  std::string seeds;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%04zu.json", i);
    write_fixture_file(dir / name, fixtures[i]);
    seeds += fixtures[i].seed.raw() + "\n";
  }
  json_io::write_text(dir / "seeds.txt", seeds);
  if (!holdings.empty()) json_io::write_text(dir / "holdings.txt", holdings);
}

}  // namespace descend
