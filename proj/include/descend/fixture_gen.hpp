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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "descend/fixture.hpp"

namespace descend {

struct RandomFixtureSpec {
  std::size_t breadth = 3;              // max events per state
  int depth = 2;                        // deepest level that gets states
  double overlap = 0.3;                 // chance a request reuses an earlier URI of the fixture
  std::size_t resources_per_state = 4;  // max requests per state
  std::size_t max_states = 200;

  // Throws DomainError for out-of-range parameters.
  void validate() const;
};

// Deterministic for a given (spec, rng_seed, seed_uri).
SiteFixture random_fixture(const RandomFixtureSpec& spec, std::uint64_t rng_seed,
                           const std::string& seed_uri = "http://seed.example.com/");

std::vector<SiteFixture> random_corpus(const RandomFixtureSpec& spec, std::size_t count,
                                       std::uint64_t rng_seed);

// Targets the reference preset reproduces exactly.
struct ReferenceCorpusTargets {
  std::size_t deferred_seeds = 303;
  std::size_t nondeferred_seeds = 137;
  std::size_t deferred_level1 = 6051;
  std::size_t deferred_level2 = 2468;
  std::size_t nondeferred_level1 = 172;
  std::size_t contributing_level1 = 1580;
  std::size_t contributing_level2 = 500;
  std::size_t deferred_r0_own = 7592;
  std::size_t nondeferred_r0_own = 4250;
  std::size_t shared_r0 = 100;
  std::size_t fresh_level1 = 45005;
  std::size_t fresh_level2 = 9363;
  std::map<int, double> unarchived_fraction{{0, 0.12}, {1, 0.92}, {2, 0.96}};
};

struct PlantedResource {
  std::string uri;
  std::string mime;
  std::size_t occurrences = 0;
};

// The ten most frequent descendant resources of the reference crawl and how
// many states each is newly required by.
const std::vector<PlantedResource>& planted_resources();

struct GeneratedCorpus {
  std::vector<SiteFixture> fixtures;
  std::string holdings;  // MockArchive holdings tuned to the target fractions
};

GeneratedCorpus reference_corpus(std::uint64_t rng_seed = 2015);

// Writes NNNN.json fixtures, seeds.txt and (when non-empty) holdings.txt.
void write_corpus(const std::filesystem::path& dir, const std::vector<SiteFixture>& fixtures,
                  const std::string& holdings = {});

}  // namespace descend
