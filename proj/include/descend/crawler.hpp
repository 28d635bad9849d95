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
#include <optional>
#include <string>

#include <json.hpp>

#include "descend/page_driver.hpp"
#include "descend/state_model.hpp"

namespace descend {

struct CrawlLimits {
  int max_depth = 3;
  std::size_t max_events_per_state = 256;
  std::size_t max_states_per_seed = 10000;
  // States exposing more candidate events than this are recorded as skipped
  // and not expanded (pixel-grid overlays and the like).
  std::size_t explosion_threshold = 10000;

  // Throws DomainError unless every limit is positive.
  void validate() const;
};

struct SeedClassification {
  bool deferred = false;
  std::optional<InteractionEvent> trigger_event;

  friend bool operator==(const SeedClassification&, const SeedClassification&) = default;
};

// Deferred iff one event from s0 triggers a request s0 did not make. The
// trigger is the first such event in enumeration order.
SeedClassification classify(const UriR& seed, PageDriver& driver);
// Same rule, read off the level-1 states of an already built tree.
SeedClassification classify(const StateTree& tree);

// Depth-first exhaustive extension of interaction scripts, one event at a
// time, in enumeration order. A script is executed at most once per crawl.
// Guard firings and limit breaches are recorded as tree notes.
StateTree build_tree(const UriR& seed, PageDriver& driver, const CrawlLimits& limits = {});

std::size_t interaction_frontier_size(const ClientState& state);

struct CrawlResult {
  SeedClassification classification;
  StateTree tree;
};

nlohmann::json tree_to_json(const StateTree& tree);
StateTree tree_from_json(const nlohmann::json& j);

nlohmann::json crawl_result_to_json(const CrawlResult& result);
CrawlResult crawl_result_from_json(const nlohmann::json& j);

nlohmann::json classification_to_json(const SeedClassification& c);
SeedClassification classification_from_json(const nlohmann::json& j);

}  // namespace descend
