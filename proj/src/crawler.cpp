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

#include "descend/crawler.hpp"

#include <functional>
#include <unordered_set>

#include "descend/digest.hpp"
#include "descend/errors.hpp"
#include "descend/json_io.hpp"

namespace descend {

using nlohmann::json;

void CrawlLimits::validate() const {
  if (max_depth <= 0 || max_events_per_state == 0 || max_states_per_seed == 0 ||
      explosion_threshold == 0) {
    throw DomainError("crawl limits must all be positive");
  }
}

SeedClassification classify(const UriR& seed, PageDriver& driver) {
  PageHandle root = driver.load(seed);
  for (const auto& e : driver.enumerate_events(root)) {
    ExecuteResult step;
    try {
      step = driver.execute(root, InteractionScript{}.extended(e));
    } catch (const UnreachableStateError&) {
      continue;
    }
    if (!new_resources(root.observed_requests, step.cumulative).empty()) {
      return SeedClassification{true, e};
    }
  }
  return SeedClassification{};
}

SeedClassification classify(const StateTree& tree) {
  const auto& root = tree.root();
  for (const auto* child : tree.children_of(root.id)) {
    if (!new_resources(root.resources, child->resources).empty()) {
      return SeedClassification{true, child->script.events.back()};
    }
  }
  return SeedClassification{};
}

StateTree build_tree(const UriR& seed, PageDriver& driver, const CrawlLimits& limits) {
  limits.validate();
  std::size_t next_id = 0;
  auto make_state = [&](const PageHandle& h) {
    ClientState s;
    s.id = "n" + std::to_string(next_id++);
    s.level = static_cast<int>(h.current_script.size());
    s.script = h.current_script;
    s.resources = h.observed_requests;
    s.dom_digest = sha256_hex(h.rendered_markup);
    s.available_events = driver.enumerate_events(h);
    return s;
  };

  const PageHandle root_handle = driver.load(seed);
  StateTree tree(root_handle.seed, make_state(root_handle));
  std::unordered_set<std::string> visited{""};
  bool state_cap_hit = false;

  std::function<void(std::string)> expand = [&](std::string id) {
    // Copies: add_child may reallocate the node storage.
    const ClientState node = *tree.find(id);
    std::vector<InteractionEvent> events = node.available_events;
    if (events.empty()) return;
    if (events.size() > limits.explosion_threshold) {
      tree.add_note({CrawlNote::Kind::kExplosionSkip, id,
                     "interaction frontier of " + std::to_string(events.size()) +
                         " candidate events exceeds the explosion threshold of " +
                         std::to_string(limits.explosion_threshold)});
      return;
    }
    if (node.level >= limits.max_depth) {
      tree.add_note({CrawlNote::Kind::kDepthLimit, id,
                     std::to_string(events.size()) + " events not expanded at max depth " +
                         std::to_string(limits.max_depth)});
      return;
    }
    if (events.size() > limits.max_events_per_state) {
      tree.add_note({CrawlNote::Kind::kEventLimit, id,
                     "expanded " + std::to_string(limits.max_events_per_state) + " of " +
                         std::to_string(events.size()) + " events"});
      events.resize(limits.max_events_per_state);
    }
    for (const auto& e : events) {
      if (state_cap_hit) return;
      InteractionScript script = node.script.extended(e);
      if (!visited.insert(script.key()).second) continue;
      if (tree.size() >= limits.max_states_per_seed) {
        tree.add_note({CrawlNote::Kind::kStateLimit, id,
                       "state limit of " + std::to_string(limits.max_states_per_seed) +
                           " reached before " + script.key()});
        state_cap_hit = true;
        return;
      }
      ExecuteResult step;
      try {
        step = driver.execute(root_handle, script);
      } catch (const UnreachableStateError& err) {
        tree.add_note({CrawlNote::Kind::kUnreachable, id, err.what()});
        continue;
      }
      const std::string child_id = tree.add_child(id, e, make_state(step.handle)).id;
      expand(child_id);
    }
  };
  expand(tree.root().id);
  return tree;
}

std::size_t interaction_frontier_size(const ClientState& state) {
  return state.available_events.size();
}

json tree_to_json(const StateTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes()) {
    json node;
    node["id"] = n.id;
    node["level"] = n.level;
    const auto* parent = tree.parent_of(n.id);
    node["parent"] = parent ? json(parent->id) : json(nullptr);
    node["event"] = n.script.empty() ? json(nullptr) : json(n.script.events.back().token());
    node["script"] = n.script.key();
    node["resources"] = json_io::resources_to_json(n.resources);
    node["dom_digest"] = n.dom_digest;
    node["events"] = json_io::events_to_json(n.available_events);
    auto skip = tree.skip_reason(n.id);
    node["skip_reason"] = skip ? json(*skip) : json(nullptr);
    nodes.push_back(std::move(node));
  }
  json notes = json::array();
  for (const auto& note : tree.notes()) {
    notes.push_back({{"kind", CrawlNote::kind_name(note.kind)},
                     {"state", note.state_id},
                     {"detail", note.detail}});
  }
  return json{{"seed", json_io::uri_to_json(tree.seed())}, {"nodes", nodes}, {"notes", notes}};
}

StateTree tree_from_json(const json& j) {
  try {
    const auto& nodes = j.at("nodes");
    if (!nodes.is_array() || nodes.empty()) throw FormatError("tree has no nodes");
    auto read_state = [](const json& n) {
      ClientState s;
      s.id = n.at("id").get<std::string>();
      s.level = n.at("level").get<int>();
      s.script = InteractionScript::from_key(n.at("script").get<std::string>());
      s.resources = json_io::resources_from_json(n.at("resources"));
      s.dom_digest = n.at("dom_digest").get<std::string>();
      s.available_events = json_io::events_from_json(n.at("events"));
      return s;
    };
    StateTree tree(json_io::uri_from_json(j.at("seed")), read_state(nodes.front()));
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      auto event = InteractionEvent::from_token(n.at("event").get<std::string>());
      tree.add_child(n.at("parent").get<std::string>(), event, read_state(n));
    }
    for (const auto& note : j.at("notes")) {
      tree.add_note({CrawlNote::kind_from_name(note.at("kind").get<std::string>()),
                     note.at("state").get<std::string>(), note.at("detail").get<std::string>()});
    }
    return tree;
  } catch (const json::exception& e) {
    throw FormatError(std::string("tree dump: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("tree dump: ") + e.what());
  }
}

json classification_to_json(const SeedClassification& c) {
  return json{{"deferred", c.deferred},
              {"trigger", c.trigger_event ? json(c.trigger_event->token()) : json(nullptr)}};
}

SeedClassification classification_from_json(const json& j) {
  SeedClassification c;
  c.deferred = j.at("deferred").get<bool>();
  if (!j.at("trigger").is_null()) {
    c.trigger_event = InteractionEvent::from_token(j.at("trigger").get<std::string>());
  }
  return c;
}

json crawl_result_to_json(const CrawlResult& result) {
  return json{{"classification", classification_to_json(result.classification)},
              {"tree", tree_to_json(result.tree)}};
}

CrawlResult crawl_result_from_json(const json& j) {
  return CrawlResult{classification_from_json(j.at("classification")), tree_from_json(j.at("tree"))};
}

}  // namespace descend
