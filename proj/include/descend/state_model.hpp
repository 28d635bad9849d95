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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "descend/uri.hpp"

namespace descend {

// Client-side event types. Names outside the known list are kept verbatim
// as `other`.
class EventKind {
 public:
  enum class Tag {
    kClick,
    kMouseover,
    kMousedown,
    kBlur,
    kChange,
    kMouseout,
    kSubmit,
    kUnload,
    kKeydown,
    kFocus,
    kKeypress,
    kFocusout,
    kDblclick,
    kMouseup,
    kOther,
  };

  EventKind() = default;
  explicit EventKind(Tag tag);
  static EventKind from_name(std::string_view name);

  Tag tag() const { return tag_; }
  bool is_other() const { return tag_ == Tag::kOther; }
  // The event name: the canonical name for known kinds, the original text
  // for `other`.
  const std::string& name() const { return name_; }

  friend bool operator==(const EventKind& a, const EventKind& b) { return a.name_ == b.name_; }
  friend auto operator<=>(const EventKind& a, const EventKind& b) { return a.name_ <=> b.name_; }

  static const std::vector<Tag>& known_tags();
  static std::string_view tag_name(Tag tag);

 private:
  Tag tag_ = Tag::kClick;
  std::string name_ = "click";
};

struct InteractionEvent {
  std::string target;
  EventKind kind;

  // "target:kind"
  std::string token() const;
  static InteractionEvent from_token(std::string_view token);

  friend bool operator==(const InteractionEvent&, const InteractionEvent&) = default;
  friend auto operator<=>(const InteractionEvent&, const InteractionEvent&) = default;
};

struct InteractionScript {
  std::vector<InteractionEvent> events;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }

  InteractionScript extended(const InteractionEvent& e) const;
  InteractionScript parent() const;

  // "/"-joined event tokens; "" for the empty script.
  std::string key() const;
  static InteractionScript from_key(std::string_view key);

  friend bool operator==(const InteractionScript&, const InteractionScript&) = default;
};

bool scripts_equivalent(const InteractionScript& a, const InteractionScript& b);

// Keeps the first script of each equivalence class, in input order.
std::vector<InteractionScript> deduplicate_scripts(const std::vector<InteractionScript>& scripts);

struct ResourceRef {
  UriR uri;
  std::string mime;
  std::uint64_t size_bytes = 0;

  const std::string& key() const { return uri.canonical(); }
};

// Resources keyed by canonical URI. Inserting a key that is already present
// keeps the first-seen metadata. Iteration is in canonical-URI order.
class ResourceSet {
 public:
  using Map = std::map<std::string, ResourceRef, std::less<>>;
  using const_iterator = Map::const_iterator;

  ResourceSet() = default;
  ResourceSet(std::initializer_list<ResourceRef> refs);

  bool insert(ResourceRef ref);
  void insert_all(const ResourceSet& other);
  bool contains(std::string_view canonical) const { return members_.find(canonical) != members_.end(); }
  const ResourceRef* find(std::string_view canonical) const;

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }

  std::vector<std::string> keys() const;
  bool same_keys(const ResourceSet& other) const;
  bool subset_of(const ResourceSet& other) const;

 private:
  Map members_;
};

ResourceSet set_union(const ResourceSet& a, const ResourceSet& b);
// Members of `a` whose key is absent from `b`.
ResourceSet set_difference(const ResourceSet& a, const ResourceSet& b);
ResourceSet set_intersection(const ResourceSet& a, const ResourceSet& b);

// Members of `child` not already required by `parent`.
ResourceSet new_resources(const ResourceSet& parent, const ResourceSet& child);

struct ClientState {
  std::string id;
  int level = 0;
  InteractionScript script;
  ResourceSet resources;  // cumulative requests observed at this state
  std::string dom_digest;
  std::vector<InteractionEvent> available_events;
};

bool states_equivalent(const ClientState& a, const ClientState& b);

struct TreeEdge {
  std::string parent_id;
  InteractionEvent event;
  std::string child_id;
};

// Why a state was not expanded, or a crawl limit that truncated the tree.
struct CrawlNote {
  enum class Kind { kExplosionSkip, kUnreachable, kDepthLimit, kEventLimit, kStateLimit };
  Kind kind = Kind::kExplosionSkip;
  std::string state_id;
  std::string detail;

  static std::string_view kind_name(Kind kind);
  static Kind kind_from_name(std::string_view name);
  friend bool operator==(const CrawlNote&, const CrawlNote&) = default;
};

// Client-state tree rooted at s0. Nodes are kept in insertion order, which
// the crawler makes depth-first.
class StateTree {
 public:
  StateTree() = default;
  StateTree(UriR seed, ClientState root);

  const UriR& seed() const { return seed_; }
  const ClientState& root() const { return nodes_.front(); }
  const std::vector<ClientState>& nodes() const { return nodes_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  const std::vector<CrawlNote>& notes() const { return notes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  // Throws DomainError unless `child` extends the parent's script by `event`.
  const ClientState& add_child(std::string_view parent_id, const InteractionEvent& event,
                               ClientState child);
  void add_note(CrawlNote note) { notes_.push_back(std::move(note)); }

  const ClientState* find(std::string_view id) const;
  const ClientState* parent_of(std::string_view id) const;
  std::vector<const ClientState*> children_of(std::string_view id) const;
  std::optional<std::string> skip_reason(std::string_view id) const;
  int depth() const;

 private:
  UriR seed_;
  std::vector<ClientState> nodes_;
  std::vector<TreeEdge> edges_;
  std::vector<CrawlNote> notes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> parent_;  // child id -> parent node index
  std::unordered_map<std::string, std::vector<std::size_t>> children_;
};

// Structural audit: returns a description of every violated invariant,
// empty when the tree is well formed.
std::vector<std::string> audit_tree(const StateTree& tree);

struct StatePath {
  std::vector<ClientState> states;
  ResourceSet cumulative;
};

// Root-to-node path with its cumulative resource set. Throws LookupError for
// unknown ids.
StatePath path_to(const StateTree& tree, std::string_view id);

// Union of the resources of every state on the path.
ResourceSet path_resources(const StatePath& path);

}  // namespace descend
