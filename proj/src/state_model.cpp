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

#include "descend/state_model.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "descend/errors.hpp"

namespace descend {
namespace {

constexpr std::array<std::pair<EventKind::Tag, std::string_view>, 14> kKnownKinds{{
    {EventKind::Tag::kClick, "click"},
    {EventKind::Tag::kMouseover, "mouseover"},
    {EventKind::Tag::kMousedown, "mousedown"},
    {EventKind::Tag::kBlur, "blur"},
    {EventKind::Tag::kChange, "change"},
    {EventKind::Tag::kMouseout, "mouseout"},
    {EventKind::Tag::kSubmit, "submit"},
    {EventKind::Tag::kUnload, "unload"},
    {EventKind::Tag::kKeydown, "keydown"},
    {EventKind::Tag::kFocus, "focus"},
    {EventKind::Tag::kKeypress, "keypress"},
    {EventKind::Tag::kFocusout, "focusout"},
    {EventKind::Tag::kDblclick, "dblclick"},
    {EventKind::Tag::kMouseup, "mouseup"},
}};

}  // namespace

EventKind::EventKind(Tag tag) : tag_(tag), name_(tag_name(tag)) {}

EventKind EventKind::from_name(std::string_view name) {
  if (name.empty()) throw FormatError("empty event kind");
  for (const auto& [tag, known] : kKnownKinds) {
    if (known == name) return EventKind(tag);
  }
  EventKind kind;
  kind.tag_ = Tag::kOther;
  kind.name_ = std::string(name);
  return kind;
}

const std::vector<EventKind::Tag>& EventKind::known_tags() {
  static const std::vector<Tag> tags = [] {
    std::vector<Tag> out;
    for (const auto& entry : kKnownKinds) out.push_back(entry.first);
    return out;
  }();
  return tags;
}

std::string_view EventKind::tag_name(Tag tag) {
  for (const auto& [t, name] : kKnownKinds) {
    if (t == tag) return name;
  }
  return "other";
}

std::string InteractionEvent::token() const { return target + ":" + kind.name(); }

InteractionEvent InteractionEvent::from_token(std::string_view token) {
  const auto colon = token.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == token.size()) {
    throw FormatError("event token '" + std::string(token) + "' is not 'target:kind'");
  }
  auto target = token.substr(0, colon);
  if (target.find('/') != std::string_view::npos) {
    throw FormatError("event target '" + std::string(target) + "' contains '/'");
  }
  return InteractionEvent{std::string(target), EventKind::from_name(token.substr(colon + 1))};
}

InteractionScript InteractionScript::extended(const InteractionEvent& e) const {
  InteractionScript out = *this;
  out.events.push_back(e);
  return out;
}

InteractionScript InteractionScript::parent() const {
  InteractionScript out = *this;
  if (!out.events.empty()) out.events.pop_back();
  return out;
}

std::string InteractionScript::key() const {
  std::string out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i) out += '/';
    out += events[i].token();
  }
  return out;
}

InteractionScript InteractionScript::from_key(std::string_view key) {
  InteractionScript script;
  if (key.empty()) return script;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    auto slash = std::min(key.find('/', pos), key.size());
    script.events.push_back(InteractionEvent::from_token(key.substr(pos, slash - pos)));
    pos = slash + 1;
  }
  return script;
}

bool scripts_equivalent(const InteractionScript& a, const InteractionScript& b) {
  return a.events == b.events;
}

std::vector<InteractionScript> deduplicate_scripts(const std::vector<InteractionScript>& scripts) {
  std::vector<InteractionScript> out;
  std::set<std::string> seen;
  for (const auto& s : scripts) {
    if (seen.insert(s.key()).second) out.push_back(s);
  }
  return out;
}

ResourceSet::ResourceSet(std::initializer_list<ResourceRef> refs) {
  for (const auto& r : refs) insert(r);
}

bool ResourceSet::insert(ResourceRef ref) {
  std::string key = ref.key();
  return members_.emplace(std::move(key), std::move(ref)).second;
}

void ResourceSet::insert_all(const ResourceSet& other) {
  for (const auto& [key, ref] : other) members_.emplace(key, ref);
}

const ResourceRef* ResourceSet::find(std::string_view canonical) const {
  auto it = members_.find(canonical);
  return it == members_.end() ? nullptr : &it->second;
}

std::vector<std::string> ResourceSet::keys() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const auto& [key, ref] : members_) out.push_back(key);
  return out;
}

bool ResourceSet::same_keys(const ResourceSet& other) const {
  return members_.size() == other.members_.size() &&
         std::equal(members_.begin(), members_.end(), other.members_.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; });
}

bool ResourceSet::subset_of(const ResourceSet& other) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](const auto& kv) { return other.contains(kv.first); });
}

ResourceSet set_union(const ResourceSet& a, const ResourceSet& b) {
  ResourceSet out = a;
  out.insert_all(b);
  return out;
}

ResourceSet set_difference(const ResourceSet& a, const ResourceSet& b) {
  ResourceSet out;
  for (const auto& [key, ref] : a) {
    if (!b.contains(key)) out.insert(ref);
  }
  return out;
}

ResourceSet set_intersection(const ResourceSet& a, const ResourceSet& b) {
  ResourceSet out;
  for (const auto& [key, ref] : a) {
    if (b.contains(key)) out.insert(ref);
  }
  return out;
}

ResourceSet new_resources(const ResourceSet& parent, const ResourceSet& child) {
  return set_difference(child, parent);
}

bool states_equivalent(const ClientState& a, const ClientState& b) {
  return a.resources.same_keys(b.resources);
}

std::string_view CrawlNote::kind_name(Kind kind) {
  switch (kind) {
    case Kind::kExplosionSkip: return "explosion_skip";
    case Kind::kUnreachable: return "unreachable";
    case Kind::kDepthLimit: return "depth_limit";
    case Kind::kEventLimit: return "event_limit";
    case Kind::kStateLimit: return "state_limit";
  }
  return "unknown";
}

CrawlNote::Kind CrawlNote::kind_from_name(std::string_view name) {
  for (auto k : {Kind::kExplosionSkip, Kind::kUnreachable, Kind::kDepthLimit, Kind::kEventLimit,
                 Kind::kStateLimit}) {
    if (kind_name(k) == name) return k;
  }
  throw FormatError("unknown crawl note kind '" + std::string(name) + "'");
}

StateTree::StateTree(UriR seed, ClientState root) : seed_(std::move(seed)) {
  if (root.level != 0 || !root.script.empty()) {
    throw DomainError("tree root must be level 0 with an empty script");
  }
  index_.emplace(root.id, 0);
  nodes_.push_back(std::move(root));
}

const ClientState& StateTree::add_child(std::string_view parent_id, const InteractionEvent& event,
                                        ClientState child) {
  auto pit = index_.find(std::string(parent_id));
  if (pit == index_.end()) throw DomainError("unknown parent '" + std::string(parent_id) + "'");
  const std::size_t parent_index = pit->second;
  const ClientState& parent = nodes_[parent_index];
  if (child.script != parent.script.extended(event) || child.level != parent.level + 1) {
    throw DomainError("state '" + child.id + "' does not extend '" + parent.id + "' by " +
                      event.token());
  }
  if (index_.count(child.id)) throw DomainError("duplicate state id '" + child.id + "'");
  edges_.push_back(TreeEdge{parent.id, event, child.id});
  index_.emplace(child.id, nodes_.size());
  parent_.emplace(child.id, parent_index);
  children_[parent.id].push_back(nodes_.size());
  nodes_.push_back(std::move(child));
  return nodes_.back();
}

const ClientState* StateTree::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

const ClientState* StateTree::parent_of(std::string_view id) const {
  auto it = parent_.find(std::string(id));
  return it == parent_.end() ? nullptr : &nodes_[it->second];
}

std::vector<const ClientState*> StateTree::children_of(std::string_view id) const {
  std::vector<const ClientState*> out;
  auto it = children_.find(std::string(id));
  if (it == children_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&nodes_[i]);
  return out;
}

std::optional<std::string> StateTree::skip_reason(std::string_view id) const {
  for (const auto& n : notes_) {
    if (n.state_id == id && n.kind == CrawlNote::Kind::kExplosionSkip) return n.detail;
  }
  return std::nullopt;
}

int StateTree::depth() const {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.level);
  return d;
}

std::vector<std::string> audit_tree(const StateTree& tree) {
  std::vector<std::string> problems;
  if (tree.empty()) {
    problems.emplace_back("tree has no root");
    return problems;
  }
  const auto& root = tree.root();
  if (root.level != 0 || !root.script.empty()) problems.push_back("root is not an empty-script level-0 state");

  std::map<std::string, int> incoming;
  for (const auto& e : tree.edges()) {
    ++incoming[e.child_id];
    const auto* parent = tree.find(e.parent_id);
    const auto* child = tree.find(e.child_id);
    if (!parent || !child) {
      problems.push_back("edge references unknown state " + e.parent_id + " -> " + e.child_id);
      continue;
    }
    if (child->script != parent->script.extended(e.event)) {
      problems.push_back("state " + child->id + " script is not parent script + " + e.event.token());
    }
  }
  std::set<std::string> scripts;
  for (const auto& n : tree.nodes()) {
    if (n.level != static_cast<int>(n.script.size())) {
      problems.push_back("state " + n.id + " level differs from script length");
    }
    if (&n != &root && incoming[n.id] != 1) {
      problems.push_back("state " + n.id + " has " + std::to_string(incoming[n.id]) + " parents");
    }
    if (!scripts.insert(n.script.key()).second) {
      problems.push_back("script '" + n.script.key() + "' appears more than once");
    }
  }
  if (incoming.count(root.id)) problems.push_back("root has a parent");
  return problems;
}

StatePath path_to(const StateTree& tree, std::string_view id) {
  const ClientState* node = tree.find(id);
  if (!node) throw LookupError("state '" + std::string(id) + "' is not in the tree");
  StatePath path;
  for (; node; node = tree.parent_of(node->id)) path.states.push_back(*node);
  std::reverse(path.states.begin(), path.states.end());
  path.cumulative = path_resources(path);
  return path;
}

ResourceSet path_resources(const StatePath& path) {
  ResourceSet out;
  for (const auto& s : path.states) out.insert_all(s.resources);
  return out;
}

}  // namespace descend
