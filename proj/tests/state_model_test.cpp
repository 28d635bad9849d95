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

#include <set>

#include "descend/errors.hpp"
#include "descend/state_model.hpp"
#include "generators.hpp"

namespace descend {
namespace {

ResourceRef ref(const std::string& uri, const std::string& mime = "image/png", std::uint64_t size = 10) {
  return ResourceRef{canonicalize(uri), mime, size};
}

InteractionEvent ev(const std::string& target, const std::string& kind = "click") {
  return InteractionEvent{target, EventKind::from_name(kind)};
}

TEST(EventKind, KnownNamesMapToTags) {
  EXPECT_EQ(EventKind::from_name("mouseover").tag(), EventKind::Tag::kMouseover);
  EXPECT_EQ(EventKind::from_name("mouseup").tag(), EventKind::Tag::kMouseup);
  EXPECT_EQ(EventKind::known_tags().size(), 14u);
  for (auto tag : EventKind::known_tags()) {
    EXPECT_EQ(EventKind::from_name(EventKind::tag_name(tag)).tag(), tag);
  }
}

TEST(EventKind, UnknownNamesBecomeOther) {
  const auto k = EventKind::from_name("touchstart");
  EXPECT_TRUE(k.is_other());
  EXPECT_EQ(k.name(), "touchstart");
  EXPECT_NE(k, EventKind::from_name("touchend"));
  EXPECT_THROW(EventKind::from_name(""), FormatError);
}

TEST(InteractionEvent, TokenRoundTrip) {
  const auto e = ev("nav:item", "mouseover");
  EXPECT_EQ(e.token(), "nav:item:mouseover");
  EXPECT_EQ(InteractionEvent::from_token(e.token()), e);
  EXPECT_THROW(InteractionEvent::from_token("noseparator"), FormatError);
  EXPECT_THROW(InteractionEvent::from_token(":click"), FormatError);
  EXPECT_THROW(InteractionEvent::from_token("a/b:click"), FormatError);
}

TEST(InteractionScript, KeyRoundTripAndParent) {
  InteractionScript s;
  EXPECT_EQ(s.key(), "");
  EXPECT_TRUE(InteractionScript::from_key("").empty());
  s = s.extended(ev("A")).extended(ev("B", "blur"));
  EXPECT_EQ(s.key(), "A:click/B:blur");
  EXPECT_EQ(InteractionScript::from_key(s.key()), s);
  EXPECT_EQ(s.parent().key(), "A:click");
  EXPECT_TRUE(InteractionScript{}.parent().empty());
}

TEST(InteractionScript, EquivalenceRequiresSameOrder) {
  const auto ab = InteractionScript{}.extended(ev("A")).extended(ev("B"));
  const auto ba = InteractionScript{}.extended(ev("B")).extended(ev("A"));
  EXPECT_TRUE(scripts_equivalent(ab, ab));
  EXPECT_FALSE(scripts_equivalent(ab, ba));
  const auto deduped = deduplicate_scripts({ab, ba, ab, InteractionScript{}, ba});
  ASSERT_EQ(deduped.size(), 3u);
  EXPECT_EQ(deduped[0], ab);
  EXPECT_EQ(deduped[1], ba);
  EXPECT_TRUE(deduped[2].empty());
}

TEST(ResourceSet, IdentityIsCanonicalUriAndFirstMetadataWins) {
  ResourceSet s;
  EXPECT_TRUE(s.insert(ref("http://x.org/a.png#one", "image/png", 5)));
  EXPECT_FALSE(s.insert(ref("HTTP://X.ORG/a.png?sid=3", "image/gif", 9)));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.find("http://x.org/a.png")->mime, "image/png");
  EXPECT_EQ(s.find("http://x.org/a.png")->size_bytes, 5u);
}

TEST(ResourceSet, NewResourcesIsChildMinusParent) {
  const ResourceSet parent{ref("http://x.org/1"), ref("http://x.org/2")};
  const ResourceSet child{ref("http://x.org/2"), ref("http://x.org/3")};
  EXPECT_EQ(new_resources(parent, child).keys(), std::vector<std::string>{"http://x.org/3"});
  EXPECT_TRUE(new_resources(child, child).empty());
}

TEST(ResourceSetProperty, AlgebraMatchesStdSet) {
  gen::Rng rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    ResourceSet a, b;
    std::set<std::string> sa, sb;
    for (int i = 0, n = static_cast<int>(rng.below(20)); i < n; ++i) {
      const std::string u = "http://h.org/" + std::to_string(rng.below(25));
      a.insert(ref(u));
      sa.insert(u);
    }
    for (int i = 0, n = static_cast<int>(rng.below(20)); i < n; ++i) {
      const std::string u = "http://h.org/" + std::to_string(rng.below(25));
      b.insert(ref(u));
      sb.insert(u);
    }
    std::set<std::string> u, d, x;
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(u, u.end()));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(d, d.end()));
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(x, x.end()));
    auto keys = [](const ResourceSet& s) {
      auto k = s.keys();
      return std::set<std::string>(k.begin(), k.end());
    };
    ASSERT_EQ(keys(set_union(a, b)), u);
    ASSERT_EQ(keys(set_difference(a, b)), d);
    ASSERT_EQ(keys(set_intersection(a, b)), x);
    ASSERT_EQ(a.subset_of(b), std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
    ASSERT_EQ(a.same_keys(b), sa == sb);
    // Union with the difference restores the set.
    ASSERT_TRUE(set_union(set_difference(a, b), set_intersection(a, b)).same_keys(a));
  }
}

ClientState state(const std::string& id, const InteractionScript& script, ResourceSet r = {}) {
  ClientState s;
  s.id = id;
  s.level = static_cast<int>(script.size());
  s.script = script;
  s.resources = std::move(r);
  return s;
}

StateTree small_tree() {
  const InteractionScript a = InteractionScript{}.extended(ev("A"));
  const InteractionScript ab = a.extended(ev("B"));
  StateTree t(canonicalize("http://seed.org/"), state("n0", {}, {ref("http://r/0")}));
  t.add_child("n0", ev("A"), state("n1", a, {ref("http://r/0"), ref("http://r/1")}));
  t.add_child("n1", ev("B"), state("n2", ab, {ref("http://r/0"), ref("http://r/1"), ref("http://r/2")}));
  t.add_child("n0", ev("C"), state("n3", InteractionScript{}.extended(ev("C")), {ref("http://r/0")}));
  return t;
}

TEST(StatesEquivalent, ComparesResourceSetsOnly) {
  const auto t = small_tree();
  EXPECT_TRUE(states_equivalent(*t.find("n0"), *t.find("n3")));
  EXPECT_FALSE(states_equivalent(*t.find("n0"), *t.find("n1")));
}

TEST(StateTree, NavigationAndDepth) {
  const auto t = small_tree();
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.parent_of("n2")->id, "n1");
  EXPECT_EQ(t.parent_of("n0"), nullptr);
  ASSERT_EQ(t.children_of("n0").size(), 2u);
  EXPECT_EQ(t.children_of("n0")[1]->id, "n3");
  EXPECT_TRUE(t.children_of("n2").empty());
  EXPECT_TRUE(audit_tree(t).empty());
}

TEST(StateTree, RejectsInconsistentChildren) {
  auto t = small_tree();
  const InteractionScript wrong = InteractionScript{}.extended(ev("Z"));
  EXPECT_THROW(t.add_child("n0", ev("A"), state("n9", wrong)), DomainError);
  EXPECT_THROW(t.add_child("nope", ev("Z"), state("n9", wrong)), DomainError);
  EXPECT_THROW(t.add_child("n0", ev("Z"), state("n1", wrong)), DomainError);
}

TEST(StateTree, SkipReasonComesFromExplosionNotes) {
  auto t = small_tree();
  EXPECT_FALSE(t.skip_reason("n1"));
  t.add_note({CrawlNote::Kind::kDepthLimit, "n1", "depth"});
  EXPECT_FALSE(t.skip_reason("n1"));
  t.add_note({CrawlNote::Kind::kExplosionSkip, "n1", "too many events"});
  EXPECT_EQ(t.skip_reason("n1"), "too many events");
}

TEST(CrawlNote, KindNamesRoundTrip) {
  for (auto k : {CrawlNote::Kind::kExplosionSkip, CrawlNote::Kind::kUnreachable, CrawlNote::Kind::kDepthLimit,
                 CrawlNote::Kind::kEventLimit, CrawlNote::Kind::kStateLimit}) {
    EXPECT_EQ(CrawlNote::kind_from_name(CrawlNote::kind_name(k)), k);
  }
}

TEST(PathTo, CumulativeResourcesAlongRootPath) {
  const auto t = small_tree();
  const auto p = path_to(t, "n2");
  ASSERT_EQ(p.states.size(), 3u);
  EXPECT_EQ(p.states.front().id, "n0");
  EXPECT_EQ(p.cumulative.size(), 3u);
  EXPECT_EQ(path_resources(path_to(t, "n0")).size(), 1u);
  EXPECT_THROW(path_to(t, "n7"), LookupError);
}

TEST(AuditTree, EmptyTreeHasNoRoot) { EXPECT_FALSE(audit_tree(StateTree{}).empty()); }

}  // namespace
}  // namespace descend
