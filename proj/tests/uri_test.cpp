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
#include "descend/uri.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace descend {
namespace {

TEST(Canonicalize, TrimsFragment) {
  EXPECT_EQ(canonicalize("http://example.com/a.js#PIX&x=1").canonical(), "http://example.com/a.js");
  EXPECT_EQ(canonicalize("http://example.com/#").canonical(), "http://example.com/");
}

TEST(Canonicalize, LowercasesSchemeAndHostOnly) {
  EXPECT_EQ(canonicalize("HTTP://WWW.Example.COM/Path/File.JS").canonical(), "http://www.example.com/Path/File.JS");
}

TEST(Canonicalize, StripsSessionParameters) {
  const auto u = canonicalize(
      "http://ads.pubmatic.com/AdServer/js/showad.js?PIX&kdntuid=1&p=52041&s=undefined&a=undefined&it=0");
  EXPECT_EQ(u.canonical(), "http://ads.pubmatic.com/AdServer/js/showad.js?PIX&p=52041");
  EXPECT_EQ(canonicalize("http://x.org/?SID=7&SessionID=9").canonical(), "http://x.org/");
  EXPECT_EQ(canonicalize("http://x.org/p?q=1&sid=2&r=3").canonical(), "http://x.org/p?q=1&r=3");
}

TEST(Canonicalize, KeepsRawText) {
  const auto u = canonicalize("http://Example.com/a#b");
  EXPECT_EQ(u.raw(), "http://Example.com/a#b");
  EXPECT_EQ(u, canonicalize("http://example.com/a"));
}

TEST(Canonicalize, KeepsPortUserinfoAndIpv6) {
  EXPECT_EQ(canonicalize("http://User@Host:8080/x").canonical(), "http://User@host:8080/x");
  EXPECT_EQ(canonicalize("http://[2001:DB8::1]:80/").canonical(), "http://[2001:db8::1]:80/");
}

TEST(Canonicalize, RejectsMalformedInput) {
  for (const char* bad : {"", "example.com/a", "http:/x", "://x", "1http://x", "http://", "http://a b/",
                          "http://host:80x/", "http://[::1/", "http://@/x"}) {
    EXPECT_THROW(canonicalize(bad), UriParseError) << bad;
  }
}

TEST(Canonicalize, CustomSessionPatterns) {
  const SessionPatterns p({"utm_.*", "token"});
  EXPECT_EQ(canonicalize("http://x.org/?utm_source=a&UTM_medium=b&token=1&sid=2", p).canonical(),
            "http://x.org/?sid=2");
  EXPECT_TRUE(p.matches("TOKEN"));
  EXPECT_FALSE(p.matches("tokens"));
}

TEST(Canonicalize, HashAndOrderFollowCanonicalText) {
  const auto a = canonicalize("http://x.org/a#1");
  const auto b = canonicalize("http://X.org/a#2");
  EXPECT_EQ(std::hash<UriR>{}(a), std::hash<UriR>{}(b));
  EXPECT_FALSE(a < b);
  EXPECT_FALSE(b < a);
}

TEST(CanonicalizeProperty, IdempotentAndStripsFragmentsAndSessions) {
  gen::Rng rng(99);
  const std::set<std::string> session{"sessionid", "sid", "kdntuid", "s", "a", "it"};
  for (int i = 0; i < 2000; ++i) {
    const std::string raw = gen::fuzz_uri(rng);
    const UriR u = canonicalize(raw);
    const std::string& c = u.canonical();
    ASSERT_EQ(c.find('#'), std::string::npos) << raw;
    ASSERT_EQ(canonicalize(c).canonical(), c) << raw;
    std::vector<std::string> expected_keys;
    for (const auto& k : oracle::query_keys(raw)) {
      if (!session.count(oracle::lower(k))) expected_keys.push_back(k);
    }
    ASSERT_EQ(oracle::query_keys(c), expected_keys) << raw;
  }
}

}  // namespace
}  // namespace descend
