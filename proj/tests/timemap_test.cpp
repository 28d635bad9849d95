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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "descend/errors.hpp"
#include "descend/timemap.hpp"
#include "test_support.hpp"

namespace descend {
namespace {

using namespace std::chrono;

const UriR kOriginal = canonicalize("http://example.com/");

struct Expectation {
  std::string file;
  bool error = false;
  std::size_t mementos = 0;
  std::size_t warnings = 0;
  std::size_t offset = 0;
};

std::vector<Expectation> load_expectations() {
  std::ifstream in(testing_support::data_dir() / "timemaps" / "expected.tsv");
  std::vector<Expectation> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    Expectation e;
    std::string kind;
    fields >> e.file >> kind;
    e.error = kind == "error";
    if (e.error) {
      fields >> e.offset;
    } else {
      fields >> e.mementos >> e.warnings;
    }
    out.push_back(e);
  }
  return out;
}

TEST(TimeMapFixtures, AllMatchExpectations) {
  const auto expectations = load_expectations();
  ASSERT_EQ(expectations.size(), 50u);
  for (const auto& e : expectations) {
    SCOPED_TRACE(e.file);
    const std::string body = testing_support::slurp(testing_support::data_dir() / "timemaps" / e.file);
    if (e.error) {
      try {
        parse_timemap(body, kOriginal);
        ADD_FAILURE() << "expected a parse error";
      } catch (const TimeMapParseError& err) {
        EXPECT_EQ(err.offset(), e.offset);
      }
    } else {
      const auto parsed = parse_timemap(body, kOriginal);
      EXPECT_EQ(parsed.timemap.mementos.size(), e.mementos);
      EXPECT_EQ(parsed.warnings.size(), e.warnings);
    }
  }
}

TEST(TimeMap, MementoFieldsAndOrder) {
  const auto parsed = parse_timemap(
      "<http://example.com/>; rel=\"original\",\n"
      "<http://a.org/2>; rel=\"last memento\"; datetime=\"Wed, 21 Jan 2015 11:30:00 GMT\",\n"
      "<http://a.org/1>; rel=\"first memento\"; datetime=\"Tue, 20 Jan 2015 10:00:00 GMT\"\n",
      kOriginal);
  ASSERT_EQ(parsed.timemap.mementos.size(), 2u);
  EXPECT_EQ(parsed.timemap.mementos[0].uri, "http://a.org/2");
  EXPECT_EQ(parsed.timemap.mementos[1].datetime, sys_days{2015y / January / 20} + 10h);
  EXPECT_EQ(parsed.timemap.original, kOriginal);
}

TEST(TimeMap, WarningOffsetPointsAtLink) {
  const std::string head = "<http://example.com/>; rel=\"original\",\n";
  const auto parsed = parse_timemap(head + "<http://a.org/1>; rel=\"memento\"\n", kOriginal);
  ASSERT_EQ(parsed.warnings.size(), 1u);
  EXPECT_EQ(parsed.warnings[0].offset, head.size());
}

TEST(TimeMap, SerializeRoundTrip) {
  TimeMap tm{kOriginal, {}};
  for (int i = 0; i < 4; ++i) {
    tm.mementos.push_back({"http://a.org/" + std::to_string(i), sys_days{2015y / March / 1} + hours{i}});
  }
  for (std::size_t n : {0u, 1u, 4u}) {
    TimeMap part{kOriginal, {tm.mementos.begin(), tm.mementos.begin() + n}};
    const auto back = parse_timemap(serialize_timemap(part), kOriginal);
    EXPECT_EQ(back.timemap.mementos, part.mementos);
    EXPECT_TRUE(back.warnings.empty());
  }
}

TEST(HttpDate, FormatAndParse) {
  const auto t = sys_days{1994y / November / 6} + 8h + 49min + 37s;
  EXPECT_EQ(format_http_date(t), "Sun, 06 Nov 1994 08:49:37 GMT");
  EXPECT_EQ(parse_http_date("Sun, 06 Nov 1994 08:49:37 GMT"), t);
  EXPECT_FALSE(parse_http_date("Sunday, 06-Nov-94 08:49:37 GMT"));
  EXPECT_FALSE(parse_http_date("Sun, 06 Foo 1994 08:49:37 GMT"));
  EXPECT_FALSE(parse_http_date("Sun, 31 Apr 1994 08:49:37 GMT"));
  EXPECT_FALSE(parse_http_date(""));
}

TEST(HttpDate, RoundTripsAcrossYears) {
  for (int d = 0; d < 20000; d += 37) {
    const auto t = sys_days{1990y / January / 1} + days{d} + seconds{(d * 7919) % 86400};
    EXPECT_EQ(parse_http_date(format_http_date(t)), t);
  }
}

}  // namespace
}  // namespace descend
