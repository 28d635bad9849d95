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
#include <string_view>
#include <vector>

#include "descend/state_model.hpp"
#include "descend/uri.hpp"

namespace descend {

// Declarative stand-in for a live page. States are keyed by the script that
// reaches them ("" is s0); each state lists the requests its final event
// triggers and the events it exposes.
struct FixtureResource {
  std::string uri;
  std::string mime;
  std::uint64_t size = 0;

  friend bool operator==(const FixtureResource&, const FixtureResource&) = default;
};

struct FixtureState {
  std::vector<FixtureResource> resources;
  std::vector<InteractionEvent> events;

  friend bool operator==(const FixtureState&, const FixtureState&) = default;
};

struct SiteFixture {
  UriR seed;
  std::map<std::string, FixtureState> states;

  friend bool operator==(const SiteFixture& a, const SiteFixture& b) {
    return a.seed.raw() == b.seed.raw() && a.states == b.states;
  }
};

// Both throw FixtureFormatError on malformed input or violated invariants.
SiteFixture parse_fixture(std::string_view json_text,
                          const SessionPatterns& patterns = SessionPatterns::defaults());
void validate_fixture(const SiteFixture& fixture,
                      const SessionPatterns& patterns = SessionPatterns::defaults());

std::string serialize_fixture(const SiteFixture& fixture);

SiteFixture read_fixture_file(const std::filesystem::path& path,
                              const SessionPatterns& patterns = SessionPatterns::defaults());
void write_fixture_file(const std::filesystem::path& path, const SiteFixture& fixture);

}  // namespace descend
