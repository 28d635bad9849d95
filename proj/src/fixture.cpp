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

#include "descend/fixture.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "descend/errors.hpp"

namespace descend {
namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw FixtureFormatError("fixture: " + what); }

const ordered_json& field(const ordered_json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) bad(where + " is missing \"" + name + "\"");
  return *it;
}

std::string string_field(const ordered_json& obj, const char* name, const std::string& where) {
  const auto& v = field(obj, name, where);
  if (!v.is_string()) bad(where + "." + name + " must be a string");
  return v.get<std::string>();
}

}  // namespace

void validate_fixture(const SiteFixture& fixture, const SessionPatterns& patterns) {
  try {
    canonicalize(fixture.seed.raw(), patterns);
  } catch (const UriParseError& e) {
    bad(std::string("seed: ") + e.what());
  }
  if (!fixture.states.count("")) bad("no s0 state (empty script key)");

  for (const auto& [key, state] : fixture.states) {
    const std::string where = "state '" + key + "'";
    InteractionScript script;
    try {
      script = InteractionScript::from_key(key);
    } catch (const FormatError& e) {
      bad(where + ": " + e.what());
    }
    if (script.key() != key) bad(where + ": key is not in canonical token form");
    if (!script.empty() && !fixture.states.count(script.parent().key())) {
      bad(where + " does not extend an existing state by one event");
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : state.events) {
      if (e.target.empty() || e.target.find('/') != std::string::npos) {
        bad(where + ": invalid event target '" + e.target + "'");
      }
      if (!seen.emplace(e.target, e.kind.name()).second) {
        bad(where + ": duplicate event " + e.token());
      }
    }
    for (const auto& r : state.resources) {
      try {
        canonicalize(r.uri, patterns);
      } catch (const UriParseError& e) {
        bad(where + ": " + e.what());
      }
    }
  }
}

SiteFixture parse_fixture(std::string_view json_text, const SessionPatterns& patterns) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");

  SiteFixture fixture;
  try {
    fixture.seed = canonicalize(string_field(doc, "seed", "fixture"), patterns);
  } catch (const UriParseError& e) {
    bad(std::string("seed: ") + e.what());
  }
  const auto& states = field(doc, "states", "fixture");
  if (!states.is_object()) bad("\"states\" must be an object");

  for (const auto& [key, body] : states.items()) {
    const std::string where = "state '" + key + "'";
    if (!body.is_object()) bad(where + " must be an object");
    FixtureState state;
    const auto& resources = field(body, "resources", where);
    if (!resources.is_array()) bad(where + ".resources must be an array");
    for (const auto& r : resources) {
      if (!r.is_object()) bad(where + ": resource entries must be objects");
      FixtureResource res;
      res.uri = string_field(r, "uri", where + " resource");
      res.mime = string_field(r, "mime", where + " resource");
      const auto& size = field(r, "size", where + " resource");
      if (size.is_number_integer() && size.get<std::int64_t>() < 0) {
        bad(where + ": negative size for " + res.uri);
      }
      if (!size.is_number_unsigned() && !size.is_number_integer()) {
        bad(where + ": size of " + res.uri + " must be a non-negative integer");
      }
      res.size = size.get<std::uint64_t>();
      state.resources.push_back(std::move(res));
    }
    const auto& events = field(body, "events", where);
    if (!events.is_array()) bad(where + ".events must be an array");
    for (const auto& e : events) {
      if (!e.is_object()) bad(where + ": event entries must be objects");
      auto target = string_field(e, "target", where + " event");
      auto kind = string_field(e, "kind", where + " event");
      if (kind.empty()) bad(where + ": empty event kind");
      state.events.push_back(InteractionEvent{std::move(target), EventKind::from_name(kind)});
    }
    if (!fixture.states.emplace(key, std::move(state)).second) bad("duplicate " + where);
  }
  validate_fixture(fixture, patterns);
  return fixture;
}

std::string serialize_fixture(const SiteFixture& fixture) {
  ordered_json states = ordered_json::object();
  for (const auto& [key, state] : fixture.states) {
    ordered_json resources = ordered_json::array();
    for (const auto& r : state.resources) {
      resources.push_back(ordered_json{{"uri", r.uri}, {"mime", r.mime}, {"size", r.size}});
    }
    ordered_json events = ordered_json::array();
    for (const auto& e : state.events) {
      events.push_back(ordered_json{{"target", e.target}, {"kind", e.kind.name()}});
    }
    states[key] = ordered_json{{"resources", std::move(resources)}, {"events", std::move(events)}};
  }
  ordered_json doc{{"seed", fixture.seed.raw()}, {"states", std::move(states)}};
  return doc.dump(1) + "\n";
}

SiteFixture read_fixture_file(const std::filesystem::path& path, const SessionPatterns& patterns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read fixture " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_fixture(buf.str(), patterns);
  } catch (const FixtureFormatError& e) {
    throw FixtureFormatError(path.string() + ": " + e.what());
  }
}

void write_fixture_file(const std::filesystem::path& path, const SiteFixture& fixture) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write fixture " + path.string());
  out << serialize_fixture(fixture);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace descend
