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

#include "descend/page_driver.hpp"

#include <algorithm>

#include "descend/errors.hpp"

namespace descend {
namespace {

void append_escaped(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

}  // namespace

FixtureLibrary::FixtureLibrary(SessionPatterns patterns) : patterns_(std::move(patterns)) {}

void FixtureLibrary::add(const SiteFixture& fixture) {
  validate_fixture(fixture, patterns_);
  UriR seed = canonicalize(fixture.seed.raw(), patterns_);
  if (fixtures_.count(seed.canonical())) {
    throw LoadError("two fixtures share the seed " + seed.canonical());
  }
  Prepared prepared;
  prepared.seed = seed;
  for (const auto& [key, state] : fixture.states) {
    PreparedState ps;
    for (const auto& r : state.resources) {
      ps.requested.insert(ResourceRef{canonicalize(r.uri, patterns_), r.mime, r.size});
    }
    ps.events = state.events;
    prepared.states.emplace(key, std::move(ps));
  }
  fixtures_.emplace(seed.canonical(), std::move(prepared));
}

FixtureLibrary FixtureLibrary::from_directory(const std::filesystem::path& dir,
                                              SessionPatterns patterns) {
  if (!std::filesystem::is_directory(dir)) throw LoadError("fixture directory " + dir.string() + " not found");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    // Stage manifests share the directory with fixtures.
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        entry.path().filename().string().rfind("manifest-", 0) != 0) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  FixtureLibrary library(patterns);
  for (const auto& f : files) library.add(read_fixture_file(f, library.patterns()));
  return library;
}

const FixtureLibrary::Prepared* FixtureLibrary::find(const UriR& seed) const {
  auto it = fixtures_.find(seed.canonical());
  return it == fixtures_.end() ? nullptr : &it->second;
}

SimulatedDriver::SimulatedDriver(std::shared_ptr<const FixtureLibrary> library,
                                 SimulatedDriverOptions options)
    : library_(std::move(library)), options_(options) {}

SimulatedDriver::SimulatedDriver(const SiteFixture& fixture, SimulatedDriverOptions options)
    : options_(options) {
  auto library = std::make_shared<FixtureLibrary>();
  library->add(fixture);
  library_ = std::move(library);
}

const FixtureLibrary::Prepared& SimulatedDriver::fixture_for(const UriR& seed) const {
  const auto* prepared = library_->find(seed);
  if (!prepared) throw LoadError("no fixture for seed " + seed.canonical());
  return *prepared;
}

PageHandle SimulatedDriver::load(const UriR& seed) {
  return execute(PageHandle{seed, {}, {}, {}, {}}, InteractionScript{}).handle;
}

ExecuteResult SimulatedDriver::execute(const PageHandle& handle, const InteractionScript& script) {
  const auto& fixture = fixture_for(handle.seed);
  ResourceSet cumulative;
  const FixtureLibrary::PreparedState* state = nullptr;
  InteractionScript prefix;
  for (std::size_t i = 0; i <= script.size(); ++i) {
    if (i > 0) prefix.events.push_back(script.events[i - 1]);
    const std::string key = prefix.key();
    auto it = fixture.states.find(key);
    if (it == fixture.states.end()) {
      throw UnreachableStateError(
          "state '" + key + "' of " + fixture.seed.canonical() + " is not reachable", key);
    }
    state = &it->second;
    cumulative.insert_all(state->requested);
  }
  PageHandle out;
  out.seed = fixture.seed;
  out.current_script = script;
  out.observed_requests = cumulative;
  out.available_events = state->events;
  out.rendered_markup = render(fixture.seed, script, state->events);
  return ExecuteResult{std::move(out), std::move(cumulative)};
}

std::string SimulatedDriver::render(const UriR& seed, const InteractionScript& script,
                                    const std::vector<InteractionEvent>& events) const {
  std::string html = "<!DOCTYPE html><html><head><title>";
  append_escaped(html, seed.raw());
  html += "</title></head><body data-script=\"";
  append_escaped(html, script.key());
  html += "\">\n";
  for (const auto& e : events) {
    html += "<a id=\"";
    append_escaped(html, e.target);
    html += "\" data-event=\"";
    append_escaped(html, e.kind.name());
    html += "\"></a>\n";
  }
  constexpr std::string_view kTail = "</body></html>\n";
  const std::size_t used = html.size() + kTail.size() + 8;  // padding comment delimiters
  if (options_.markup_bytes > used) {
    html += "<!--";
    html.append(options_.markup_bytes - used, 'x');
    html += "-->\n";
  }
  html += kTail;
  return html;
}

PageHandle RecordingDriver::load(const UriR& seed) {
  ++loads_;
  return inner_.load(seed);
}

ExecuteResult RecordingDriver::execute(const PageHandle& handle, const InteractionScript& script) {
  executed_.push_back(script.key());
  return inner_.execute(handle, script);
}

}  // namespace descend
