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
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "descend/fixture.hpp"
#include "descend/state_model.hpp"
#include "descend/uri.hpp"

namespace descend {

struct PageHandle {
  UriR seed;
  InteractionScript current_script;
  ResourceSet observed_requests;  // everything requested since load
  std::vector<InteractionEvent> available_events;
  std::string rendered_markup;
};

struct ExecuteResult {
  PageHandle handle;
  ResourceSet cumulative;
};

// A browser session: dereference a seed, list the events its current state
// listens for, replay interaction scripts and report the requests they
// trigger. One instance serves one session at a time.
class PageDriver {
 public:
  virtual ~PageDriver() = default;

  virtual PageHandle load(const UriR& seed) = 0;
  // Replays `script` from s0 of the handle's seed.
  virtual ExecuteResult execute(const PageHandle& handle, const InteractionScript& script) = 0;
  virtual std::vector<InteractionEvent> enumerate_events(const PageHandle& handle) const {
    return handle.available_events;
  }
};

// Validated fixtures indexed by canonical seed URI, with resource lists
// already canonicalized. Immutable once built and safe to share between
// driver instances on different threads.
class FixtureLibrary {
 public:
  explicit FixtureLibrary(SessionPatterns patterns = SessionPatterns::defaults());

  // Throws FixtureFormatError for invalid fixtures and LoadError for a
  // second fixture with the same seed.
  void add(const SiteFixture& fixture);
  static FixtureLibrary from_directory(const std::filesystem::path& dir,
                                       SessionPatterns patterns = SessionPatterns::defaults());

  struct PreparedState {
    ResourceSet requested;
    std::vector<InteractionEvent> events;
  };
  struct Prepared {
    UriR seed;
    std::map<std::string, PreparedState, std::less<>> states;
  };

  const Prepared* find(const UriR& seed) const;
  std::size_t size() const { return fixtures_.size(); }
  const SessionPatterns& patterns() const { return patterns_; }

 private:
  SessionPatterns patterns_;
  std::map<std::string, Prepared, std::less<>> fixtures_;
};

struct SimulatedDriverOptions {
  // Approximate size of the synthetic markup of each state, so stored
  // metadata has realistic weight.
  std::size_t markup_bytes = 12000;
};

// Deterministic driver over a FixtureLibrary.
class SimulatedDriver : public PageDriver {
 public:
  explicit SimulatedDriver(std::shared_ptr<const FixtureLibrary> library,
                           SimulatedDriverOptions options = {});
  explicit SimulatedDriver(const SiteFixture& fixture, SimulatedDriverOptions options = {});

  PageHandle load(const UriR& seed) override;
  ExecuteResult execute(const PageHandle& handle, const InteractionScript& script) override;

 private:
  const FixtureLibrary::Prepared& fixture_for(const UriR& seed) const;
  std::string render(const UriR& seed, const InteractionScript& script,
                     const std::vector<InteractionEvent>& events) const;

  std::shared_ptr<const FixtureLibrary> library_;
  SimulatedDriverOptions options_;
};

// Forwards to another driver and logs every script it executes.
class RecordingDriver : public PageDriver {
 public:
  explicit RecordingDriver(PageDriver& inner) : inner_(inner) {}

  PageHandle load(const UriR& seed) override;
  ExecuteResult execute(const PageHandle& handle, const InteractionScript& script) override;
  std::vector<InteractionEvent> enumerate_events(const PageHandle& handle) const override {
    return inner_.enumerate_events(handle);
  }

  const std::vector<std::string>& executed_scripts() const { return executed_; }
  std::size_t loads() const { return loads_; }

 private:
  PageDriver& inner_;
  std::vector<std::string> executed_;
  std::size_t loads_ = 0;
};

}  // namespace descend
