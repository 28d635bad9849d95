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

// JSON encodings shared by the on-disk artifacts.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "descend/state_model.hpp"
#include "descend/uri.hpp"

namespace descend::json_io {

using nlohmann::json;

// {"uri": canonical} plus "raw" when it differs from the canonical form.
json uri_to_json(const UriR& uri);
UriR uri_from_json(const json& j);

json resource_to_json(const ResourceRef& ref);
ResourceRef resource_from_json(const json& j);

json resources_to_json(const ResourceSet& set);
ResourceSet resources_from_json(const json& j);

json events_to_json(const std::vector<InteractionEvent>& events);
std::vector<InteractionEvent> events_from_json(const json& j);

json read_file(const std::filesystem::path& path);
// Writes `j.dump(indent)` plus a trailing newline.
void write_file(const std::filesystem::path& path, const json& j, int indent = 1);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace descend::json_io
