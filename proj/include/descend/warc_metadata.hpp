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

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "descend/state_model.hpp"

namespace descend {

// One JSON metadata record per descendant state, stored alongside its
// captures in a WARC metadata record.
struct DescendantMetadataRecord {
  std::string startedDateTime;               // ISO-8601 UTC
  std::string id;                            // state id within the seed's tree
  std::string title;                         // URI-R of the root page
  std::string pageTimings;                   // interaction script as CSV of target:kind
  std::string comment;
  std::string renderedContent;               // markup of the state
  std::vector<std::string> renderedElements; // canonical URIs along the root path, sorted
  std::vector<std::string> map;              // available interactions as target:kind

  friend bool operator==(const DescendantMetadataRecord&, const DescendantMetadataRecord&) = default;
};

std::string format_iso8601(std::chrono::sys_seconds t);
// Accepts only the "YYYY-MM-DDTHH:MM:SSZ" form.
std::optional<std::chrono::sys_seconds> parse_iso8601(std::string_view text);

// Throws LookupError when `state` is not a node of `tree`.
DescendantMetadataRecord emit_record(const ClientState& state, const StateTree& tree,
                                     std::chrono::sys_seconds timestamp,
                                     std::string rendered_content = {});

std::string encode_page_timings(const InteractionScript& script);
InteractionScript script_from_page_timings(std::string_view csv);

nlohmann::json record_to_json(const DescendantMetadataRecord& record);
DescendantMetadataRecord record_from_json(const nlohmann::json& j);

// Compact JSON with sorted keys.
std::string serialize_record(const DescendantMetadataRecord& record);
DescendantMetadataRecord parse_record(std::string_view text);

// Newline-delimited stream of serialized records.
std::string serialize_record_stream(const std::vector<DescendantMetadataRecord>& records);
std::vector<DescendantMetadataRecord> parse_record_stream(std::string_view text);

}  // namespace descend
