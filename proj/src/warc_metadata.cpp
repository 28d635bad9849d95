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

#include "descend/warc_metadata.hpp"

#include <sstream>

#include "descend/errors.hpp"

namespace descend {
namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(std::string_view csv) {
  std::vector<std::string> fields;
  if (csv.empty()) return fields;
  std::string cur;
  std::size_t i = 0;
  while (true) {
    cur.clear();
    if (i < csv.size() && csv[i] == '"') {
      ++i;
      while (true) {
        if (i >= csv.size()) throw FormatError("pageTimings: unterminated quoted field");
        if (csv[i] == '"') {
          if (i + 1 < csv.size() && csv[i + 1] == '"') {
            cur += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        cur += csv[i++];
      }
      if (i < csv.size() && csv[i] != ',') throw FormatError("pageTimings: text after quoted field");
    } else {
      while (i < csv.size() && csv[i] != ',') {
        if (csv[i] == '"') throw FormatError("pageTimings: stray quote");
        cur += csv[i++];
      }
    }
    fields.push_back(cur);
    if (i >= csv.size()) break;
    ++i;  // ','
  }
  return fields;
}

}  // namespace

std::string format_iso8601(std::chrono::sys_seconds t) {
  const auto days = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{days};
  const std::chrono::hh_mm_ss hms{t - days};
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

std::optional<std::chrono::sys_seconds> parse_iso8601(std::string_view text) {
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  auto num = [&](std::size_t pos, std::size_t len) -> int {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return -1;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  const int y = num(0, 4), mo = num(5, 2), d = num(8, 2), h = num(11, 2), mi = num(14, 2), s = num(17, 2);
  if (y < 0 || mo < 0 || d < 0 || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd} + std::chrono::hours{h} + std::chrono::minutes{mi} + std::chrono::seconds{s};
}

std::string encode_page_timings(const InteractionScript& script) {
  std::string out;
  for (const auto& e : script.events) {
    if (!out.empty()) out += ',';
    out += csv_field(e.token());
  }
  return out;
}

InteractionScript script_from_page_timings(std::string_view csv) {
  InteractionScript script;
  for (const auto& token : csv_split(csv)) script.events.push_back(InteractionEvent::from_token(token));
  return script;
}

DescendantMetadataRecord emit_record(const ClientState& state, const StateTree& tree,
                                     std::chrono::sys_seconds timestamp, std::string rendered_content) {
  const ClientState* node = tree.find(state.id);
  if (node == nullptr || !(node->script == state.script)) {
    throw LookupError("state '" + state.id + "' is not part of the tree for " + tree.seed().canonical());
  }
  const StatePath path = path_to(tree, node->id);

  DescendantMetadataRecord r;
  r.startedDateTime = format_iso8601(timestamp);
  r.id = node->id;
  r.title = tree.seed().canonical();
  r.pageTimings = encode_page_timings(node->script);
  r.comment = "level " + std::to_string(node->level) + " state of " + tree.seed().canonical();
  r.renderedContent = std::move(rendered_content);
  r.renderedElements = path_resources(path).keys();
  for (const auto& e : node->available_events) r.map.push_back(e.token());
  return r;
}

nlohmann::json record_to_json(const DescendantMetadataRecord& r) {
  return nlohmann::json{{"startedDateTime", r.startedDateTime},
                        {"id", r.id},
                        {"title", r.title},
                        {"pageTimings", r.pageTimings},
                        {"comment", r.comment},
                        {"renderedContent", r.renderedContent},
                        {"renderedElements", r.renderedElements},
                        {"map", r.map}};
}

DescendantMetadataRecord record_from_json(const nlohmann::json& j) {
  try {
    DescendantMetadataRecord r;
    r.startedDateTime = j.at("startedDateTime").get<std::string>();
    r.id = j.at("id").get<std::string>();
    r.title = j.at("title").get<std::string>();
    r.pageTimings = j.at("pageTimings").get<std::string>();
    r.comment = j.at("comment").get<std::string>();
    r.renderedContent = j.at("renderedContent").get<std::string>();
    r.renderedElements = j.at("renderedElements").get<std::vector<std::string>>();
    r.map = j.at("map").get<std::vector<std::string>>();
    if (j.size() != 8) throw FormatError("metadata record has unexpected fields");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad metadata record: ") + e.what());
  }
}

std::string serialize_record(const DescendantMetadataRecord& record) {
  // nlohmann::json objects keep keys sorted.
  return record_to_json(record).dump();
}

DescendantMetadataRecord parse_record(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("metadata record is not JSON: ") + e.what());
  }
  return record_from_json(j);
}

std::string serialize_record_stream(const std::vector<DescendantMetadataRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += serialize_record(r);
    out += '\n';
  }
  return out;
}

std::vector<DescendantMetadataRecord> parse_record_stream(std::string_view text) {
  std::vector<DescendantMetadataRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty()) out.push_back(parse_record(line));
    pos = nl + 1;
  }
  return out;
}

}  // namespace descend
