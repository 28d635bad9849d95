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

#include "descend/json_io.hpp"

#include <fstream>
#include <sstream>

#include "descend/errors.hpp"

namespace descend::json_io {

json uri_to_json(const UriR& uri) {
  json j{{"uri", uri.canonical()}};
  if (uri.raw() != uri.canonical()) j["raw"] = uri.raw();
  return j;
}

UriR uri_from_json(const json& j) {
  auto canonical = j.at("uri").get<std::string>();
  auto raw = j.contains("raw") ? j.at("raw").get<std::string>() : canonical;
  return UriR::restore(std::move(raw), std::move(canonical));
}

json resource_to_json(const ResourceRef& ref) {
  json j = uri_to_json(ref.uri);
  j["mime"] = ref.mime;
  j["size"] = ref.size_bytes;
  return j;
}

ResourceRef resource_from_json(const json& j) {
  return ResourceRef{uri_from_json(j), j.at("mime").get<std::string>(),
                     j.at("size").get<std::uint64_t>()};
}

json resources_to_json(const ResourceSet& set) {
  json out = json::array();
  for (const auto& [key, ref] : set) out.push_back(resource_to_json(ref));
  return out;
}

ResourceSet resources_from_json(const json& j) {
  ResourceSet out;
  for (const auto& r : j) out.insert(resource_from_json(r));
  return out;
}

json events_to_json(const std::vector<InteractionEvent>& events) {
  json out = json::array();
  for (const auto& e : events) out.push_back(e.token());
  return out;
}

std::vector<InteractionEvent> events_from_json(const json& j) {
  std::vector<InteractionEvent> out;
  for (const auto& t : j) out.push_back(InteractionEvent::from_token(t.get<std::string>()));
  return out;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("missing artifact " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

void write_file(const std::filesystem::path& path, const json& j, int indent) {
  write_text(path, j.dump(indent) + "\n");
}

}  // namespace descend::json_io
