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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "descend/coverage.hpp"
#include "descend/path_analysis.hpp"
#include "descend/policy.hpp"

namespace descend {

// Everything the report stage renders; coverage and estimate are optional.
struct ReportInputs {
  std::vector<SeedAnalysis> seeds;
  std::optional<nlohmann::json> coverage;  // coverage_to_json output
  std::optional<nlohmann::json> estimate;  // estimate stage output
};

struct ReportFile {
  std::string name;
  std::string contents;
};

// Renders tables and plot series as CSV plus a summary.json. Pure; the
// caller writes the files.
std::vector<ReportFile> render_report(const ReportInputs& inputs);

// Two decimals, half-up, with a trailing "x".
std::string format_ratio(double value);

}  // namespace descend
