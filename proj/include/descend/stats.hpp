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
#include <span>

namespace descend {

// Mean, sample standard deviation (n - 1), lower median and range.
// `median_occurrences` counts the values equal to the median.
struct SummaryStats {
  std::size_t count = 0;
  double mean = 0;
  double stddev = 0;
  double median = 0;
  double min = 0;
  double max = 0;
  std::size_t median_occurrences = 0;
};

SummaryStats summarize(std::span<const double> values);

// Rounds half away from zero to `places` decimals; presentation only.
double round_half_up(double value, int places);

}  // namespace descend
