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

#include <gtest/gtest.h>

#include <gsl/gsl_sort.h>
#include <gsl/gsl_statistics_double.h>

#include <vector>

#include "descend/stats.hpp"
#include "generators.hpp"

namespace descend {
namespace {

TEST(Summarize, EmptyAndSingleton) {
  EXPECT_EQ(summarize({}).count, 0u);
  const std::vector<double> one{4};
  const auto s = summarize(one);
  EXPECT_EQ(s.mean, 4);
  EXPECT_EQ(s.stddev, 0);
  EXPECT_EQ(s.median, 4);
  EXPECT_EQ(s.median_occurrences, 1u);
}

TEST(Summarize, LowerMedianForEvenCounts) {
  const std::vector<double> v{1, 9, 3, 7};
  EXPECT_EQ(summarize(v).median, 3);
}

TEST(SummarizeProperty, AgreesWithGsl) {
  gen::Rng rng(5);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> v(1 + rng.below(200));
    for (auto& x : v) x = static_cast<double>(rng.below(50));
    const auto s = summarize(v);
    std::vector<double> sorted = v;
    gsl_sort(sorted.data(), 1, sorted.size());
    ASSERT_NEAR(s.mean, gsl_stats_mean(v.data(), 1, v.size()), 1e-9);
    if (v.size() > 1) {
      ASSERT_NEAR(s.stddev, gsl_stats_sd(v.data(), 1, v.size()), 1e-9);
    }
    ASSERT_EQ(s.min, gsl_stats_min(v.data(), 1, v.size()));
    ASSERT_EQ(s.max, gsl_stats_max(v.data(), 1, v.size()));
    if (v.size() % 2 == 1) {
      ASSERT_EQ(s.median, gsl_stats_median_from_sorted_data(sorted.data(), 1, sorted.size()));
    } else {
      ASSERT_EQ(s.median, sorted[v.size() / 2 - 1]);
    }
    ASSERT_EQ(s.median_occurrences, static_cast<std::size_t>(std::count(v.begin(), v.end(), s.median)));
  }
}

TEST(RoundHalfUp, TwoDecimals) {
  EXPECT_DOUBLE_EQ(round_half_up(2.675, 2), 2.68);
  EXPECT_DOUBLE_EQ(round_half_up(8.1662, 2), 8.17);
  EXPECT_DOUBLE_EQ(round_half_up(0.005, 2), 0.01);
  EXPECT_DOUBLE_EQ(round_half_up(-1.005, 2), -1.01);
  EXPECT_DOUBLE_EQ(round_half_up(38.897, 2), 38.90);
  EXPECT_DOUBLE_EQ(round_half_up(12.5, 0), 13);
}

}  // namespace
}  // namespace descend
