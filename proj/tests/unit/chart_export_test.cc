// Copyright 2026 The riprism Authors.
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

#include "riprism/chart_export.h"

#include <gtest/gtest.h>

#include <random>

#include "riprism/error.h"
#include "test_support.h"

namespace riprism {
namespace {

TEST(ExportCsv, ZeroChart) {
  TriChart chart(2);
  for (std::size_t t = 1; t <= 2; ++t) {
    for (std::size_t i = 1; i <= t; ++i) chart.set(t, i, 0.0);
  }
  EXPECT_EQ(export_chart_csv(chart), "t,i,value\n1,1,0\n2,1,0\n2,2,0\n");
}

TEST(ExportCsv, MissingCellOmitted) {
  TriChart chart = testing::chart_from_rows({{0.5}, {0.25, 1}});
  chart.set_missing(2, 1);
  EXPECT_EQ(export_chart_csv(chart), "t,i,value\n1,1,0.5\n2,2,1\n");
}

TEST(ExportCsv, MaskAndLayers) {
  MaskChart mask(2, false);
  mask.set(2, 1, true);
  EXPECT_EQ(export_chart_csv(mask), "t,i,value\n1,1,0\n2,1,1\n2,2,0\n");
  const LayerChartSet layers{testing::chart_from_rows({{1}}), testing::chart_from_rows({{2}})};
  EXPECT_EQ(export_layers_csv(layers), "layer,t,i,value\n0,1,1,1\n1,1,1,2\n");
}

TEST(ExportJson, Layout) {
  TriChart chart = testing::chart_from_rows({{0}, {0.5, 0}});
  chart.set_missing(2, 2);
  chart.set_fill_policy(DiagonalFill::kZeroFilled);
  EXPECT_EQ(export_chart_json(chart),
            "{\"fill_policy\":\"zero_filled\",\"n_tokens\":2,\"rows\":[[0.0],[0.5,null]]}\n");
}

TEST(ExportJson, RoundTripIsExact) {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 9;
    TriChart chart(n);
    for (std::size_t t = 1; t <= n; ++t) {
      for (std::size_t i = 1; i <= t; ++i) {
        if (rng() % 5 != 0) chart.set(t, i, u(rng));
      }
    }
    const TriChart back = parse_chart_json(export_chart_json(chart));
    EXPECT_TRUE(same_cells(back, chart));
    EXPECT_EQ(back.fill_policy(), chart.fill_policy());
  }
  const LayerChartSet layers{testing::chart_from_rows({{0.1}}),
                             testing::chart_from_rows({{0.2}, {0.3, 0.4}})};
  const LayerChartSet back = parse_layers_json(export_layers_json(layers));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(same_cells(back[1], layers[1]));
}

TEST(ParseJson, RejectsMalformed) {
  EXPECT_THROW(parse_chart_json("{"), FormatError);
  EXPECT_THROW(parse_chart_json(R"({"n_tokens":2,"rows":[[0]]})"), FormatError);
  EXPECT_THROW(parse_chart_json(R"({"n_tokens":1,"rows":[["x"]]})"), FormatError);
  EXPECT_THROW(parse_layers_json(R"({"charts":[]})"), FormatError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
}

}  // namespace
}  // namespace riprism
