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

#include "riprism/chart_ops.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "riprism/error.h"
#include "riprism/metrics.h"
#include "test_support.h"

namespace riprism {
namespace {

using testing::chart_from_rows;

std::vector<double> state(const StatePrism& p, std::size_t l, std::size_t t,
                          std::size_t i) {
  const auto v = p.vector(l, t, i);
  return {v.begin(), v.end()};
}

TEST(ReferenceStep, Semantics) {
  EXPECT_EQ(reference_step(Reference::kFirst, 5, 2, 7), 2u);
  EXPECT_EQ(reference_step(Reference::kPrevious, 5, 2, 7), 4u);
  EXPECT_EQ(reference_step(Reference::kPrevious, 3, 3, 7), 0u);
  EXPECT_EQ(reference_step(Reference::kFinal, 5, 2, 7), 7u);
  EXPECT_EQ(parse_reference("last"), Reference::kFinal);
  EXPECT_EQ(parse_reference("previous"), Reference::kPrevious);
  EXPECT_THROW(parse_reference("next"), InvalidArgument);
}

TEST(BuildChart, FinalReferenceMatchesBruteForce) {
  std::mt19937_64 rng(3);
  const StatePrism prism = testing::random_prism(rng, 2, 3, PrismShape::fixed(5));
  for (std::size_t layer = 0; layer < 2; ++layer) {
    const TriChart chart = build_chart(prism, layer, MetricKind::kCosine, Reference::kFinal);
    for (std::size_t t = 1; t <= 3; ++t) {
      for (std::size_t i = 1; i <= t; ++i) {
        const double oracle =
            t == 3 ? 0.0
                   : cosine_distance(state(prism, layer, t, i), state(prism, layer, 3, i));
        EXPECT_NEAR(chart.at(t, i), oracle, 1e-12) << t << "," << i;
      }
    }
  }
}

TEST(BuildChart, FirstReferenceHasZeroDiagonal) {
  std::mt19937_64 rng(5);
  const StatePrism prism = testing::random_prism(rng, 1, 4, PrismShape::fixed(3));
  const TriChart chart = build_chart(prism, 0, MetricKind::kCosine, Reference::kFirst);
  for (std::size_t t = 1; t <= 4; ++t) EXPECT_EQ(chart.at(t, t), 0.0);
  EXPECT_NEAR(chart.at(4, 2),
              cosine_distance(state(prism, 0, 4, 2), state(prism, 0, 2, 2)), 1e-12);
  EXPECT_EQ(chart.fill_policy(), DiagonalFill::kComputed);
}

TEST(BuildChart, PreviousReferenceZeroFillsDiagonal) {
  std::mt19937_64 rng(9);
  const StatePrism prism = testing::random_prism(rng, 1, 4, PrismShape::fixed(3));
  const TriChart chart = build_chart(prism, 0, MetricKind::kCosine, Reference::kPrevious);
  EXPECT_EQ(chart.fill_policy(), DiagonalFill::kZeroFilled);
  for (std::size_t t = 1; t <= 4; ++t) EXPECT_EQ(chart.at(t, t), 0.0);
  EXPECT_NEAR(chart.at(3, 1),
              cosine_distance(state(prism, 0, 3, 1), state(prism, 0, 2, 1)), 1e-12);
}

TEST(BuildChart, EntropyDeltaOnPrefixSizedPrism) {
  std::mt19937_64 rng(21);
  const StatePrism prism =
      testing::random_prism(rng, 1, 4, PrismShape::prefix_sized(true), true);
  const TriChart abs_chart =
      build_chart(prism, 0, MetricKind::kEntropyDelta, Reference::kPrevious);
  const TriChart signed_chart =
      build_chart(prism, 0, MetricKind::kEntropyDeltaSigned, Reference::kPrevious);
  const double expected = entropy(prism.vector(0, 4, 2)) - entropy(prism.vector(0, 3, 2));
  EXPECT_NEAR(signed_chart.at(4, 2), expected, 1e-12);
  EXPECT_NEAR(abs_chart.at(4, 2), std::abs(expected), 1e-12);
}

TEST(BuildChart, RejectsCosineOnPrefixSizedAndBadLayer) {
  std::mt19937_64 rng(1);
  const StatePrism prefix =
      testing::random_prism(rng, 1, 3, PrismShape::prefix_sized(false), true);
  EXPECT_THROW(build_chart(prefix, 0, MetricKind::kCosine, Reference::kFirst),
               InvalidArgument);
  const StatePrism fixed = testing::random_prism(rng, 1, 3, PrismShape::fixed(2));
  EXPECT_THROW(build_chart(fixed, 1, MetricKind::kCosine, Reference::kFirst),
               InvalidArgument);
}

TEST(DeleteToken, KeepsSurvivingCells) {
  const TriChart chart = chart_from_rows({{11}, {21, 22}, {31, 32, 33}});
  const TriChart out = delete_token(chart, 2);
  ASSERT_EQ(out.n_tokens(), 2u);
  EXPECT_EQ(out.at(1, 1), 11);
  EXPECT_EQ(out.at(2, 1), 31);
  EXPECT_EQ(out.at(2, 2), 33);
}

TEST(DeleteToken, PropertyMatchesIndexMap) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    const std::size_t p = 1 + rng() % n;
    TriChart chart(n);
    for (std::size_t t = 1; t <= n; ++t) {
      for (std::size_t i = 1; i <= t; ++i) chart.set(t, i, static_cast<double>(t * 100 + i));
    }
    const TriChart out = delete_token(chart, p);
    ASSERT_EQ(out.n_tokens(), n - 1);
    const auto map = [p](std::size_t x) { return x < p ? x : x + 1; };
    for (std::size_t t = 1; t < n; ++t) {
      for (std::size_t i = 1; i <= t; ++i) {
        EXPECT_EQ(out.at(t, i), chart.at(map(t), map(i)));
      }
    }
  }
}

TEST(TrimToAnchor, DropsLeadingTokens) {
  const TriChart chart = chart_from_rows({{11}, {21, 22}, {31, 32, 33}});
  const TriChart out = trim_to_anchor(chart, 2);
  ASSERT_EQ(out.n_tokens(), 2u);
  EXPECT_EQ(out.at(1, 1), 22);
  EXPECT_EQ(out.at(2, 1), 32);
  EXPECT_EQ(out.at(2, 2), 33);
  EXPECT_TRUE(same_cells(trim_to_anchor(chart, 1), chart));
}

TEST(RealignPair, NncDropsTrailingStimulusToken) {
  StimulusPair pair;
  pair.kind = StimulusKind::kNNC;
  pair.stimulus_tokens = {"This", "is", "a", "noun1", "noun2", ","};
  pair.baseline_tokens = {"This", "is", "a", "noun1", ","};
  pair.anchors.trailing_trim = 1;
  std::mt19937_64 rng(2);
  const StatePrism s = testing::random_prism(rng, 1, 6, PrismShape::fixed(3));
  const StatePrism b = testing::random_prism(rng, 1, 5, PrismShape::fixed(3));
  const TriChart cs = build_chart(s, 0, MetricKind::kCosine, Reference::kPrevious);
  const TriChart cb = build_chart(b, 0, MetricKind::kCosine, Reference::kPrevious);
  const auto [as, ab] = realign_pair(cs, cb, pair);
  EXPECT_EQ(as.n_tokens(), 5u);
  EXPECT_EQ(ab.n_tokens(), 5u);
  for (std::size_t t = 1; t <= 5; ++t) {
    for (std::size_t i = 1; i <= t; ++i) EXPECT_EQ(as.at(t, i), cs.at(t, i));
  }
}

TEST(RealignPair, MvrrDropsExtraBaselineTokens) {
  StimulusPair pair;
  pair.kind = StimulusKind::kMVRR;
  pair.stimulus_tokens = {"The", "nurse", "sent", "the", "flowers", "cried"};
  pair.baseline_tokens = {"The", "nurse", "who", "was", "sent", "the", "flowers", "cried"};
  pair.anchors.extra_token_indices = {3, 4};
  std::mt19937_64 rng(4);
  const StatePrism s = testing::random_prism(rng, 1, 6, PrismShape::fixed(3));
  const StatePrism b = testing::random_prism(rng, 1, 8, PrismShape::fixed(3));
  const TriChart cs = build_chart(s, 0, MetricKind::kCosine, Reference::kFinal);
  const TriChart cb = build_chart(b, 0, MetricKind::kCosine, Reference::kFinal);
  const auto [as, ab] = realign_pair(cs, cb, pair);
  ASSERT_EQ(as.n_tokens(), 6u);
  ASSERT_EQ(ab.n_tokens(), 6u);
  EXPECT_TRUE(same_cells(as, cs));
  EXPECT_EQ(ab.at(3, 1), cb.at(5, 1));
  EXPECT_EQ(ab.at(6, 3), cb.at(8, 5));
}

TEST(RealignPair, RejectsMismatchedShapes) {
  StimulusPair pair;
  pair.kind = StimulusKind::kNPS;
  pair.anchors.extra_token_indices = {3};
  EXPECT_THROW(realign_pair(TriChart(4), TriChart(4), pair), InvalidArgument);
}

TEST(AbsDiff, CellwiseAndMissingAware) {
  TriChart a = chart_from_rows({{0.1}, {0.5, 0.2}});
  TriChart b = chart_from_rows({{0.3}, {0.1, 0.2}});
  b.set_missing(2, 2);
  const TriChart d = abs_diff(a, b);
  EXPECT_NEAR(d.at(1, 1), 0.2, 1e-15);
  EXPECT_NEAR(d.at(2, 1), 0.4, 1e-15);
  EXPECT_TRUE(d.is_missing(2, 2));
  EXPECT_THROW(abs_diff(TriChart(2), TriChart(3)), InvalidArgument);
}

TEST(MeanCharts, DifferentLengthsKeepLongerRow) {
  const TriChart a = chart_from_rows({{1}, {2, 3}});
  const TriChart b = chart_from_rows({{3}, {4, 5}, {7, 8, 9}});
  const std::vector<TriChart> charts{a, b};
  const TriChart m = mean_charts(charts);
  ASSERT_EQ(m.n_tokens(), 3u);
  EXPECT_EQ(m.at(1, 1), 2);
  EXPECT_EQ(m.at(2, 2), 4);
  EXPECT_EQ(m.at(3, 1), 7);
  EXPECT_EQ(m.at(3, 2), 8);
  EXPECT_EQ(m.at(3, 3), 9);
}

TEST(MeanCharts, CopiesAverageToThemselves) {
  std::mt19937_64 rng(8);
  TriChart c(5);
  for (std::size_t t = 1; t <= 5; ++t) {
    for (std::size_t i = 1; i <= t; ++i) c.set(t, i, testing::random_f32_value(rng));
  }
  const std::vector<TriChart> charts(7, c);
  EXPECT_TRUE(same_cells(mean_charts(charts), c));
}

TEST(SubdiagonalMeans, HandExample) {
  TriChart chart(4);
  for (std::size_t t = 1; t <= 4; ++t) chart.set(t, t, 0.0);
  chart.set(2, 1, 0.4);
  chart.set(3, 2, 0.2);
  chart.set(4, 3, 0.0);
  chart.set(3, 1, 0.3);
  chart.set(4, 2, 0.1);
  chart.set(4, 1, 0.5);
  const std::vector<double> means = subdiagonal_means(chart, 2);
  ASSERT_EQ(means.size(), 2u);
  EXPECT_NEAR(means[0], 0.2, 1e-15);
  EXPECT_NEAR(means[1], 0.2, 1e-15);
  EXPECT_THROW(subdiagonal_means(chart, 4), InvalidArgument);
}

TEST(SubdiagonalMeans, PooledWeightsEveryCell) {
  const TriChart a = chart_from_rows({{0}, {1, 0}});
  const TriChart b = chart_from_rows({{0}, {0, 0}, {0, 0, 0}});
  const std::vector<TriChart> charts{a, b};
  const std::vector<double> means = pooled_subdiagonal_means(charts, 3);
  EXPECT_NEAR(means[0], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(means[1], 0.0);
  EXPECT_TRUE(std::isnan(means[2]));
}

}  // namespace
}  // namespace riprism
