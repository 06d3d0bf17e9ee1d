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

#include "riprism/metrics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "riprism/error.h"
#include "test_support.h"

namespace riprism {
namespace {

// KL(p || m) summed term by term, skipping zero-mass entries.
double kl_oracle(const std::vector<double>& p, const std::vector<double>& m) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) s += p[k] * std::log(p[k] / m[k]);
  }
  return s;
}

TEST(CosineDistance, HandValue) {
  const std::vector<double> u{1, 1}, v{1, 0};
  EXPECT_NEAR(cosine_distance(u, v), 1.0 - 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(CosineDistance, IdenticalIsExactlyZero) {
  const std::vector<double> u{0.3, -1.7, 2.2};
  EXPECT_EQ(cosine_distance(u, u), 0.0);
}

TEST(CosineDistance, OppositeIsTwo) {
  const std::vector<double> u{1, 2}, v{-1, -2};
  EXPECT_NEAR(cosine_distance(u, v), 2.0, 1e-12);
}

TEST(CosineDistance, RejectsBadInput) {
  const std::vector<double> zero{0, 0}, one{1, 0}, three{1, 2, 3};
  EXPECT_THROW(cosine_distance(zero, one), InvalidArgument);
  EXPECT_THROW(cosine_distance(one, three), InvalidArgument);
  EXPECT_THROW(cosine_distance(std::vector<double>{}, std::vector<double>{}),
               InvalidArgument);
}

TEST(Jsd, HandOracle) {
  const std::vector<double> p{1, 0}, q{0.5, 0.5};
  const std::vector<double> m{0.75, 0.25};
  const double oracle = 0.5 * kl_oracle(p, m) + 0.5 * kl_oracle(q, m);
  EXPECT_NEAR(oracle, 0.21576, 1e-5);
  EXPECT_NEAR(jsd(p, q), oracle, 1e-12);
}

TEST(Jsd, DisjointSupportIsLn2) {
  const std::vector<double> p{1, 0}, q{0, 1};
  EXPECT_NEAR(jsd(p, q), kLn2, 1e-12);
  EXPECT_LE(jsd(p, q), kLn2);
}

TEST(Jsd, UniformAgainstItselfIsZero) {
  EXPECT_EQ(jsd(uniform(2), uniform(2)), 0.0);
}

TEST(Jsd, RejectsInvalidDistributions) {
  const std::vector<double> ok{0.5, 0.5};
  EXPECT_THROW(jsd(std::vector<double>{0.5, 0.6}, ok), InvalidArgument);
  EXPECT_THROW(jsd(std::vector<double>{-0.1, 1.1}, ok), InvalidArgument);
  EXPECT_THROW(jsd(std::vector<double>{1.0}, ok), InvalidArgument);
}

TEST(Jsd, PropertyBoundsAndSymmetry) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t c = 2 + rng() % 7;
    const auto p = testing::random_distribution(rng, c);
    const auto q = testing::random_distribution(rng, c);
    const double d = jsd(p, q);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, kLn2);
    EXPECT_EQ(d, jsd(q, p));
    EXPECT_EQ(jsd(p, p), 0.0);
  }
}

TEST(Entropy, HandValue) {
  const std::vector<double> p{0.5, 0.25, 0.25};
  const double oracle = -(0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25));
  EXPECT_NEAR(oracle, 1.03972, 1e-5);
  EXPECT_NEAR(entropy(p), oracle, 1e-12);
}

TEST(Entropy, PointMassIsZero) {
  EXPECT_EQ(entropy(std::vector<double>{0, 1, 0}), 0.0);
}

TEST(EntropyDelta, AbsoluteAndSigned) {
  const std::vector<double> flat{0.5, 0.5}, peaked{1, 0};
  const EntropyDelta d = entropy_delta(peaked, flat);
  EXPECT_NEAR(d.absolute, kLn2, 1e-12);
  EXPECT_NEAR(d.signed_value, -kLn2, 1e-12);
}

TEST(Uniform, Values) {
  EXPECT_EQ(uniform(2), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(uniform(1), (std::vector<double>{1.0}));
  EXPECT_THROW(uniform(0), InvalidArgument);
}

}  // namespace
}  // namespace riprism
