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

#include "riprism/session.h"

#include <gtest/gtest.h>

#include <cstring>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "riprism/chart_ops.h"
#include "riprism/error.h"
#include "riprism/mock_backend.h"

namespace riprism {
namespace {

std::shared_ptr<MockBackend> mock(MockMode mode, std::size_t dim, std::uint64_t seed,
                                  std::size_t layers = 1) {
  return std::make_shared<MockBackend>(MockBackendSpec{mode, dim, seed, layers});
}

// Reference FNV-1a over an explicit byte string.
std::uint64_t fnv_reference(const std::vector<unsigned char>& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

TEST(Fnv1a64, KnownVectors) {
  Fnv1a64 empty;
  EXPECT_EQ(empty.digest(), 0xcbf29ce484222325ULL);
  Fnv1a64 a;
  const unsigned char byte = 'a';
  a.update(std::span<const unsigned char>(&byte, 1));
  EXPECT_EQ(a.digest(), 0xaf63dc4c8601ec8cULL);
}

TEST(MockState, MatchesHandAssembledHash) {
  const MockBackendSpec spec{MockMode::kCausal, 4, 7, 1};
  const std::vector<std::string> prefix{"ab", "c"};
  std::vector<unsigned char> bytes;
  const auto le = [&](std::uint64_t v, int n) {
    for (int k = 0; k < n; ++k) bytes.push_back(static_cast<unsigned char>(v >> (8 * k)));
  };
  le(7, 8);
  le(0, 4);
  le(2, 4);
  le(3, 4);
  for (const char* tok : {"ab", "c"}) {
    bytes.insert(bytes.end(), tok, tok + std::strlen(tok));
    bytes.push_back(0);
  }
  const double expected = std::ldexp(static_cast<double>(fnv_reference(bytes) >> 11), -53);
  EXPECT_EQ(mock_state(spec, prefix, 2, 0, 3), expected);
  EXPECT_GE(expected, 0.0);
  EXPECT_LT(expected, 1.0);
}

TEST(MockState, CausalIgnoresRightContext) {
  const MockBackendSpec spec{MockMode::kCausal, 4, 1, 1};
  const std::vector<std::string> p1{"a"}, p3{"a", "b", "c"};
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_EQ(mock_state(spec, p1, 1, 0, c), mock_state(spec, p3, 1, 0, c));
  }
}

TEST(MockState, BidirectionalSeesRightContext) {
  const MockBackendSpec spec{MockMode::kBidirectional, 4, 7, 1};
  const std::vector<std::string> p1{"a"}, p2{"a", "b"};
  bool differs = false;
  for (std::size_t c = 0; c < 4; ++c) {
    differs |= mock_state(spec, p1, 1, 0, c) != mock_state(spec, p2, 1, 0, c);
  }
  EXPECT_TRUE(differs);
}

TEST(Session, BuildsPrismRowByRow) {
  Session session(mock(MockMode::kBidirectional, 3, 5, 2));
  EXPECT_FALSE(session.has_prism());
  EXPECT_THROW(session.prism(), InvalidArgument);
  for (const char* tok : {"the", "old", "man"}) session.feed(tok);
  const StatePrism& prism = session.prism();
  EXPECT_EQ(prism.rows(), 3u);
  EXPECT_EQ(prism.layers(), 2u);
  const std::vector<std::string> prefix{"the", "old"};
  const MockBackendSpec spec{MockMode::kBidirectional, 3, 5, 2};
  EXPECT_EQ(prism.vector(1, 2, 1)[2], mock_state(spec, prefix, 1, 1, 2));
  EXPECT_EQ(session.records().size(), 3u);
  EXPECT_EQ(session.records()[2].token, "man");
  session.reset();
  EXPECT_EQ(session.size(), 0u);
  EXPECT_FALSE(session.has_prism());
}

TEST(Session, StrictModeAcceptsDeterministicBackend) {
  Session session(mock(MockMode::kCausal, 2, 1), SessionOptions{std::nullopt, true});
  EXPECT_NO_THROW(session.feed("x"));
  EXPECT_NO_THROW(session.feed("y"));
}

class FlakyBackend : public Backend {
 public:
  BackendResult run(std::span<const std::string> prefix) override {
    BackendResult r;
    r.states.assign(1, std::vector<std::vector<double>>(
                           prefix.size(), std::vector<double>{static_cast<double>(calls_++)}));
    return r;
  }

 private:
  int calls_ = 0;
};

TEST(Session, StrictModeRejectsNondeterminismAndRollsBack) {
  Session session(std::make_shared<FlakyBackend>(), SessionOptions{std::nullopt, true});
  EXPECT_THROW(session.feed("x"), BackendError);
  EXPECT_EQ(session.size(), 0u);
}

class ParserBackend : public Backend {
 public:
  explicit ParserBackend(std::vector<ParseOutputs> steps) : steps_(std::move(steps)) {}
  BackendResult run(std::span<const std::string> prefix) override {
    BackendResult r;
    r.states.assign(1, std::vector<std::vector<double>>(prefix.size(),
                                                        std::vector<double>{1.0}));
    r.outputs = steps_.at(prefix.size() - 1);
    return r;
  }

 private:
  std::vector<ParseOutputs> steps_;
};

TEST(Session, RevisionPoints) {
  const std::vector<ParseOutputs> steps{
      {{0}, {0}}, {{2, 0}, {0, 0}}, {{3, 0, 2}, {0, 0, 0}}};
  Session session(std::make_shared<ParserBackend>(steps));
  for (const char* tok : {"a", "b", "c"}) session.feed(tok);
  const auto points = revision_points(session.records());
  // Token 1 moves from the root to token 2, then to token 3.
  using Point = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(points, (std::vector<Point>{{2, 1}, {3, 1}}));
}

TEST(Session, RejectsSelfHeadAndRollsBack) {
  const std::vector<ParseOutputs> steps{{{0}, {0}}, {{0, 2}, {0, 0}}};
  Session session(std::make_shared<ParserBackend>(steps));
  session.feed("a");
  EXPECT_THROW(session.feed("b"), BackendError);
  EXPECT_EQ(session.size(), 1u);
  EXPECT_EQ(session.prism().rows(), 1u);
}

TEST(Session, CausalMockGivesZeroPreviousChart) {
  Session session(mock(MockMode::kCausal, 8, 42, 3));
  for (int k = 0; k < 10; ++k) session.feed("w" + std::to_string(k % 4));
  for (std::size_t layer = 0; layer < 3; ++layer) {
    const TriChart chart =
        build_chart(session.prism(), layer, MetricKind::kCosine, Reference::kPrevious);
    for (double v : chart.cells()) EXPECT_EQ(v, 0.0);
  }
}

}  // namespace
}  // namespace riprism
