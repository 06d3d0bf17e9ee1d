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

#include "riprism/dump_io.h"

#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "riprism/error.h"
#include "test_support.h"

namespace riprism {
namespace {

std::vector<std::string> tokens(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back("w" + std::to_string(k));
  return out;
}

std::uint32_t header_length(const std::string& bytes) {
  std::uint32_t len = 0;
  for (int k = 0; k < 4; ++k) {
    len |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[8 + k])) << (8 * k);
  }
  return len;
}

TEST(PayloadSize, ShapeFormula) {
  StatePrism one(1, PrismShape::fixed(2));
  one.append_timestep(std::vector<double>{0.5, 0.25});
  EXPECT_EQ(payload_size(make_states_header(one, "m", "s", tokens(1))), 8u);
  StatePrism two(1, PrismShape::fixed(3));
  two.append_timestep(std::vector<double>(3, 1.0));
  two.append_timestep(std::vector<double>(6, 1.0));
  EXPECT_EQ(payload_size(make_states_header(two, "m", "s", tokens(2))), 36u);
}

TEST(StateDump, LayoutOfSmallestDump) {
  StatePrism one(1, PrismShape::fixed(2));
  one.append_timestep(std::vector<double>{0.5, 0.25});
  const std::string bytes = write_state_dump(one, make_states_header(one, "m", "s", {"a"}));
  EXPECT_EQ(bytes.substr(0, 8), "ISDUMP01");
  const std::uint32_t len = header_length(bytes);
  ASSERT_EQ(bytes.size(), 12 + len + 8u);
  const std::string header = bytes.substr(12, len);
  EXPECT_EQ(header.front(), '{');
  EXPECT_EQ(header.find(' '), std::string::npos);
  EXPECT_NE(header.find("\"dtype\":\"f32le\""), std::string::npos);
  EXPECT_NE(header.find("\"kind\":\"states\""), std::string::npos);
  float first = 0.0f;
  std::memcpy(&first, bytes.data() + 12 + len, 4);
  EXPECT_EQ(first, 0.5f);
}

TEST(StateDump, RoundTripFixedAndPrefixSized) {
  std::mt19937_64 rng(44);
  for (const PrismShape shape :
       {PrismShape::fixed(3), PrismShape::prefix_sized(true), PrismShape::prefix_sized(false)}) {
    const StatePrism prism = testing::random_prism(rng, 2, 5, shape, shape.kind != DimKind::kFixed);
    const DumpHeader header = make_states_header(prism, "mock", "pair-1", tokens(5));
    const std::string bytes = write_state_dump(prism, header);
    const StateDump back = read_state_dump(bytes);
    EXPECT_EQ(back.header, header);
    // Distributions are narrowed to f32, so compare through a second write.
    EXPECT_EQ(write_state_dump(back.prism, back.header), bytes);
    EXPECT_EQ(back.prism.shape(), shape);
  }
}

TEST(StateDump, ExactValuesSurvive) {
  std::mt19937_64 rng(45);
  const StatePrism prism = testing::random_prism(rng, 3, 4, PrismShape::fixed(2));
  const StateDump back =
      read_state_dump(write_state_dump(prism, make_states_header(prism, "", "", tokens(4))));
  EXPECT_EQ(back.prism.data(), prism.data());
}

TEST(StateDump, RejectsCorruption) {
  std::mt19937_64 rng(46);
  const StatePrism prism = testing::random_prism(rng, 1, 3, PrismShape::fixed(2));
  const std::string bytes =
      write_state_dump(prism, make_states_header(prism, "m", "s", tokens(3)));
  EXPECT_THROW(read_state_dump(bytes.substr(0, bytes.size() - 1)), FormatError);
  EXPECT_THROW(read_state_dump(bytes + '\0'), FormatError);
  std::string bad_magic = bytes;
  bad_magic[7] = '2';
  EXPECT_THROW(read_state_dump(bad_magic), FormatError);
  EXPECT_THROW(read_state_dump(bytes.substr(0, 10)), FormatError);
  std::string bad_len = bytes;
  bad_len[8] = static_cast<char>(0xff);
  bad_len[9] = static_cast<char>(0xff);
  EXPECT_THROW(read_state_dump(bad_len), FormatError);
}

TEST(StateDump, WriteRejectsInconsistentHeader) {
  std::mt19937_64 rng(47);
  const StatePrism prism = testing::random_prism(rng, 1, 3, PrismShape::fixed(2));
  DumpHeader header = make_states_header(prism, "m", "s", tokens(3));
  header.dim = 5;
  EXPECT_THROW(write_state_dump(prism, header), InvalidArgument);
  header = make_states_header(prism, "m", "s", tokens(2));
  EXPECT_THROW(write_state_dump(prism, header), InvalidArgument);
}

TEST(TimelineDump, RoundTrip) {
  std::mt19937_64 rng(48);
  const ParseTimeline timeline = testing::random_timeline(rng, 4, 3);
  const DumpHeader header = make_timeline_header(timeline, "parser", "p", tokens(4));
  const std::string bytes = write_timeline_dump(timeline, header);
  const TimelineDump back = read_timeline_dump(bytes);
  EXPECT_EQ(back.header, header);
  EXPECT_EQ(write_timeline_dump(back.timeline, back.header), bytes);
  for (std::size_t t = 1; t <= 4; ++t) {
    for (std::size_t i = 1; i <= t; ++i) {
      EXPECT_EQ(back.timeline.head(t, i), timeline.head(t, i));
      EXPECT_EQ(back.timeline.label(t, i), timeline.label(t, i));
    }
  }
  EXPECT_THROW(read_state_dump(bytes), FormatError);
  EXPECT_THROW(read_timeline_dump(bytes.substr(0, bytes.size() - 1)), FormatError);
}

TEST(Files, WriteThenRead) {
  const std::string path = ::testing::TempDir() + "riprism_dump_io_test.bin";
  const std::string payload("a\0b", 3);
  write_file(path, payload);
  EXPECT_EQ(read_file(path), payload);
  EXPECT_THROW(read_file(path + ".missing"), Error);
}

}  // namespace
}  // namespace riprism
