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

#include "riprism/corpus.h"

#include <gtest/gtest.h>

#include <string>

#include "riprism/error.h"

namespace riprism {
namespace {

const char* kMvrr =
    R"({"pair_id":"mv-1","kind":"MVRR","stimulus":["The","nurse","sent","flowers","cried"],)"
    R"("baseline":["The","nurse","who","was","sent","flowers","cried"],)"
    R"("anchors":{"disambig_index":5,"extra_token_indices":[3,4],"align_anchor":2}})";

TEST(ReadCorpus, EmptyInput) {
  EXPECT_TRUE(read_corpus("").empty());
  EXPECT_TRUE(read_corpus("\n  \n").empty());
}

TEST(ReadCorpus, MvrrLine) {
  const auto pairs = read_corpus(kMvrr);
  ASSERT_EQ(pairs.size(), 1u);
  const StimulusPair& p = pairs[0];
  EXPECT_EQ(p.pair_id, "mv-1");
  EXPECT_EQ(p.kind, StimulusKind::kMVRR);
  EXPECT_EQ(p.anchors.extra_token_indices.size(), 2u);
  EXPECT_EQ(p.anchors.align_anchor, 2u);
  EXPECT_EQ(p.anchors.trailing_trim, 0u);
  EXPECT_FALSE(p.has_controls());
}

TEST(ReadCorpus, NncLengthViolationReportsLine) {
  const std::string text =
      std::string(kMvrr) + "\n" +
      R"({"pair_id":"n1","kind":"NNC","stimulus":["a","b","c","d"],"baseline":["a","b"],)"
      R"("anchors":{"disambig_index":4,"trailing_trim":1}})";
  try {
    read_corpus(text);
    FAIL() << "expected a format error";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("corpus line 2"), std::string::npos);
  }
}

TEST(ReadCorpus, SchemaErrors) {
  EXPECT_THROW(read_corpus("{not json"), FormatError);
  EXPECT_THROW(read_corpus(R"({"pair_id":"x"})"), FormatError);
  EXPECT_THROW(read_corpus(std::string(kMvrr) + "\n" + kMvrr), FormatError);
  std::string unknown = kMvrr;
  unknown.insert(1, R"("colour":"red",)");
  EXPECT_THROW(read_corpus(unknown), FormatError);
  std::string bad_kind = kMvrr;
  bad_kind.replace(bad_kind.find("MVRR"), 4, "XYZ");
  EXPECT_THROW(read_corpus(bad_kind), FormatError);
}

TEST(WriteCorpusLine, RoundTrip) {
  StimulusPair pair = read_corpus(kMvrr)[0];
  pair.control_stimulus_tokens = std::vector<std::string>{"The", "nurse", "given", "flowers", "cried"};
  pair.control_baseline_tokens =
      std::vector<std::string>{"The", "nurse", "who", "was", "given", "flowers", "cried"};
  const std::string line = write_corpus_line(pair);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const StimulusPair back = read_corpus(line)[0];
  EXPECT_EQ(write_corpus_line(back), line);
  EXPECT_TRUE(back.has_controls());
}

TEST(StimulusKind, Names) {
  EXPECT_EQ(parse_stimulus_kind("NP/S"), StimulusKind::kNPS);
  EXPECT_EQ(parse_stimulus_kind("NPS"), StimulusKind::kNPS);
  EXPECT_EQ(to_string(StimulusKind::kMVRR), "MVRR");
  EXPECT_THROW(parse_stimulus_kind("nnc?"), InvalidArgument);
}

TEST(Validate, AnchorInvariants) {
  StimulusPair pair = read_corpus(kMvrr)[0];
  EXPECT_NO_THROW(validate(pair));
  pair.anchors.align_anchor = 6;
  EXPECT_THROW(validate(pair), InvalidArgument);
  pair.anchors.align_anchor = 1;
  pair.anchors.extra_token_indices = {3, 3};
  EXPECT_THROW(validate(pair), InvalidArgument);
  pair.anchors.extra_token_indices = {3, 8};
  EXPECT_THROW(validate(pair), InvalidArgument);
}

}  // namespace
}  // namespace riprism
