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

#include "riprism/parse_timeline.h"

#include <string>

#include "riprism/error.h"
#include "riprism/metrics.h"

namespace riprism {

ParseTimeline::ParseTimeline(std::size_t label_count)
    : label_count_(label_count) {
  if (label_count == 0) throw InvalidArgument("label set must not be empty");
}

void ParseTimeline::append_timestep(std::vector<std::uint32_t> heads,
                                    std::vector<std::uint32_t> labels,
                                    std::span<const double> label_attn) {
  const std::size_t t = n_tokens() + 1;
  const std::string where = "timestep " + std::to_string(t) + ": ";
  if (heads.size() != t || labels.size() != t) {
    throw InvalidArgument(where + "heads and labels need one entry per token");
  }
  for (std::size_t i = 1; i <= t; ++i) {
    if (heads[i - 1] > t) throw InvalidArgument(where + "head index beyond the prefix");
    if (heads[i - 1] == i) throw InvalidArgument(where + "a token cannot be its own head");
    if (labels[i - 1] >= label_count_) throw InvalidArgument(where + "label index outside the label set");
  }
  const std::size_t c = label_count_;
  if (label_attn.size() != t * (t + 1) * c) {
    throw InvalidArgument(where + "label attention has " +
                          std::to_string(label_attn.size()) + " values, expected " +
                          std::to_string(t * (t + 1) * c));
  }
  for (std::size_t row = 0; row < t * (t + 1); ++row) {
    try {
      validate_distribution(label_attn.subspan(row * c, c));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + "label attention row for dependent " +
                            std::to_string(row / (t + 1) + 1) + ", head " +
                            std::to_string(row % (t + 1)) + ": " + e.what());
    }
  }
  heads_.push_back(std::move(heads));
  labels_.push_back(std::move(labels));
  attn_.emplace_back(label_attn.begin(), label_attn.end());
}

void ParseTimeline::check(std::size_t t, std::size_t i) const {
  if (t < 1 || t > n_tokens() || i < 1 || i > t) {
    throw InvalidArgument("token " + std::to_string(i) + " at timestep " +
                          std::to_string(t) + " not in a " +
                          std::to_string(n_tokens()) + "-step timeline");
  }
}

std::uint32_t ParseTimeline::head(std::size_t t, std::size_t i) const {
  check(t, i);
  return heads_[t - 1][i - 1];
}

std::uint32_t ParseTimeline::label(std::size_t t, std::size_t i) const {
  check(t, i);
  return labels_[t - 1][i - 1];
}

std::span<const std::uint32_t> ParseTimeline::heads(std::size_t t) const {
  check(t, 1);
  return heads_[t - 1];
}

std::span<const std::uint32_t> ParseTimeline::labels(std::size_t t) const {
  check(t, 1);
  return labels_[t - 1];
}

std::span<const double> ParseTimeline::label_attn(std::size_t t, std::size_t i,
                                                  std::size_t j) const {
  check(t, i);
  if (j > t) {
    throw InvalidArgument("no attention row for head " + std::to_string(j) +
                          " at timestep " + std::to_string(t));
  }
  const std::size_t c = label_count_;
  return std::span<const double>(attn_[t - 1])
      .subspan(((i - 1) * (t + 1) + j) * c, c);
}

std::span<const double> ParseTimeline::attn_block(std::size_t t) const {
  check(t, 1);
  return attn_[t - 1];
}

}  // namespace riprism
