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

#ifndef RIPRISM_PARSE_TIMELINE_H_
#define RIPRISM_PARSE_TIMELINE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace riprism {

// Parser outputs recorded at every timestep of a restart-incremental run:
// predicted heads and labels for tokens 1..t, and the label distribution of
// every candidate arc (dependent i in 1..t, head j in 0..t) over C labels.
// Head 0 is the root; the root has no row as a dependent.
class ParseTimeline {
 public:
  ParseTimeline() = default;
  explicit ParseTimeline(std::size_t label_count);

  std::size_t label_count() const { return label_count_; }
  std::size_t n_tokens() const { return heads_.size(); }

  // Adds timestep t = n_tokens() + 1. `label_attn` holds t * (t + 1) * C
  // values ordered [dependent i][head j][label]. Rows must be valid
  // probability vectors.
  void append_timestep(std::vector<std::uint32_t> heads,
                       std::vector<std::uint32_t> labels,
                       std::span<const double> label_attn);

  std::uint32_t head(std::size_t t, std::size_t i) const;
  std::uint32_t label(std::size_t t, std::size_t i) const;
  std::span<const std::uint32_t> heads(std::size_t t) const;
  std::span<const std::uint32_t> labels(std::size_t t) const;

  // p(y | arc(i, j)) at timestep t.
  std::span<const double> label_attn(std::size_t t, std::size_t i,
                                     std::size_t j) const;
  std::span<const double> attn_block(std::size_t t) const;

  friend bool operator==(const ParseTimeline&, const ParseTimeline&) = default;

 private:
  void check(std::size_t t, std::size_t i) const;

  std::size_t label_count_ = 0;
  std::vector<std::vector<std::uint32_t>> heads_;
  std::vector<std::vector<std::uint32_t>> labels_;
  std::vector<std::vector<double>> attn_;
};

}  // namespace riprism

#endif  // RIPRISM_PARSE_TIMELINE_H_
