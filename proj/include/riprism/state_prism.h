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

#ifndef RIPRISM_STATE_PRISM_H_
#define RIPRISM_STATE_PRISM_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace riprism {

enum class DimKind {
  kFixed,        // every state vector has the same length d
  kPrefixSized,  // vectors at timestep t have length t (+1 with a root slot)
};

// Describes the length of the state vectors stored in a prism.
struct PrismShape {
  DimKind kind = DimKind::kFixed;
  std::size_t dim = 0;     // only meaningful for kFixed
  bool root_slot = false;  // only meaningful for kPrefixSized

  static PrismShape fixed(std::size_t d) { return {DimKind::kFixed, d, false}; }
  static PrismShape prefix_sized(bool root) {
    return {DimKind::kPrefixSized, 0, root};
  }

  // Length of one state vector computed at timestep t.
  std::size_t width(std::size_t t) const {
    return kind == DimKind::kFixed ? dim : t + (root_slot ? 1 : 0);
  }

  // Component index holding token position j (1-based) in a prefix-sized
  // vector. The root, when present, occupies component 0.
  std::size_t component_of(std::size_t j) const {
    return j - 1 + (root_slot ? 1 : 0);
  }

  bool operator==(const PrismShape&) const = default;
};

// The memory of all recomputed states s_i^t for every layer, timestep t and
// token position i <= t. Storage is timestep-major: the block for timestep t
// holds, for each layer, the t vectors s_1^t .. s_t^t back to back.
class StatePrism {
 public:
  StatePrism() = default;
  StatePrism(std::size_t layers, PrismShape shape);

  std::size_t layers() const { return layers_; }
  const PrismShape& shape() const { return shape_; }

  // Number of timesteps stored so far.
  std::size_t rows() const { return row_offset_.size(); }

  // Declared sentence length if one was set, otherwise rows().
  std::size_t n_tokens() const { return expected_tokens_.value_or(rows()); }
  void set_expected_tokens(std::size_t n) { expected_tokens_ = n; }
  bool complete() const { return rows() == n_tokens(); }

  // Number of doubles in the block for timestep t.
  std::size_t block_size(std::size_t t) const {
    return layers_ * t * shape_.width(t);
  }

  // Appends the states for the next timestep. `block` is laid out as
  // [layer][position][component] with block_size(rows() + 1) entries.
  void append_timestep(std::span<const double> block);

  std::span<const double> timestep_block(std::size_t t) const;

  // State vector of token i at timestep t in the given layer.
  std::span<const double> vector(std::size_t layer, std::size_t t,
                                 std::size_t i) const;

  // Total number of stored vectors across all layers.
  std::size_t vector_count() const;

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const StatePrism& a, const StatePrism& b) {
    return a.layers_ == b.layers_ && a.shape_ == b.shape_ &&
           a.n_tokens() == b.n_tokens() && a.data_ == b.data_;
  }

 private:
  std::size_t layers_ = 0;
  PrismShape shape_;
  std::optional<std::size_t> expected_tokens_;
  std::vector<double> data_;
  std::vector<std::size_t> row_offset_;
};

// Removes token `position` (1-based): its timestep row, its vectors in every
// later timestep and, for prefix-sized prisms, its component in every vector.
StatePrism delete_token(const StatePrism& prism, std::size_t position);

}  // namespace riprism

#endif  // RIPRISM_STATE_PRISM_H_
