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

#include "riprism/state_prism.h"

#include <string>

#include "riprism/error.h"

namespace riprism {

StatePrism::StatePrism(std::size_t layers, PrismShape shape)
    : layers_(layers), shape_(shape) {
  if (layers == 0) throw InvalidArgument("a prism needs at least one layer");
  if (shape.kind == DimKind::kFixed && shape.dim == 0) {
    throw InvalidArgument("fixed-dimension prism with dim 0");
  }
}

void StatePrism::append_timestep(std::span<const double> block) {
  const std::size_t t = rows() + 1;
  if (expected_tokens_ && t > *expected_tokens_) {
    throw InvalidArgument("prism already holds all " +
                          std::to_string(*expected_tokens_) + " timesteps");
  }
  if (block.size() != block_size(t)) {
    throw InvalidArgument("timestep " + std::to_string(t) + " block has " +
                          std::to_string(block.size()) + " values, expected " +
                          std::to_string(block_size(t)));
  }
  row_offset_.push_back(data_.size());
  data_.insert(data_.end(), block.begin(), block.end());
}

std::span<const double> StatePrism::timestep_block(std::size_t t) const {
  if (t < 1 || t > rows()) {
    throw InvalidArgument("timestep " + std::to_string(t) +
                          " not stored in prism with " +
                          std::to_string(rows()) + " rows");
  }
  return std::span<const double>(data_).subspan(row_offset_[t - 1],
                                                block_size(t));
}

std::span<const double> StatePrism::vector(std::size_t layer, std::size_t t,
                                           std::size_t i) const {
  if (layer >= layers_) {
    throw InvalidArgument("layer " + std::to_string(layer) + " out of range [0," +
                          std::to_string(layers_) + ")");
  }
  if (i < 1 || i > t) {
    throw InvalidArgument("token " + std::to_string(i) +
                          " not present at timestep " + std::to_string(t));
  }
  const auto block = timestep_block(t);
  const std::size_t w = shape_.width(t);
  return block.subspan((layer * t + (i - 1)) * w, w);
}

std::size_t StatePrism::vector_count() const {
  const std::size_t n = rows();
  return layers_ * n * (n + 1) / 2;
}

StatePrism delete_token(const StatePrism& prism, std::size_t position) {
  const std::size_t n = prism.n_tokens();
  if (position < 1 || position > n) {
    throw InvalidArgument("cannot delete token " + std::to_string(position) +
                          " from a " + std::to_string(n) + "-token prism");
  }
  const PrismShape& shape = prism.shape();
  StatePrism out(prism.layers(), shape);
  if (!prism.complete()) {
    throw InvalidArgument("token deletion requires a complete prism");
  }
  out.set_expected_tokens(n - 1);

  std::vector<double> block;
  for (std::size_t t = 1; t <= n; ++t) {
    if (t == position) continue;
    block.clear();
    for (std::size_t layer = 0; layer < prism.layers(); ++layer) {
      for (std::size_t i = 1; i <= t; ++i) {
        if (i == position) continue;
        const auto v = prism.vector(layer, t, i);
        if (shape.kind == DimKind::kPrefixSized && position <= t) {
          const std::size_t drop = shape.component_of(position);
          for (std::size_t c = 0; c < v.size(); ++c) {
            if (c != drop) block.push_back(v[c]);
          }
        } else {
          block.insert(block.end(), v.begin(), v.end());
        }
      }
    }
    out.append_timestep(block);
  }
  return out;
}

}  // namespace riprism
