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

#include "riprism/mock_backend.h"

#include <array>
#include <cmath>

#include "riprism/error.h"

namespace riprism {

void Fnv1a64::update_u64(std::uint64_t v) {
  std::array<unsigned char, 8> bytes;
  for (std::size_t k = 0; k < 8; ++k) bytes[k] = (v >> (8 * k)) & 0xff;
  update(bytes);
}

void Fnv1a64::update_u32(std::uint32_t v) {
  std::array<unsigned char, 4> bytes;
  for (std::size_t k = 0; k < 4; ++k) bytes[k] = (v >> (8 * k)) & 0xff;
  update(bytes);
}

void Fnv1a64::update_string(std::string_view s) {
  update(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(s.data()), s.size()));
  const unsigned char nul = 0;
  update(std::span<const unsigned char>(&nul, 1));
}

double mock_state(const MockBackendSpec& spec,
                  std::span<const std::string> prefix, std::size_t position,
                  std::size_t layer, std::size_t component) {
  if (position < 1 || position > prefix.size()) {
    throw InvalidArgument("mock_state: position outside the prefix");
  }
  Fnv1a64 h;
  h.update_u64(spec.seed);
  h.update_u32(static_cast<std::uint32_t>(layer));
  h.update_u32(static_cast<std::uint32_t>(position));
  h.update_u32(static_cast<std::uint32_t>(component));
  const std::size_t visible =
      spec.mode == MockMode::kCausal ? position : prefix.size();
  for (std::size_t k = 0; k < visible; ++k) h.update_string(prefix[k]);
  return std::ldexp(static_cast<double>(h.digest() >> 11), -53);
}

MockBackend::MockBackend(MockBackendSpec spec) : spec_(spec) {
  if (spec.dim == 0 || spec.layers == 0) {
    throw InvalidArgument("mock backend needs dim > 0 and layers > 0");
  }
}

BackendResult MockBackend::run(std::span<const std::string> prefix) {
  BackendResult result;
  result.states.resize(spec_.layers);
  for (std::size_t layer = 0; layer < spec_.layers; ++layer) {
    auto& rows = result.states[layer];
    rows.resize(prefix.size());
    for (std::size_t i = 1; i <= prefix.size(); ++i) {
      auto& v = rows[i - 1];
      v.resize(spec_.dim);
      for (std::size_t c = 0; c < spec_.dim; ++c) {
        v[c] = mock_state(spec_, prefix, i, layer, c);
      }
    }
  }
  return result;
}

}  // namespace riprism
