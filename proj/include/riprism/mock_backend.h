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

#ifndef RIPRISM_MOCK_BACKEND_H_
#define RIPRISM_MOCK_BACKEND_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "riprism/session.h"

namespace riprism {

enum class MockMode { kCausal, kBidirectional };

struct MockBackendSpec {
  MockMode mode = MockMode::kBidirectional;
  std::size_t dim = 4;
  std::uint64_t seed = 0;
  std::size_t layers = 1;
};

// 64-bit FNV-1a.
class Fnv1a64 {
 public:
  static constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

  void update(std::span<const unsigned char> bytes) {
    for (unsigned char b : bytes) {
      state_ ^= b;
      state_ *= kPrime;
    }
  }
  void update_u64(std::uint64_t v);  // 8 bytes, little-endian
  void update_u32(std::uint32_t v);  // 4 bytes, little-endian
  void update_string(std::string_view s);  // bytes then a 0x00 terminator

  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = kOffsetBasis;
};

// Deterministic state component in [0, 1).
//
// Hash input, in order: seed (u64 LE), layer (u32 LE), position (u32 LE),
// component (u32 LE), then each token of the visible context as UTF-8 bytes
// followed by 0x00. The visible context is tokens 1..position in causal mode
// and the whole prefix in bidirectional mode. The 64-bit digest h maps to
// (h >> 11) * 2^-53, i.e. h / 2^64 truncated to double precision.
double mock_state(const MockBackendSpec& spec,
                  std::span<const std::string> prefix, std::size_t position,
                  std::size_t layer, std::size_t component);

// Test double for a sequence model built on mock_state. Outputs are absent.
class MockBackend : public Backend {
 public:
  explicit MockBackend(MockBackendSpec spec);
  BackendResult run(std::span<const std::string> prefix) override;
  const MockBackendSpec& spec() const { return spec_; }

 private:
  MockBackendSpec spec_;
};

}  // namespace riprism

#endif  // RIPRISM_MOCK_BACKEND_H_
