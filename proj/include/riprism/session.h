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

#ifndef RIPRISM_SESSION_H_
#define RIPRISM_SESSION_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riprism/state_prism.h"

namespace riprism {

// Per-token outputs of a parser at one timestep. Heads are 0 for the root.
struct ParseOutputs {
  std::vector<std::uint32_t> heads;
  std::vector<std::uint32_t> labels;

  bool operator==(const ParseOutputs&) const = default;
};

struct BackendResult {
  // states[layer][position][component], one entry per prefix position.
  std::vector<std::vector<std::vector<double>>> states;
  std::optional<ParseOutputs> outputs;
};

// A non-incremental model: maps a whole token sequence to its states and,
// optionally, its outputs. It is always called on the full prefix.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual BackendResult run(std::span<const std::string> prefix) = 0;
};

// Everything produced at timestep t. The states live in the session prism.
struct PrefixRecord {
  std::size_t t = 0;
  std::string token;
  std::optional<ParseOutputs> outputs;
};

struct SessionOptions {
  // Shape of the backend's state vectors. When unset the first call decides
  // it, as a fixed dimension.
  std::optional<PrismShape> shape;
  // Call the backend twice per feed and fail if the results differ.
  bool strict = false;
};

// Restart-incremental wrapper around a Backend. Every feed re-runs the
// backend from scratch on the whole prefix and appends the resulting states
// as a new row of the prism.
//
// A session is single-writer; distinct sessions may run concurrently.
class Session {
 public:
  explicit Session(std::shared_ptr<Backend> backend, SessionOptions options = {});

  const PrefixRecord& feed(std::string token);

  // Forgets all fed tokens, states and records; keeps the backend.
  void reset();

  std::size_t size() const { return tokens_.size(); }
  std::span<const std::string> fed_tokens() const { return tokens_; }
  std::span<const PrefixRecord> records() const { return records_; }

  // Throws InvalidArgument before the first feed.
  const StatePrism& prism() const;
  bool has_prism() const { return prism_.has_value(); }

 private:
  std::shared_ptr<Backend> backend_;
  SessionOptions options_;
  std::vector<std::string> tokens_;
  std::optional<StatePrism> prism_;
  std::vector<PrefixRecord> records_;
};

// Every (t, i), i < t, where token i's head or label differs between
// timesteps t - 1 and t. First appearances on the diagonal are not listed.
std::vector<std::pair<std::size_t, std::size_t>> revision_points(
    std::span<const PrefixRecord> records);

}  // namespace riprism

#endif  // RIPRISM_SESSION_H_
