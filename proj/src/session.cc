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

#include <string>

#include "riprism/error.h"

namespace riprism {
namespace {

// Flattens backend states into the [layer][position][component] block of
// timestep t, validating every shape on the way.
std::vector<double> flatten(const BackendResult& result, std::size_t t,
                            std::size_t layers, const PrismShape& shape) {
  if (result.states.size() != layers) {
    throw BackendError("backend returned " +
                       std::to_string(result.states.size()) +
                       " layers, expected " + std::to_string(layers));
  }
  const std::size_t width = shape.width(t);
  std::vector<double> block;
  block.reserve(layers * t * width);
  for (const auto& layer : result.states) {
    if (layer.size() != t) {
      throw BackendError("backend returned " + std::to_string(layer.size()) +
                         " positions for a prefix of " + std::to_string(t));
    }
    for (const auto& v : layer) {
      if (v.size() != width) {
        throw BackendError("backend state has " + std::to_string(v.size()) +
                           " components, expected " + std::to_string(width));
      }
      block.insert(block.end(), v.begin(), v.end());
    }
  }
  if (result.outputs) {
    const ParseOutputs& o = *result.outputs;
    if (o.heads.size() != t || o.labels.size() != t) {
      throw BackendError("backend outputs must have one entry per position");
    }
    for (std::size_t i = 1; i <= t; ++i) {
      const std::uint32_t h = o.heads[i - 1];
      if (h > t) throw BackendError("head index beyond the prefix");
      if (h == i) throw BackendError("a token cannot be its own head");
    }
  }
  return block;
}

}  // namespace

Session::Session(std::shared_ptr<Backend> backend, SessionOptions options)
    : backend_(std::move(backend)), options_(options) {
  if (!backend_) throw InvalidArgument("session needs a backend");
}

const PrefixRecord& Session::feed(std::string token) {
  tokens_.push_back(std::move(token));
  const std::size_t t = tokens_.size();
  try {
    BackendResult result = backend_->run(tokens_);
    if (options_.strict) {
      BackendResult again = backend_->run(tokens_);
      if (again.states != result.states || again.outputs != result.outputs) {
        throw BackendError("backend is nondeterministic at timestep " +
                           std::to_string(t));
      }
    }
    if (!prism_) {
      if (result.states.empty() || result.states.front().empty()) {
        throw BackendError("backend returned no states");
      }
      const PrismShape shape =
          options_.shape.value_or(PrismShape::fixed(result.states[0][0].size()));
      prism_.emplace(result.states.size(), shape);
    }
    const std::vector<double> block =
        flatten(result, t, prism_->layers(), prism_->shape());
    prism_->append_timestep(block);
    records_.push_back({t, tokens_.back(), std::move(result.outputs)});
  } catch (...) {
    tokens_.pop_back();
    if (t == 1) prism_.reset();
    throw;
  }
  return records_.back();
}

void Session::reset() {
  tokens_.clear();
  prism_.reset();
  records_.clear();
}

const StatePrism& Session::prism() const {
  if (!prism_) throw InvalidArgument("session has not been fed yet");
  return *prism_;
}

std::vector<std::pair<std::size_t, std::size_t>> revision_points(
    std::span<const PrefixRecord> records) {
  for (const PrefixRecord& r : records) {
    if (!r.outputs) {
      throw InvalidArgument("revision_points needs records with outputs");
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const ParseOutputs& prev = *records[k - 1].outputs;
    const ParseOutputs& cur = *records[k].outputs;
    const std::size_t t = records[k].t;
    for (std::size_t i = 1; i < t && i <= prev.heads.size(); ++i) {
      if (cur.heads[i - 1] != prev.heads[i - 1] ||
          cur.labels[i - 1] != prev.labels[i - 1]) {
        out.emplace_back(t, i);
      }
    }
  }
  return out;
}

}  // namespace riprism
