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

#ifndef RIPRISM_MEANING_H_
#define RIPRISM_MEANING_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riprism/chart_ops.h"
#include "riprism/state_prism.h"
#include "riprism/stimulus.h"
#include "riprism/tri_chart.h"

namespace riprism {

// One chart per layer; layer 0 is the embedding layer.
using LayerChartSet = std::vector<TriChart>;

struct PairAnalysis {
  LayerChartSet charts;               // |c_s' - c_b'| per layer
  std::vector<std::string> warnings;  // annotations, computation unaffected
};

// NNC: previous-step cosine charts for stimulus and baseline, stimulus
// trimmed by its trailing position(s), then the absolute difference.
// The aligned last position pairs the stimulus' second noun with the
// baseline's comma; a warning records that token mismatch.
PairAnalysis nnc_pipeline(const StatePrism& stimulus, const StatePrism& baseline,
                          const StimulusPair& pair,
                          Reference reference = Reference::kPrevious);

// NP/S and MVRR: final-step cosine charts, the added baseline tokens
// removed, both anchor-trimmed, then the absolute difference.
PairAnalysis final_ref_pipeline(const StatePrism& stimulus,
                                const StatePrism& baseline,
                                const StimulusPair& pair,
                                Reference reference = Reference::kFinal);

// Dispatches on pair.kind with that kind's default reference unless one is
// given.
PairAnalysis pair_pipeline(const StatePrism& stimulus, const StatePrism& baseline,
                           const StimulusPair& pair,
                           std::optional<Reference> reference = std::nullopt);

// Per-layer NaN-aware mean across pairs, folded in input order.
LayerChartSet mean_layer_charts(std::span<const LayerChartSet> sets);

enum class Aggregation {
  kPooled,   // every sub-diagonal cell of every item is averaged together
  kPerItem,  // per-item sub-diagonal means, then the mean over items
};

enum class Table1Mode {
  kMeaning,     // cosine distance to the previous state (fixed prisms)
  kDependency,  // |entropy variation| of the arc distribution (any prism)
};

struct Table1Item {
  StimulusKind kind;
  std::reference_wrapper<const StatePrism> prism;
};

struct Table1Row {
  StimulusKind kind;
  std::vector<double> values;  // k_max entries, NaN where undefined
};

struct Table1 {
  std::size_t k_max = 0;
  std::vector<Table1Row> rows;  // MVRR, NPS, NNC order; kinds present only
};

// Sub-diagonal k of NNC items is only reported up to this depth.
inline constexpr std::size_t kNncMaxLookahead = 4;

// Average effect of token w_{t+k} on earlier states over baseline items.
// `layer` defaults to the last layer in meaning mode and layer 0 otherwise.
Table1 table1_pipeline(std::span<const Table1Item> items, std::size_t k_max,
                       Table1Mode mode, Aggregation aggregation,
                       std::optional<std::size_t> layer = std::nullopt);

// Single-pass states of one sentence: [layer][position] vectors of length dim.
class StateSequence {
 public:
  StateSequence() = default;
  StateSequence(std::size_t layers, std::size_t positions, std::size_t dim,
                std::vector<double> data);

  // States of the final timestep of a complete fixed-dimension prism.
  static StateSequence from_final_row(const StatePrism& prism);

  std::size_t layers() const { return layers_; }
  std::size_t positions() const { return positions_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> at(std::size_t layer, std::size_t position) const;

 private:
  std::size_t layers_ = 0;
  std::size_t positions_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

struct CausalResult {
  // [layer][aligned token], aligned tokens start at the alignment anchor.
  std::vector<std::vector<double>> difference;  // |d_ab - d_cd|
  std::vector<std::vector<double>> d_ab;
  std::vector<std::vector<double>> d_cd;
};

// Four-variant comparison for causal models: (a) stimulus, (b) baseline,
// (c) control stimulus, (d) control baseline. Positions listed in
// `extra_indices` are skipped in (b) and (d); positions before
// `align_anchor` are dropped from the output.
CausalResult causal_pipeline(const StateSequence& a, const StateSequence& b,
                             const StateSequence& c, const StateSequence& d,
                             std::span<const std::size_t> extra_indices,
                             std::size_t align_anchor = 1);

// NaN-aware mean per layer and token over items of differing lengths.
CausalResult mean_causal(std::span<const CausalResult> results);

}  // namespace riprism

#endif  // RIPRISM_MEANING_H_
