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

#ifndef RIPRISM_CHART_OPS_H_
#define RIPRISM_CHART_OPS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "riprism/state_prism.h"
#include "riprism/stimulus.h"
#include "riprism/tri_chart.h"

namespace riprism {

enum class MetricKind {
  kCosine,              // fixed-dimension prisms
  kJsd,                 // fixed-dimension prisms of probability vectors
  kEntropyDelta,        // |H(s_i^t) - H(s_i^ref)|, any prism kind
  kEntropyDeltaSigned,  // H(s_i^t) - H(s_i^ref), any prism kind
};

// Which timestep a state is compared against.
enum class Reference {
  kFirst,     // the diagonal step t = i where the token first appeared
  kPrevious,  // t - 1
  kFinal,     // the last timestep n
};

std::string_view to_string(Reference reference);
Reference parse_reference(std::string_view name);  // first | previous | last

// Reference timestep for row t and token i of an n-token chart. Returns 0
// when no reference exists (the diagonal under kPrevious).
std::size_t reference_step(Reference reference, std::size_t t, std::size_t i,
                           std::size_t n);

// Cell (t, i) = metric(s_i^t, s_i^ref(t)). Comparing a state with itself
// yields exactly 0. Under kPrevious the diagonal is zero-filled and the
// chart's fill policy says so.
TriChart build_chart(const StatePrism& prism, std::size_t layer,
                     MetricKind metric, Reference reference);

// Removes row and column `position`, re-indexing the surviving cells.
template <typename T>
TriangularChart<T> delete_token(const TriangularChart<T>& chart,
                                std::size_t position);

// Drops positions before `anchor`, so the chart starts at token `anchor`.
template <typename T>
TriangularChart<T> trim_to_anchor(const TriangularChart<T>& chart,
                                  std::size_t anchor);

// Aligns a stimulus chart with its baseline chart: NNC drops the trailing
// stimulus positions, NP/S and MVRR drop the added baseline tokens (highest
// position first), then both are trimmed to the alignment anchor.
template <typename T>
std::pair<TriangularChart<T>, TriangularChart<T>> realign_pair(
    const TriangularChart<T>& stimulus, const TriangularChart<T>& baseline,
    const StimulusPair& pair);

// Elementwise |a - b|. A cell missing in either input is missing.
TriChart abs_diff(const TriChart& a, const TriChart& b);

// Elementwise mean over the charts holding each cell; charts may differ in
// length and the result spans the longest one. Cells with no contributor
// stay missing. A running mean is used so k copies of a chart average back
// to that chart exactly.
TriChart mean_charts(std::span<const TriChart> charts);

// Entry k-1 is the mean of cells (t, t - k) for k = 1..k_max, skipping
// missing cells (NaN when a sub-diagonal has none).
std::vector<double> subdiagonal_means(const TriChart& chart, std::size_t k_max);

// Same as subdiagonal_means but every cell of every chart is pooled before
// averaging. Charts shorter than k + 1 simply contribute nothing to column k.
std::vector<double> pooled_subdiagonal_means(std::span<const TriChart> charts,
                                             std::size_t k_max);

}  // namespace riprism

#endif  // RIPRISM_CHART_OPS_H_
