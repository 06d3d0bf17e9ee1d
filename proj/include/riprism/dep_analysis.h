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

#ifndef RIPRISM_DEP_ANALYSIS_H_
#define RIPRISM_DEP_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "riprism/chart_ops.h"
#include "riprism/metrics.h"
#include "riprism/parse_timeline.h"
#include "riprism/tri_chart.h"

namespace riprism {

// Shift threshold: 45% of the JSD upper bound.
inline constexpr double kDefaultShiftThreshold = 0.45 * kLn2;

// Divergence between the label distributions of token i at two timesteps.
//
// With h_n = head(i) at t_from and h_m = head(i) at t_to: when the heads
// agree, the label distributions of arc (i, h_n) are compared directly.
// Otherwise the result is the mean of
//   JSD(p(y | i, h_n)^{t_from}, q1)  with q1 = p(y | i, h_n)^{t_to} if
//                                     h_n <= t_to, else uniform(C)
//   JSD(q2, p(y | i, h_m)^{t_to})    with q2 = p(y | i, h_m)^{t_from} if
//                                     h_m <= t_from, else uniform(C)
double label_jsd(const ParseTimeline& timeline, std::size_t i,
                 std::size_t t_from, std::size_t t_to);

// Cell (t, i) = label_jsd(timeline, i, ref(t), t). The diagonal under a
// previous-step reference is zero-filled.
TriChart jsd_chart(const ParseTimeline& timeline, Reference reference);

enum class EditTarget { kArc, kLabel };

// Cell (t, i), i < t, is true iff token i's head (or label) changed between
// timesteps t - 1 and t. The diagonal is always false.
MaskChart detect_edits(const ParseTimeline& timeline, EditTarget target);

// Cell is true iff its value is strictly greater than tau. Missing cells and
// the diagonal are false.
MaskChart detect_shifts(const TriChart& chart,
                        double tau = kDefaultShiftThreshold);

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

// Counts over off-diagonal cells only.
ConfusionCounts confusion(const MaskChart& pred, const MaskChart& truth);

// Matthews correlation coefficient; 0 when any marginal is empty.
double mcc(const ConfusionCounts& counts);
double mcc(const MaskChart& pred, const MaskChart& truth);

// A scored cell for ranking. Coordinates break score ties.
struct RankedCell {
  double score = 0.0;
  bool positive = false;
  std::size_t t = 0;
  std::size_t i = 0;
};

// Mean precision at the rank of every positive, ranking by descending score
// and then ascending (t, i). Throws InvalidArgument without positives.
double average_precision(std::span<const RankedCell> cells);

// Off-diagonal, non-missing cells of `scores` ranked against `truth`.
double average_precision(const TriChart& scores, const MaskChart& truth);

// Fraction of off-diagonal cells that are true. Needs at least 2 tokens.
double edit_ratio(const MaskChart& truth);

struct AlignmentStats {
  ConfusionCounts counts;
  double mcc = 0.0;
  double ap = 0.0;   // NaN when the truth chart has no positive cell
  double edit_ratio = 0.0;
};

// Shift-vs-edit alignment for one timeline: shifts come from the
// previous-reference JSD chart thresholded at tau.
AlignmentStats alignment_stats(const TriChart& jsd_previous,
                               const MaskChart& edits,
                               double tau = kDefaultShiftThreshold);

}  // namespace riprism

#endif  // RIPRISM_DEP_ANALYSIS_H_
