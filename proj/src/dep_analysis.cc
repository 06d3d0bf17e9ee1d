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

#include "riprism/dep_analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "riprism/error.h"

namespace riprism {
namespace {

void require_same_shape(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": charts of " +
                          std::to_string(a) + " and " + std::to_string(b) +
                          " tokens");
  }
}

}  // namespace

double label_jsd(const ParseTimeline& timeline, std::size_t i,
                 std::size_t t_from, std::size_t t_to) {
  if (i < 1 || i > std::min(t_from, t_to)) {
    throw InvalidArgument("label_jsd: token " + std::to_string(i) +
                          " not present at both timesteps");
  }
  const std::size_t h_n = timeline.head(t_from, i);
  const std::size_t h_m = timeline.head(t_to, i);
  if (h_n == h_m) {
    return jsd(timeline.label_attn(t_from, i, h_n),
               timeline.label_attn(t_to, i, h_n));
  }
  const std::vector<double> flat = uniform(timeline.label_count());
  const std::span<const double> q1 =
      h_n <= t_to ? timeline.label_attn(t_to, i, h_n)
                  : std::span<const double>(flat);
  const std::span<const double> q2 =
      h_m <= t_from ? timeline.label_attn(t_from, i, h_m)
                    : std::span<const double>(flat);
  const double term1 = jsd(timeline.label_attn(t_from, i, h_n), q1);
  const double term2 = jsd(q2, timeline.label_attn(t_to, i, h_m));
  return 0.5 * (term1 + term2);
}

TriChart jsd_chart(const ParseTimeline& timeline, Reference reference) {
  const std::size_t n = timeline.n_tokens();
  TriChart chart(n);
  if (reference == Reference::kPrevious) {
    chart.set_fill_policy(DiagonalFill::kZeroFilled);
  }
  for (std::size_t t = 1; t <= n; ++t) {
    for (std::size_t i = 1; i <= t; ++i) {
      const std::size_t ref = reference_step(reference, t, i, n);
      chart.set(t, i, ref == 0 || ref == t ? 0.0 : label_jsd(timeline, i, ref, t));
    }
  }
  return chart;
}

MaskChart detect_edits(const ParseTimeline& timeline, EditTarget target) {
  const std::size_t n = timeline.n_tokens();
  MaskChart edits(n, false);
  for (std::size_t t = 2; t <= n; ++t) {
    for (std::size_t i = 1; i < t; ++i) {
      const bool changed =
          target == EditTarget::kArc
              ? timeline.head(t, i) != timeline.head(t - 1, i)
              : timeline.label(t, i) != timeline.label(t - 1, i);
      edits.set(t, i, changed);
    }
  }
  return edits;
}

MaskChart detect_shifts(const TriChart& chart, double tau) {
  MaskChart shifts(chart.n_tokens(), false);
  for (std::size_t t = 2; t <= chart.n_tokens(); ++t) {
    for (std::size_t i = 1; i < t; ++i) {
      if (!chart.is_missing(t, i) && chart.at(t, i) > tau) shifts.set(t, i, true);
    }
  }
  return shifts;
}

ConfusionCounts confusion(const MaskChart& pred, const MaskChart& truth) {
  require_same_shape(pred.n_tokens(), truth.n_tokens(), "confusion");
  ConfusionCounts c;
  for (std::size_t t = 2; t <= pred.n_tokens(); ++t) {
    for (std::size_t i = 1; i < t; ++i) {
      const bool p = pred.at(t, i);
      const bool y = truth.at(t, i);
      if (p && y) ++c.tp;
      else if (!p && !y) ++c.tn;
      else if (p) ++c.fp;
      else ++c.fn;
    }
  }
  return c;
}

double mcc(const ConfusionCounts& c) {
  const double tp = static_cast<double>(c.tp);
  const double tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(denom);
}

double mcc(const MaskChart& pred, const MaskChart& truth) {
  return mcc(confusion(pred, truth));
}

double average_precision(std::span<const RankedCell> cells) {
  std::vector<RankedCell> ranked(cells.begin(), cells.end());
  std::stable_sort(ranked.begin(), ranked.end(),
            [](const RankedCell& a, const RankedCell& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.t != b.t) return a.t < b.t;
              return a.i < b.i;
            });
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
    if (!ranked[rank].positive) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
  }
  if (hits == 0) {
    throw InvalidArgument("average precision needs at least one positive cell");
  }
  return sum / static_cast<double>(hits);
}

double average_precision(const TriChart& scores, const MaskChart& truth) {
  require_same_shape(scores.n_tokens(), truth.n_tokens(), "average_precision");
  std::vector<RankedCell> cells;
  for (std::size_t t = 2; t <= scores.n_tokens(); ++t) {
    for (std::size_t i = 1; i < t; ++i) {
      if (scores.is_missing(t, i)) continue;
      cells.push_back({scores.at(t, i), truth.at(t, i), t, i});
    }
  }
  return average_precision(cells);
}

double edit_ratio(const MaskChart& truth) {
  const std::size_t n = truth.n_tokens();
  if (n < 2) throw InvalidArgument("edit_ratio needs at least 2 tokens");
  std::size_t edits = 0;
  for (std::size_t t = 2; t <= n; ++t) {
    for (std::size_t i = 1; i < t; ++i) edits += truth.at(t, i) ? 1 : 0;
  }
  const std::size_t cells = n * (n - 1) / 2;
  return static_cast<double>(edits) / static_cast<double>(cells);
}

AlignmentStats alignment_stats(const TriChart& jsd_previous,
                               const MaskChart& edits, double tau) {
  AlignmentStats stats;
  stats.counts = confusion(detect_shifts(jsd_previous, tau), edits);
  stats.mcc = mcc(stats.counts);
  stats.edit_ratio = edit_ratio(edits);
  const bool any_positive = stats.counts.tp + stats.counts.fn > 0;
  stats.ap = any_positive ? average_precision(jsd_previous, edits)
                          : std::numeric_limits<double>::quiet_NaN();
  return stats;
}

}  // namespace riprism
