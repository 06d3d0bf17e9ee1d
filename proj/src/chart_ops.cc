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

#include "riprism/chart_ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riprism/error.h"
#include "riprism/metrics.h"

namespace riprism {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double apply_metric(MetricKind metric, std::span<const double> current,
                    std::span<const double> reference) {
  switch (metric) {
    case MetricKind::kCosine:
      return cosine_distance(current, reference);
    case MetricKind::kJsd:
      return jsd(current, reference);
    case MetricKind::kEntropyDelta:
      return entropy_delta(current, reference).absolute;
    case MetricKind::kEntropyDeltaSigned:
      return entropy_delta(current, reference).signed_value;
  }
  return kNaN;
}

// Running-mean accumulator for one cell.
struct MeanCell {
  double mean = 0.0;
  std::size_t count = 0;

  void add(double x) {
    ++count;
    mean += (x - mean) / static_cast<double>(count);
  }
};

}  // namespace

std::string_view to_string(Reference reference) {
  switch (reference) {
    case Reference::kFirst:
      return "first";
    case Reference::kPrevious:
      return "previous";
    case Reference::kFinal:
      return "last";
  }
  return "?";
}

Reference parse_reference(std::string_view name) {
  if (name == "first") return Reference::kFirst;
  if (name == "previous") return Reference::kPrevious;
  if (name == "last" || name == "final") return Reference::kFinal;
  throw InvalidArgument("unknown reference policy '" + std::string(name) + "'");
}

std::size_t reference_step(Reference reference, std::size_t t, std::size_t i,
                           std::size_t n) {
  switch (reference) {
    case Reference::kFirst:
      return i;
    case Reference::kPrevious:
      return t == i ? 0 : t - 1;
    case Reference::kFinal:
      return n;
  }
  return 0;
}

TriChart build_chart(const StatePrism& prism, std::size_t layer,
                     MetricKind metric, Reference reference) {
  if (layer >= prism.layers()) {
    throw InvalidArgument("layer " + std::to_string(layer) +
                          " out of range for a " +
                          std::to_string(prism.layers()) + "-layer prism");
  }
  if ((metric == MetricKind::kCosine || metric == MetricKind::kJsd) &&
      prism.shape().kind != DimKind::kFixed) {
    throw InvalidArgument(
        "cosine and JSD charts need a fixed-dimension prism; prefix-sized "
        "vectors change length between timesteps");
  }
  if (reference == Reference::kFinal && !prism.complete()) {
    throw InvalidArgument("final-step reference requires a complete prism");
  }
  const std::size_t n = prism.rows();
  TriChart chart(n);
  if (reference == Reference::kPrevious) {
    chart.set_fill_policy(DiagonalFill::kZeroFilled);
  }
  for (std::size_t t = 1; t <= n; ++t) {
    for (std::size_t i = 1; i <= t; ++i) {
      const std::size_t ref = reference_step(reference, t, i, n);
      if (ref == 0 || ref == t) {
        chart.set(t, i, 0.0);
        continue;
      }
      chart.set(t, i,
                apply_metric(metric, prism.vector(layer, t, i),
                             prism.vector(layer, ref, i)));
    }
  }
  return chart;
}

template <typename T>
TriangularChart<T> delete_token(const TriangularChart<T>& chart,
                                std::size_t position) {
  const std::size_t n = chart.n_tokens();
  if (position < 1 || position > n) {
    throw InvalidArgument("cannot delete token " + std::to_string(position) +
                          " from a " + std::to_string(n) + "-token chart");
  }
  TriangularChart<T> out(n - 1);
  out.set_fill_policy(chart.fill_policy());
  const auto old_index = [position](std::size_t k) {
    return k < position ? k : k + 1;
  };
  for (std::size_t t = 1; t < n; ++t) {
    for (std::size_t i = 1; i <= t; ++i) {
      const std::size_t ot = old_index(t);
      const std::size_t oi = old_index(i);
      if constexpr (std::is_floating_point_v<T>) {
        if (chart.is_missing(ot, oi)) continue;  // stays missing
      }
      out.set(t, i, chart.at(ot, oi));
    }
  }
  return out;
}

template <typename T>
TriangularChart<T> trim_to_anchor(const TriangularChart<T>& chart,
                                  std::size_t anchor) {
  if (anchor < 1 || anchor > chart.n_tokens()) {
    throw InvalidArgument("anchor " + std::to_string(anchor) +
                          " outside a " + std::to_string(chart.n_tokens()) +
                          "-token chart");
  }
  TriangularChart<T> out = chart;
  for (std::size_t k = 1; k < anchor; ++k) out = delete_token(out, 1);
  return out;
}

template <typename T>
std::pair<TriangularChart<T>, TriangularChart<T>> realign_pair(
    const TriangularChart<T>& stimulus, const TriangularChart<T>& baseline,
    const StimulusPair& pair) {
  TriangularChart<T> s = stimulus;
  TriangularChart<T> b = baseline;
  if (pair.kind == StimulusKind::kNNC) {
    for (std::size_t k = 0; k < pair.anchors.trailing_trim; ++k) {
      s = delete_token(s, s.n_tokens());
    }
  } else {
    std::vector<std::size_t> extra = pair.anchors.extra_token_indices;
    std::sort(extra.rbegin(), extra.rend());
    for (std::size_t p : extra) b = delete_token(b, p);
  }
  if (s.n_tokens() != b.n_tokens()) {
    throw InvalidArgument("pair '" + pair.pair_id + "': realigned charts have " +
                          std::to_string(s.n_tokens()) + " and " +
                          std::to_string(b.n_tokens()) + " tokens");
  }
  const std::size_t anchor = pair.anchors.align_anchor;
  return {trim_to_anchor(s, anchor), trim_to_anchor(b, anchor)};
}

template TriChart delete_token(const TriChart&, std::size_t);
template MaskChart delete_token(const MaskChart&, std::size_t);
template TriChart trim_to_anchor(const TriChart&, std::size_t);
template MaskChart trim_to_anchor(const MaskChart&, std::size_t);
template std::pair<TriChart, TriChart> realign_pair(const TriChart&,
                                                    const TriChart&,
                                                    const StimulusPair&);
template std::pair<MaskChart, MaskChart> realign_pair(const MaskChart&,
                                                      const MaskChart&,
                                                      const StimulusPair&);

TriChart abs_diff(const TriChart& a, const TriChart& b) {
  if (a.n_tokens() != b.n_tokens()) {
    throw InvalidArgument("abs_diff on charts of " +
                          std::to_string(a.n_tokens()) + " and " +
                          std::to_string(b.n_tokens()) + " tokens");
  }
  TriChart out(a.n_tokens());
  const bool both_zero_filled = a.fill_policy() == DiagonalFill::kZeroFilled &&
                                b.fill_policy() == DiagonalFill::kZeroFilled;
  out.set_fill_policy(both_zero_filled ? DiagonalFill::kZeroFilled
                                       : DiagonalFill::kComputed);
  for (std::size_t t = 1; t <= a.n_tokens(); ++t) {
    for (std::size_t i = 1; i <= t; ++i) {
      if (a.is_missing(t, i) || b.is_missing(t, i)) continue;
      out.set(t, i, std::abs(a.at(t, i) - b.at(t, i)));
    }
  }
  return out;
}

TriChart mean_charts(std::span<const TriChart> charts) {
  if (charts.empty()) throw InvalidArgument("mean_charts on an empty list");
  std::size_t n = 0;
  bool all_zero_filled = true;
  for (const TriChart& c : charts) {
    n = std::max(n, c.n_tokens());
    all_zero_filled =
        all_zero_filled && c.fill_policy() == DiagonalFill::kZeroFilled;
  }
  std::vector<MeanCell> acc(TriChart::cell_count(n));
  for (const TriChart& c : charts) {
    for (std::size_t t = 1; t <= c.n_tokens(); ++t) {
      for (std::size_t i = 1; i <= t; ++i) {
        if (!c.is_missing(t, i)) acc[TriChart::offset(t, i)].add(c.at(t, i));
      }
    }
  }
  TriChart out(n);
  out.set_fill_policy(all_zero_filled ? DiagonalFill::kZeroFilled
                                      : DiagonalFill::kComputed);
  for (std::size_t t = 1; t <= n; ++t) {
    for (std::size_t i = 1; i <= t; ++i) {
      const MeanCell& m = acc[TriChart::offset(t, i)];
      if (m.count > 0) out.set(t, i, m.mean);
    }
  }
  return out;
}

std::vector<double> subdiagonal_means(const TriChart& chart,
                                      std::size_t k_max) {
  if (k_max >= chart.n_tokens()) {
    throw InvalidArgument("k_max " + std::to_string(k_max) +
                          " needs a chart longer than " +
                          std::to_string(chart.n_tokens()) + " tokens");
  }
  return pooled_subdiagonal_means(std::span<const TriChart>(&chart, 1), k_max);
}

std::vector<double> pooled_subdiagonal_means(std::span<const TriChart> charts,
                                             std::size_t k_max) {
  std::vector<MeanCell> acc(k_max);
  for (const TriChart& c : charts) {
    for (std::size_t k = 1; k <= k_max; ++k) {
      for (std::size_t t = k + 1; t <= c.n_tokens(); ++t) {
        if (!c.is_missing(t, t - k)) acc[k - 1].add(c.at(t, t - k));
      }
    }
  }
  std::vector<double> out(k_max, kNaN);
  for (std::size_t k = 0; k < k_max; ++k) {
    if (acc[k].count > 0) out[k] = acc[k].mean;
  }
  return out;
}

}  // namespace riprism
