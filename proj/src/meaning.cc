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

#include "riprism/meaning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riprism/error.h"
#include "riprism/metrics.h"

namespace riprism {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

LayerChartSet layer_differences(const StatePrism& stimulus,
                                const StatePrism& baseline,
                                const StimulusPair& pair, Reference reference) {
  if (stimulus.layers() != baseline.layers()) {
    throw InvalidArgument("pair '" + pair.pair_id +
                          "': stimulus and baseline prisms differ in layers");
  }
  LayerChartSet out;
  out.reserve(stimulus.layers());
  for (std::size_t layer = 0; layer < stimulus.layers(); ++layer) {
    const TriChart cs = build_chart(stimulus, layer, MetricKind::kCosine, reference);
    const TriChart cb = build_chart(baseline, layer, MetricKind::kCosine, reference);
    auto [s, b] = realign_pair(cs, cb, pair);
    out.push_back(abs_diff(s, b));
  }
  return out;
}

void require_kind(const StimulusPair& pair, bool ok, const char* pipeline) {
  if (!ok) {
    throw InvalidArgument(std::string(pipeline) + " does not handle " +
                          std::string(to_string(pair.kind)) + " pair '" +
                          pair.pair_id + "'");
  }
}

struct MeanCell {
  double mean = 0.0;
  std::size_t count = 0;
  void add(double x) {
    ++count;
    mean += (x - mean) / static_cast<double>(count);
  }
};

}  // namespace

PairAnalysis nnc_pipeline(const StatePrism& stimulus, const StatePrism& baseline,
                          const StimulusPair& pair, Reference reference) {
  require_kind(pair, pair.kind == StimulusKind::kNNC, "nnc_pipeline");
  PairAnalysis result;
  result.charts = layer_differences(stimulus, baseline, pair, reference);
  const std::size_t last = pair.aligned_length();
  if (last >= 1 && last <= pair.baseline_tokens.size() &&
      pair.stimulus_tokens[last - 1] != pair.baseline_tokens[last - 1]) {
    result.warnings.push_back(
        "pair '" + pair.pair_id + "': aligned position " + std::to_string(last) +
        " compares stimulus token '" + pair.stimulus_tokens[last - 1] +
        "' with baseline token '" + pair.baseline_tokens[last - 1] + "'");
  }
  return result;
}

PairAnalysis final_ref_pipeline(const StatePrism& stimulus,
                                const StatePrism& baseline,
                                const StimulusPair& pair, Reference reference) {
  require_kind(pair, pair.kind != StimulusKind::kNNC, "final_ref_pipeline");
  return {layer_differences(stimulus, baseline, pair, reference), {}};
}

PairAnalysis pair_pipeline(const StatePrism& stimulus, const StatePrism& baseline,
                           const StimulusPair& pair,
                           std::optional<Reference> reference) {
  if (pair.kind == StimulusKind::kNNC) {
    return nnc_pipeline(stimulus, baseline, pair,
                        reference.value_or(Reference::kPrevious));
  }
  return final_ref_pipeline(stimulus, baseline, pair,
                            reference.value_or(Reference::kFinal));
}

LayerChartSet mean_layer_charts(std::span<const LayerChartSet> sets) {
  if (sets.empty()) throw InvalidArgument("no chart sets to average");
  const std::size_t layers = sets.front().size();
  LayerChartSet out;
  std::vector<TriChart> column;
  for (std::size_t layer = 0; layer < layers; ++layer) {
    column.clear();
    for (const LayerChartSet& s : sets) {
      if (s.size() != layers) {
        throw InvalidArgument("chart sets disagree on the number of layers");
      }
      column.push_back(s[layer]);
    }
    out.push_back(mean_charts(column));
  }
  return out;
}

Table1 table1_pipeline(std::span<const Table1Item> items, std::size_t k_max,
                       Table1Mode mode, Aggregation aggregation,
                       std::optional<std::size_t> layer) {
  if (k_max == 0) throw InvalidArgument("k_max must be positive");
  Table1 table;
  table.k_max = k_max;
  const MetricKind metric = mode == Table1Mode::kMeaning
                                ? MetricKind::kCosine
                                : MetricKind::kEntropyDelta;
  for (StimulusKind kind :
       {StimulusKind::kMVRR, StimulusKind::kNPS, StimulusKind::kNNC}) {
    std::vector<TriChart> charts;
    for (const Table1Item& item : items) {
      if (item.kind != kind) continue;
      const StatePrism& prism = item.prism.get();
      const std::size_t l = layer.value_or(
          mode == Table1Mode::kMeaning ? prism.layers() - 1 : 0);
      charts.push_back(build_chart(prism, l, metric, Reference::kPrevious));
    }
    if (charts.empty()) continue;
    const std::size_t depth =
        kind == StimulusKind::kNNC ? std::min(k_max, kNncMaxLookahead) : k_max;
    std::vector<double> values;
    if (aggregation == Aggregation::kPooled) {
      values = pooled_subdiagonal_means(charts, depth);
    } else {
      std::vector<MeanCell> acc(depth);
      for (const TriChart& c : charts) {
        const std::vector<double> m = subdiagonal_means(c, depth);
        for (std::size_t k = 0; k < depth; ++k) {
          if (!std::isnan(m[k])) acc[k].add(m[k]);
        }
      }
      values.assign(depth, kNaN);
      for (std::size_t k = 0; k < depth; ++k) {
        if (acc[k].count > 0) values[k] = acc[k].mean;
      }
    }
    values.resize(k_max, kNaN);
    table.rows.push_back({kind, std::move(values)});
  }
  return table;
}

StateSequence::StateSequence(std::size_t layers, std::size_t positions,
                             std::size_t dim, std::vector<double> data)
    : layers_(layers), positions_(positions), dim_(dim), data_(std::move(data)) {
  if (data_.size() != layers * positions * dim) {
    throw InvalidArgument("state sequence data does not match its shape");
  }
}

StateSequence StateSequence::from_final_row(const StatePrism& prism) {
  if (prism.shape().kind != DimKind::kFixed) {
    throw InvalidArgument("single-pass states need a fixed-dimension prism");
  }
  if (!prism.complete() || prism.rows() == 0) {
    throw InvalidArgument("single-pass states need a complete prism");
  }
  const std::size_t n = prism.rows();
  const auto block = prism.timestep_block(n);
  return StateSequence(prism.layers(), n, prism.shape().dim,
                       std::vector<double>(block.begin(), block.end()));
}

std::span<const double> StateSequence::at(std::size_t layer,
                                          std::size_t position) const {
  if (layer >= layers_ || position < 1 || position > positions_) {
    throw InvalidArgument("state (" + std::to_string(layer) + "," +
                          std::to_string(position) + ") outside the sequence");
  }
  return std::span<const double>(data_).subspan(
      (layer * positions_ + position - 1) * dim_, dim_);
}

CausalResult causal_pipeline(const StateSequence& a, const StateSequence& b,
                             const StateSequence& c, const StateSequence& d,
                             std::span<const std::size_t> extra_indices,
                             std::size_t align_anchor) {
  const std::size_t layers = a.layers();
  if (b.layers() != layers || c.layers() != layers || d.layers() != layers) {
    throw InvalidArgument("causal variants differ in layer count");
  }
  if (b.positions() != a.positions() + extra_indices.size() ||
      d.positions() != c.positions() + extra_indices.size() ||
      c.positions() != a.positions()) {
    throw InvalidArgument("causal variant lengths do not align");
  }
  std::vector<std::size_t> kept;  // baseline positions shared with (a)
  for (std::size_t p = 1; p <= b.positions(); ++p) {
    if (std::find(extra_indices.begin(), extra_indices.end(), p) ==
        extra_indices.end()) {
      kept.push_back(p);
    }
  }
  if (kept.size() != a.positions()) {
    throw InvalidArgument("extra token indices outside the baseline");
  }
  if (align_anchor < 1 || align_anchor > a.positions()) {
    throw InvalidArgument("alignment anchor outside the causal stimulus");
  }
  CausalResult out;
  out.difference.resize(layers);
  out.d_ab.resize(layers);
  out.d_cd.resize(layers);
  for (std::size_t layer = 0; layer < layers; ++layer) {
    for (std::size_t k = align_anchor; k <= a.positions(); ++k) {
      const double dab = cosine_distance(a.at(layer, k), b.at(layer, kept[k - 1]));
      const double dcd = cosine_distance(c.at(layer, k), d.at(layer, kept[k - 1]));
      out.d_ab[layer].push_back(dab);
      out.d_cd[layer].push_back(dcd);
      out.difference[layer].push_back(std::abs(dab - dcd));
    }
  }
  return out;
}

CausalResult mean_causal(std::span<const CausalResult> results) {
  if (results.empty()) throw InvalidArgument("no causal results to average");
  const std::size_t layers = results.front().difference.size();
  const auto average = [&](auto member) {
    std::vector<std::vector<double>> out(layers);
    for (std::size_t layer = 0; layer < layers; ++layer) {
      std::vector<MeanCell> acc;
      for (const CausalResult& r : results) {
        if (r.difference.size() != layers) {
          throw InvalidArgument("causal results disagree on layer count");
        }
        const std::vector<double>& row = (r.*member)[layer];
        if (acc.size() < row.size()) acc.resize(row.size());
        for (std::size_t k = 0; k < row.size(); ++k) acc[k].add(row[k]);
      }
      for (const MeanCell& m : acc) out[layer].push_back(m.mean);
    }
    return out;
  };
  return {average(&CausalResult::difference), average(&CausalResult::d_ab),
          average(&CausalResult::d_cd)};
}

}  // namespace riprism
