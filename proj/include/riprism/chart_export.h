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

#ifndef RIPRISM_CHART_EXPORT_H_
#define RIPRISM_CHART_EXPORT_H_

#include <string>
#include <string_view>

#include "riprism/meaning.h"
#include "riprism/tri_chart.h"

namespace riprism {

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// CSV with header "t,i,value" and one row per present cell, t then i
// ascending. Missing cells are omitted.
std::string export_chart_csv(const TriChart& chart);
// Boolean charts are written with values 0 and 1.
std::string export_chart_csv(const MaskChart& chart);
// Header "layer,t,i,value".
std::string export_layers_csv(const LayerChartSet& charts);

// {"fill_policy": "computed"|"zero_filled", "n_tokens": n,
//  "rows": [[c11], [c21, c22], ...]} with null for missing cells.
std::string export_chart_json(const TriChart& chart);
// {"layers": [<chart>, ...]}
std::string export_layers_json(const LayerChartSet& charts);

TriChart parse_chart_json(std::string_view text);
LayerChartSet parse_layers_json(std::string_view text);

}  // namespace riprism

#endif  // RIPRISM_CHART_EXPORT_H_
