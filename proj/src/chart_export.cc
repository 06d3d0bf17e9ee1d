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

#include "riprism/chart_export.h"

#include <charconv>

#include "json.hpp"
#include "riprism/error.h"

namespace riprism {
namespace {

using json = nlohmann::json;

json chart_to_json(const TriChart& chart) {
  json rows = json::array();
  for (std::size_t t = 1; t <= chart.n_tokens(); ++t) {
    json row = json::array();
    for (std::size_t i = 1; i <= t; ++i) {
      if (chart.is_missing(t, i)) {
        row.push_back(nullptr);
      } else {
        row.push_back(chart.at(t, i));
      }
    }
    rows.push_back(std::move(row));
  }
  json j;
  j["n_tokens"] = chart.n_tokens();
  j["fill_policy"] =
      chart.fill_policy() == DiagonalFill::kZeroFilled ? "zero_filled" : "computed";
  j["rows"] = std::move(rows);
  return j;
}

TriChart chart_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n_tokens") || !j.contains("rows")) {
    throw FormatError("chart JSON needs 'n_tokens' and 'rows'");
  }
  const json& n_json = j.at("n_tokens");
  if (!n_json.is_number_unsigned()) throw FormatError("'n_tokens' must be a count");
  const std::size_t n = n_json.get<std::size_t>();
  const json& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != n) {
    throw FormatError("chart JSON must have one row per token");
  }
  TriChart chart(n);
  if (j.contains("fill_policy")) {
    const std::string fill = j.at("fill_policy").get<std::string>();
    if (fill == "zero_filled") {
      chart.set_fill_policy(DiagonalFill::kZeroFilled);
    } else if (fill != "computed") {
      throw FormatError("unknown fill_policy '" + fill + "'");
    }
  }
  for (std::size_t t = 1; t <= n; ++t) {
    const json& row = rows[t - 1];
    if (!row.is_array() || row.size() != t) {
      throw FormatError("chart JSON row " + std::to_string(t) + " must have " +
                        std::to_string(t) + " cells");
    }
    for (std::size_t i = 1; i <= t; ++i) {
      const json& cell = row[i - 1];
      if (cell.is_null()) continue;
      if (!cell.is_number()) throw FormatError("chart cell is not a number");
      chart.set(t, i, cell.get<double>());
    }
  }
  return chart;
}

json parse_or_throw(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid chart JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string export_chart_csv(const TriChart& chart) {
  std::string out = "t,i,value\n";
  for (std::size_t t = 1; t <= chart.n_tokens(); ++t) {
    for (std::size_t i = 1; i <= t; ++i) {
      if (chart.is_missing(t, i)) continue;
      out += std::to_string(t) + "," + std::to_string(i) + "," +
             format_double(chart.at(t, i)) + "\n";
    }
  }
  return out;
}

std::string export_chart_csv(const MaskChart& chart) {
  std::string out = "t,i,value\n";
  for (std::size_t t = 1; t <= chart.n_tokens(); ++t) {
    for (std::size_t i = 1; i <= t; ++i) {
      out += std::to_string(t) + "," + std::to_string(i) + "," +
             (chart.at(t, i) ? "1" : "0") + "\n";
    }
  }
  return out;
}

std::string export_layers_csv(const LayerChartSet& charts) {
  std::string out = "layer,t,i,value\n";
  for (std::size_t layer = 0; layer < charts.size(); ++layer) {
    const TriChart& chart = charts[layer];
    for (std::size_t t = 1; t <= chart.n_tokens(); ++t) {
      for (std::size_t i = 1; i <= t; ++i) {
        if (chart.is_missing(t, i)) continue;
        out += std::to_string(layer) + "," + std::to_string(t) + "," +
               std::to_string(i) + "," + format_double(chart.at(t, i)) + "\n";
      }
    }
  }
  return out;
}

std::string export_chart_json(const TriChart& chart) {
  return chart_to_json(chart).dump() + "\n";
}

std::string export_layers_json(const LayerChartSet& charts) {
  json layers = json::array();
  for (const TriChart& c : charts) layers.push_back(chart_to_json(c));
  json j;
  j["layers"] = std::move(layers);
  return j.dump() + "\n";
}

TriChart parse_chart_json(std::string_view text) {
  try {
    return chart_from_json(parse_or_throw(text));
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid chart JSON: ") + e.what());
  }
}

LayerChartSet parse_layers_json(std::string_view text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("layers") || !j.at("layers").is_array()) {
    throw FormatError("layer chart JSON needs a 'layers' list");
  }
  LayerChartSet out;
  try {
    for (const json& c : j.at("layers")) out.push_back(chart_from_json(c));
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid chart JSON: ") + e.what());
  }
  return out;
}

}  // namespace riprism
