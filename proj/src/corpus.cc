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

#include "riprism/corpus.h"

#include <set>

#include "json.hpp"
#include "riprism/error.h"

namespace riprism {
namespace {

using json = nlohmann::json;

std::vector<std::string> tokens_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw FormatError(std::string("missing token list '") + key + "'");
  }
  std::vector<std::string> out;
  for (const json& t : *it) {
    if (!t.is_string()) throw FormatError(std::string("non-string token in '") + key + "'");
    out.push_back(t.get<std::string>());
  }
  return out;
}

std::size_t index_field(const json& j, const char* key, std::size_t fallback,
                        bool required) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (required) throw FormatError(std::string("missing anchor '") + key + "'");
    return fallback;
  }
  if (!it->is_number_unsigned()) {
    throw FormatError(std::string("anchor '") + key + "' must be a nonnegative integer");
  }
  return it->get<std::size_t>();
}

StimulusPair parse_pair(const json& j) {
  if (!j.is_object()) throw FormatError("line is not a JSON object");
  static const std::set<std::string> known = {
      "pair_id", "kind", "stimulus", "baseline", "anchors",
      "control_stimulus", "control_baseline"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw FormatError("unknown field '" + key + "'");
  }
  StimulusPair pair;
  const auto id = j.find("pair_id");
  if (id == j.end() || !id->is_string()) throw FormatError("missing string 'pair_id'");
  pair.pair_id = id->get<std::string>();
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw FormatError("missing string 'kind'");
  try {
    pair.kind = parse_stimulus_kind(kind->get<std::string>());
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  pair.stimulus_tokens = tokens_field(j, "stimulus");
  pair.baseline_tokens = tokens_field(j, "baseline");
  const auto anchors = j.find("anchors");
  if (anchors == j.end() || !anchors->is_object()) {
    throw FormatError("missing object 'anchors'");
  }
  static const std::set<std::string> anchor_keys = {
      "disambig_index", "extra_token_indices", "align_anchor", "trailing_trim"};
  for (const auto& [key, value] : anchors->items()) {
    if (!anchor_keys.count(key)) throw FormatError("unknown anchor '" + key + "'");
  }
  pair.anchors.disambig_index = index_field(*anchors, "disambig_index", 0, true);
  pair.anchors.align_anchor = index_field(*anchors, "align_anchor", 1, false);
  pair.anchors.trailing_trim = index_field(*anchors, "trailing_trim", 0, false);
  const auto extra = anchors->find("extra_token_indices");
  if (extra != anchors->end()) {
    if (!extra->is_array()) throw FormatError("'extra_token_indices' must be a list");
    for (const json& p : *extra) {
      if (!p.is_number_unsigned()) throw FormatError("extra token index must be a nonnegative integer");
      pair.anchors.extra_token_indices.push_back(p.get<std::size_t>());
    }
  }
  if (j.contains("control_stimulus")) {
    pair.control_stimulus_tokens = tokens_field(j, "control_stimulus");
  }
  if (j.contains("control_baseline")) {
    pair.control_baseline_tokens = tokens_field(j, "control_baseline");
  }
  try {
    validate(pair);
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  return pair;
}

}  // namespace

std::vector<StimulusPair> read_corpus(std::string_view text) {
  std::vector<StimulusPair> pairs;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    try {
      StimulusPair pair = parse_pair(json::parse(line));
      if (!ids.insert(pair.pair_id).second) {
        throw FormatError("duplicate pair_id '" + pair.pair_id + "'");
      }
      pairs.push_back(std::move(pair));
    } catch (const json::exception& e) {
      throw FormatError("corpus line " + std::to_string(line_no) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return pairs;
}

std::string write_corpus_line(const StimulusPair& pair) {
  json j;
  j["pair_id"] = pair.pair_id;
  j["kind"] = std::string(to_string(pair.kind));
  j["stimulus"] = pair.stimulus_tokens;
  j["baseline"] = pair.baseline_tokens;
  j["anchors"] = {
      {"disambig_index", pair.anchors.disambig_index},
      {"extra_token_indices", pair.anchors.extra_token_indices},
      {"align_anchor", pair.anchors.align_anchor},
      {"trailing_trim", pair.anchors.trailing_trim},
  };
  if (pair.control_stimulus_tokens) j["control_stimulus"] = *pair.control_stimulus_tokens;
  if (pair.control_baseline_tokens) j["control_baseline"] = *pair.control_baseline_tokens;
  return j.dump();
}

}  // namespace riprism
