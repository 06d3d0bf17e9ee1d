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

#ifndef RIPRISM_STIMULUS_H_
#define RIPRISM_STIMULUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace riprism {

enum class StimulusKind { kNNC, kNPS, kMVRR };

std::string_view to_string(StimulusKind kind);
// Accepts "NNC", "NPS" / "NP/S" and "MVRR". Throws InvalidArgument otherwise.
StimulusKind parse_stimulus_kind(std::string_view name);

// Positions are 1-based.
struct Anchors {
  std::size_t disambig_index = 0;  // disambiguating token in the stimulus
  std::vector<std::size_t> extra_token_indices;  // added baseline tokens
  std::size_t align_anchor = 1;   // first shared noun, in aligned coordinates
  std::size_t trailing_trim = 0;  // trailing stimulus positions dropped (NNC)
};

// A locally ambiguous stimulus with its unambiguous baseline. The optional
// control pair replaces the first verb with an unambiguous one and is used
// by the four-variant causal analysis.
struct StimulusPair {
  std::string pair_id;
  StimulusKind kind = StimulusKind::kNNC;
  std::vector<std::string> stimulus_tokens;
  std::vector<std::string> baseline_tokens;
  Anchors anchors;
  std::optional<std::vector<std::string>> control_stimulus_tokens;
  std::optional<std::vector<std::string>> control_baseline_tokens;

  bool has_controls() const {
    return control_stimulus_tokens.has_value() &&
           control_baseline_tokens.has_value();
  }

  // Length of both sequences after realignment, before anchor trimming.
  std::size_t aligned_length() const;
};

// Throws InvalidArgument describing the first violated anchor invariant.
void validate(const StimulusPair& pair);

}  // namespace riprism

#endif  // RIPRISM_STIMULUS_H_
