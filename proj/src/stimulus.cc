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

#include "riprism/stimulus.h"

#include <algorithm>
#include <set>

#include "riprism/error.h"

namespace riprism {

std::string_view to_string(StimulusKind kind) {
  switch (kind) {
    case StimulusKind::kNNC:
      return "NNC";
    case StimulusKind::kNPS:
      return "NPS";
    case StimulusKind::kMVRR:
      return "MVRR";
  }
  return "?";
}

StimulusKind parse_stimulus_kind(std::string_view name) {
  if (name == "NNC") return StimulusKind::kNNC;
  if (name == "NPS" || name == "NP/S") return StimulusKind::kNPS;
  if (name == "MVRR") return StimulusKind::kMVRR;
  throw InvalidArgument("unknown stimulus kind '" + std::string(name) + "'");
}

std::size_t StimulusPair::aligned_length() const {
  if (kind == StimulusKind::kNNC) {
    return stimulus_tokens.size() - anchors.trailing_trim;
  }
  return stimulus_tokens.size();
}

void validate(const StimulusPair& pair) {
  const auto fail = [&](const std::string& what) {
    throw InvalidArgument("pair '" + pair.pair_id + "': " + what);
  };
  const std::size_t ns = pair.stimulus_tokens.size();
  const std::size_t nb = pair.baseline_tokens.size();
  const Anchors& a = pair.anchors;
  if (ns == 0 || nb == 0) fail("empty token sequence");
  if (a.disambig_index < 1 || a.disambig_index > ns) {
    fail("disambig_index outside the stimulus");
  }
  std::set<std::size_t> seen;
  for (std::size_t p : a.extra_token_indices) {
    if (p < 1 || p > nb) fail("extra token index outside the baseline");
    if (!seen.insert(p).second) fail("duplicate extra token index");
  }
  if (pair.kind == StimulusKind::kNNC) {
    if (ns != nb + 1) fail("NNC stimulus must be exactly one token longer than its baseline");
    if (!a.extra_token_indices.empty()) fail("NNC pairs take no extra baseline tokens");
    if (a.trailing_trim != 1) fail("NNC pairs trim exactly one trailing position");
  } else {
    if (nb != ns + a.extra_token_indices.size()) {
      fail("baseline length must equal stimulus length plus extra tokens");
    }
    if (a.trailing_trim != 0) fail("trailing_trim applies to NNC pairs only");
  }
  if (a.align_anchor < 1 || a.align_anchor > pair.aligned_length()) {
    fail("align_anchor outside the aligned sequence");
  }
  if (pair.control_stimulus_tokens.has_value() !=
      pair.control_baseline_tokens.has_value()) {
    fail("control stimulus and control baseline must be given together");
  }
  if (pair.has_controls()) {
    const std::size_t cs = pair.control_stimulus_tokens->size();
    const std::size_t cb = pair.control_baseline_tokens->size();
    if (cs != ns || cb != nb) {
      fail("control variants must match the stimulus and baseline lengths");
    }
  }
}

}  // namespace riprism
