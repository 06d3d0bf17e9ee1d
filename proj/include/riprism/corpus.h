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

#ifndef RIPRISM_CORPUS_H_
#define RIPRISM_CORPUS_H_

#include <string>
#include <string_view>
#include <vector>

#include "riprism/stimulus.h"

namespace riprism {

// Reads a JSON-lines corpus, one stimulus pair per non-blank line:
//
//   {"pair_id": "mvrr-01", "kind": "MVRR",
//    "stimulus": ["The", "professor", ...],
//    "baseline": ["The", "professor", "who", "was", ...],
//    "anchors": {"disambig_index": 6, "extra_token_indices": [3, 4],
//                "align_anchor": 2, "trailing_trim": 0},
//    "control_stimulus": [...], "control_baseline": [...]}
//
// "extra_token_indices", "align_anchor" (default 1) and "trailing_trim"
// (default 0) are optional, as are the two control sequences. Every pair is
// validated; errors carry the 1-based line number.
std::vector<StimulusPair> read_corpus(std::string_view text);

// One corpus line (no trailing newline) that read_corpus accepts.
std::string write_corpus_line(const StimulusPair& pair);

}  // namespace riprism

#endif  // RIPRISM_CORPUS_H_
