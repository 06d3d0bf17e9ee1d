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

#ifndef RIPRISM_DUMP_IO_H_
#define RIPRISM_DUMP_IO_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "riprism/parse_timeline.h"
#include "riprism/state_prism.h"

namespace riprism {

// ISDUMP01 binary layout:
//
//   magic        8 bytes, "ISDUMP01"
//   header_len   u32 little-endian
//   header       header_len bytes of UTF-8 JSON (keys sorted, no spaces)
//   payload      little-endian f32 / u32 values
//
// kind "states": for t = 1..n, for layer = 0..L-1, for i = 1..t, one vector
// of width(t) f32 values (d, or t(+1) for prefix-sized prisms).
// kind "parse_timeline": for t = 1..n: t u32 heads, t u32 labels, then for
// i = 1..t, j = 0..t, C f32 label probabilities.
inline constexpr std::string_view kDumpMagic = "ISDUMP01";
inline constexpr int kDumpVersion = 1;

enum class DumpKind { kStates, kParseTimeline };

struct DumpHeader {
  DumpKind kind = DumpKind::kStates;
  std::size_t layers = 0;  // states only
  std::size_t tokens = 0;
  std::size_t dim = 0;     // states with fixed dimension
  bool prefix_sized = false;  // states whose width grows with t
  bool root_slot = false;     // prefix-sized states with a root component
  std::size_t labels = 0;  // parse timelines only
  std::string model_id;
  std::string stimulus_id;
  std::vector<std::string> token_strings;

  bool operator==(const DumpHeader&) const = default;
};

// Exact payload size in bytes implied by a header.
std::size_t payload_size(const DumpHeader& header);

// Header describing `prism` with the given metadata.
DumpHeader make_states_header(const StatePrism& prism, std::string model_id,
                              std::string stimulus_id,
                              std::vector<std::string> token_strings);
DumpHeader make_timeline_header(const ParseTimeline& timeline,
                                std::string model_id, std::string stimulus_id,
                                std::vector<std::string> token_strings);

// Values are narrowed to f32. Throws InvalidArgument when the header does
// not describe the data.
std::string write_state_dump(const StatePrism& prism, const DumpHeader& header);
std::string write_timeline_dump(const ParseTimeline& timeline,
                                const DumpHeader& header);

struct StateDump {
  DumpHeader header;
  StatePrism prism;
};

struct TimelineDump {
  DumpHeader header;
  ParseTimeline timeline;
};

// Throw FormatError on a bad magic, malformed header, or a payload whose
// length differs from the shape formula.
DumpHeader read_dump_header(std::string_view bytes);
StateDump read_state_dump(std::string_view bytes);
TimelineDump read_timeline_dump(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace riprism

#endif  // RIPRISM_DUMP_IO_H_
