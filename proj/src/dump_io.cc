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

#include "riprism/dump_io.h"

#include <bit>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "riprism/error.h"

namespace riprism {
namespace {

using json = nlohmann::json;

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

void put_f32(std::string& out, double v) {
  put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

std::size_t checked_size(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_unsigned()) {
    throw FormatError(std::string("dump header: missing or invalid '") + key + "'");
  }
  return it->get<std::size_t>();
}

std::string checked_string(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw FormatError(std::string("dump header: missing or invalid '") + key + "'");
  }
  return it->get<std::string>();
}

bool checked_bool(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_boolean()) {
    throw FormatError(std::string("dump header: missing or invalid '") + key + "'");
  }
  return it->get<bool>();
}

std::string encode_header(const DumpHeader& h) {
  json j;
  j["version"] = kDumpVersion;
  j["dtype"] = "f32le";
  j["tokens"] = h.tokens;
  j["model_id"] = h.model_id;
  j["stimulus_id"] = h.stimulus_id;
  j["token_strings"] = h.token_strings;
  if (h.kind == DumpKind::kStates) {
    j["kind"] = "states";
    j["layers"] = h.layers;
    j["dim"] = h.prefix_sized ? 0 : h.dim;
    j["dim_kind"] = h.prefix_sized ? "prefix_sized" : "fixed";
    j["root_slot"] = h.prefix_sized && h.root_slot;
  } else {
    j["kind"] = "parse_timeline";
    j["labels"] = h.labels;
  }
  try {
    return j.dump();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("dump header not encodable: ") + e.what());
  }
}

// Splits a dump into its decoded header and raw payload.
std::pair<DumpHeader, std::string_view> split_dump(std::string_view bytes) {
  if (bytes.size() < kDumpMagic.size() + 4 ||
      bytes.substr(0, kDumpMagic.size()) != kDumpMagic) {
    throw FormatError("not an ISDUMP01 file (bad magic)");
  }
  std::uint32_t len = 0;
  for (int k = 0; k < 4; ++k) {
    len |= static_cast<std::uint32_t>(
               static_cast<unsigned char>(bytes[kDumpMagic.size() + k]))
           << (8 * k);
  }
  const std::size_t start = kDumpMagic.size() + 4;
  if (bytes.size() - start < len) throw FormatError("dump truncated inside the header");
  json j;
  try {
    j = json::parse(bytes.substr(start, len));
  } catch (const json::exception& e) {
    throw FormatError(std::string("dump header is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("dump header is not a JSON object");
  DumpHeader h;
  if (checked_size(j, "version") != static_cast<std::size_t>(kDumpVersion)) {
    throw FormatError("unsupported dump version");
  }
  if (checked_string(j, "dtype") != "f32le") throw FormatError("unsupported dtype");
  const std::string kind = checked_string(j, "kind");
  h.tokens = checked_size(j, "tokens");
  h.model_id = checked_string(j, "model_id");
  h.stimulus_id = checked_string(j, "stimulus_id");
  const auto ts = j.find("token_strings");
  if (ts == j.end() || !ts->is_array()) throw FormatError("dump header: missing 'token_strings'");
  for (const json& s : *ts) {
    if (!s.is_string()) throw FormatError("dump header: non-string token");
    h.token_strings.push_back(s.get<std::string>());
  }
  if (h.token_strings.size() != h.tokens) {
    throw FormatError("dump header: token_strings length differs from tokens");
  }
  if (kind == "states") {
    h.kind = DumpKind::kStates;
    h.layers = checked_size(j, "layers");
    h.dim = checked_size(j, "dim");
    const std::string dim_kind = checked_string(j, "dim_kind");
    if (dim_kind != "fixed" && dim_kind != "prefix_sized") {
      throw FormatError("dump header: unknown dim_kind '" + dim_kind + "'");
    }
    h.prefix_sized = dim_kind == "prefix_sized";
    h.root_slot = checked_bool(j, "root_slot");
    if (h.layers == 0) throw FormatError("dump header: zero layers");
    if (!h.prefix_sized && h.dim == 0) throw FormatError("dump header: zero dim");
    if (h.prefix_sized && h.dim != 0) throw FormatError("dump header: prefix-sized dump with dim");
  } else if (kind == "parse_timeline") {
    h.kind = DumpKind::kParseTimeline;
    h.labels = checked_size(j, "labels");
    if (h.labels == 0) throw FormatError("dump header: zero labels");
  } else {
    throw FormatError("dump header: unknown kind '" + kind + "'");
  }
  const std::string_view payload = bytes.substr(start + len);
  if (payload.size() != payload_size(h)) {
    throw FormatError("dump payload has " + std::to_string(payload.size()) +
                      " bytes, shape formula requires " +
                      std::to_string(payload_size(h)));
  }
  return {h, payload};
}

class PayloadReader {
 public:
  explicit PayloadReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + k]))
           << (8 * k);
    }
    pos_ += 4;
    return v;
  }
  double f32() { return static_cast<double>(std::bit_cast<float>(u32())); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string frame(const DumpHeader& header, std::string_view payload) {
  const std::string head = encode_header(header);
  std::string out(kDumpMagic);
  put_u32(out, static_cast<std::uint32_t>(head.size()));
  out += head;
  out += payload;
  return out;
}

}  // namespace

std::size_t payload_size(const DumpHeader& h) {
  std::size_t values = 0;
  if (h.kind == DumpKind::kStates) {
    const PrismShape shape = h.prefix_sized ? PrismShape::prefix_sized(h.root_slot)
                                            : PrismShape::fixed(h.dim);
    for (std::size_t t = 1; t <= h.tokens; ++t) values += h.layers * t * shape.width(t);
  } else {
    for (std::size_t t = 1; t <= h.tokens; ++t) {
      values += 2 * t + t * (t + 1) * h.labels;
    }
  }
  return 4 * values;
}

DumpHeader make_states_header(const StatePrism& prism, std::string model_id,
                              std::string stimulus_id,
                              std::vector<std::string> token_strings) {
  DumpHeader h;
  h.kind = DumpKind::kStates;
  h.layers = prism.layers();
  h.tokens = prism.rows();
  h.prefix_sized = prism.shape().kind == DimKind::kPrefixSized;
  h.dim = h.prefix_sized ? 0 : prism.shape().dim;
  h.root_slot = h.prefix_sized && prism.shape().root_slot;
  h.model_id = std::move(model_id);
  h.stimulus_id = std::move(stimulus_id);
  h.token_strings = std::move(token_strings);
  return h;
}

DumpHeader make_timeline_header(const ParseTimeline& timeline,
                                std::string model_id, std::string stimulus_id,
                                std::vector<std::string> token_strings) {
  DumpHeader h;
  h.kind = DumpKind::kParseTimeline;
  h.tokens = timeline.n_tokens();
  h.labels = timeline.label_count();
  h.model_id = std::move(model_id);
  h.stimulus_id = std::move(stimulus_id);
  h.token_strings = std::move(token_strings);
  return h;
}

std::string write_state_dump(const StatePrism& prism, const DumpHeader& header) {
  const DumpHeader expected =
      make_states_header(prism, header.model_id, header.stimulus_id,
                         header.token_strings);
  if (header.kind != DumpKind::kStates || !prism.complete() ||
      header.layers != expected.layers || header.tokens != expected.tokens ||
      header.prefix_sized != expected.prefix_sized ||
      header.dim != expected.dim || header.root_slot != expected.root_slot) {
    throw InvalidArgument("dump header does not describe the prism");
  }
  if (header.token_strings.size() != header.tokens) {
    throw InvalidArgument("dump header needs one token string per token");
  }
  std::string payload;
  payload.reserve(4 * prism.data().size());
  for (double v : prism.data()) put_f32(payload, v);
  return frame(header, payload);
}

std::string write_timeline_dump(const ParseTimeline& timeline,
                                const DumpHeader& header) {
  if (header.kind != DumpKind::kParseTimeline ||
      header.tokens != timeline.n_tokens() ||
      header.labels != timeline.label_count()) {
    throw InvalidArgument("dump header does not describe the timeline");
  }
  if (header.token_strings.size() != header.tokens) {
    throw InvalidArgument("dump header needs one token string per token");
  }
  std::string payload;
  payload.reserve(payload_size(header));
  for (std::size_t t = 1; t <= timeline.n_tokens(); ++t) {
    for (std::uint32_t h : timeline.heads(t)) put_u32(payload, h);
    for (std::uint32_t l : timeline.labels(t)) put_u32(payload, l);
    for (double p : timeline.attn_block(t)) put_f32(payload, p);
  }
  return frame(header, payload);
}

DumpHeader read_dump_header(std::string_view bytes) {
  return split_dump(bytes).first;
}

StateDump read_state_dump(std::string_view bytes) {
  auto [header, payload] = split_dump(bytes);
  if (header.kind != DumpKind::kStates) throw FormatError("dump is not of kind 'states'");
  const PrismShape shape = header.prefix_sized
                               ? PrismShape::prefix_sized(header.root_slot)
                               : PrismShape::fixed(header.dim);
  StatePrism prism(header.layers, shape);
  prism.set_expected_tokens(header.tokens);
  PayloadReader reader(payload);
  std::vector<double> block;
  for (std::size_t t = 1; t <= header.tokens; ++t) {
    block.resize(prism.block_size(t));
    for (double& v : block) v = reader.f32();
    prism.append_timestep(block);
  }
  return {std::move(header), std::move(prism)};
}

TimelineDump read_timeline_dump(std::string_view bytes) {
  auto [header, payload] = split_dump(bytes);
  if (header.kind != DumpKind::kParseTimeline) {
    throw FormatError("dump is not of kind 'parse_timeline'");
  }
  ParseTimeline timeline(header.labels);
  PayloadReader reader(payload);
  for (std::size_t t = 1; t <= header.tokens; ++t) {
    std::vector<std::uint32_t> heads(t);
    std::vector<std::uint32_t> labels(t);
    for (auto& h : heads) h = reader.u32();
    for (auto& l : labels) l = reader.u32();
    std::vector<double> attn(t * (t + 1) * header.labels);
    for (double& p : attn) p = reader.f32();
    try {
      timeline.append_timestep(std::move(heads), std::move(labels), attn);
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("invalid parse timeline: ") + e.what());
    }
  }
  return {std::move(header), std::move(timeline)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace riprism
