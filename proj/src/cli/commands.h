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

#ifndef RIPRISM_CLI_COMMANDS_H_
#define RIPRISM_CLI_COMMANDS_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "riprism/chart_ops.h"
#include "riprism/dep_analysis.h"
#include "riprism/meaning.h"

namespace riprism::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;

// Bad flags or flag values that only turn out invalid against the data.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string corpus_path;
  std::string dumps_dir;
  std::string out_dir;
  std::optional<std::size_t> layer;
  std::optional<Reference> reference;
  double tau = kDefaultShiftThreshold;
  // Unset means the command's default: pooled for table1, per-item for dep.
  std::optional<Aggregation> aggregation;
  std::size_t k_max = 7;
  Table1Mode table1_mode = Table1Mode::kMeaning;
  std::size_t jobs = 1;
};

// Throws ConfigError unless tau is in (0, ln 2] and the paths are set.
void validate_config(const RunConfig& config);

// Dump file for one corpus item and role, e.g. "<dumps>/np-3.baseline.states.isd".
// Suffix is "states", "parse" or "arcs".
std::string dump_path(const RunConfig& config, const std::string& pair_id,
                      const std::string& role, const std::string& suffix);

// Each command writes under <out>/<command>/ and returns an exit code.
// ConfigError and riprism::Error propagate to the caller.
int cmd_meaning(const RunConfig& config);
int cmd_dep(const RunConfig& config);
int cmd_table1(const RunConfig& config);

}  // namespace riprism::cli

#endif  // RIPRISM_CLI_COMMANDS_H_
