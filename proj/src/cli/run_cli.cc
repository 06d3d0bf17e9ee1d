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

#include "cli/run_cli.h"

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "riprism/error.h"

namespace riprism::cli {
namespace {

void add_common_flags(CLI::App* sub, RunConfig& config, std::string& reference,
                      std::string& aggregation) {
  sub->add_option("--corpus", config.corpus_path, "Corpus JSON-lines file")->required();
  sub->add_option("--dumps", config.dumps_dir, "Directory of .isd dumps")->required();
  sub->add_option("--out", config.out_dir, "Output directory")->required();
  sub->add_option("--layer", config.layer, "Restrict output to one layer");
  sub->add_option("--reference", reference, "Reference timestep")
      ->check(CLI::IsMember({"first", "previous", "last"}));
  sub->add_option("--tau", config.tau, "Shift threshold in nats");
  sub->add_option("--agg", aggregation, "Aggregation over items")
      ->check(CLI::IsMember({"pooled", "per-item"}));
  sub->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Incremental state and parse analysis over prefix dumps", "riprism"};
  app.require_subcommand(1);

  RunConfig config;
  std::string reference;
  std::string aggregation;
  std::string mode = "meaning";

  CLI::App* meaning = app.add_subcommand("meaning", "Embedding-dynamics charts per kind");
  CLI::App* dep = app.add_subcommand("dep", "Parse-shift charts and alignment statistics");
  CLI::App* table1 = app.add_subcommand("table1", "Baseline variation by lookahead");
  for (CLI::App* sub : {meaning, dep, table1}) {
    add_common_flags(sub, config, reference, aggregation);
  }
  table1->add_option("--k-max", config.k_max, "Largest lookahead k");
  table1->add_option("--mode", mode, "Chart source")
      ->check(CLI::IsMember({"meaning", "dp"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (!reference.empty()) config.reference = parse_reference(reference);
    if (aggregation == "pooled") config.aggregation = Aggregation::kPooled;
    if (aggregation == "per-item") config.aggregation = Aggregation::kPerItem;
    config.table1_mode = mode == "dp" ? Table1Mode::kDependency : Table1Mode::kMeaning;
    validate_config(config);
    if (meaning->parsed()) {
      config.command = "meaning";
      return cmd_meaning(config);
    }
    if (dep->parsed()) {
      config.command = "dep";
      return cmd_dep(config);
    }
    config.command = "table1";
    return cmd_table1(config);
  } catch (const ConfigError& e) {
    std::cerr << "riprism: configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "riprism: data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "riprism: data error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace riprism::cli
