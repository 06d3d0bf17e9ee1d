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

#ifndef RIPRISM_CLI_RUN_CLI_H_
#define RIPRISM_CLI_RUN_CLI_H_

namespace riprism::cli {

// Parses argv, dispatches to a subcommand and maps failures to exit codes:
// 0 success, 2 configuration error, 3 data error.
int run_cli(int argc, char** argv);

}  // namespace riprism::cli

#endif  // RIPRISM_CLI_RUN_CLI_H_
