// Copyright 2026 The EGP Authors
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

#ifndef EGP_TOOLS_CLI_H_
#define EGP_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "config.h"

namespace egp::cli {

// Entry point behind the `egp` binary. `args` excludes the program name.
// Returns the process exit status: 0 on success, 1 on runtime errors and 2 on
// usage errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Subcommands, callable directly with a resolved configuration. Each writes
// only inside config.out.
absl::Status CmdPartition(const RunConfig& config, std::ostream& log);
absl::Status CmdSimulate(const RunConfig& config, std::ostream& log);
absl::Status CmdSigmaReport(const RunConfig& config, std::ostream& log);

}  // namespace egp::cli

#endif  // EGP_TOOLS_CLI_H_
