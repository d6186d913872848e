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

#ifndef EGP_TOOLS_CONFIG_H_
#define EGP_TOOLS_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "egp/graph.h"
#include "egp/outcome.h"
#include "egp/partition.h"
#include "json.hpp"

namespace egp::cli {

struct ModelSpec {
  OutcomeKind kind = OutcomeKind::kLinear;
  std::vector<double> params = {1.0, 1.0, 1.0};
  double noise_sd = 1.0;
};

// Settings shared by every subcommand. Loaded from a JSON file whose keys
// match the long flag names (with '-' written as '_'); flags override it.
struct RunConfig {
  std::string graph;
  GraphFormat format = GraphFormat::kEdgeList;
  Design design;
  ModelSpec model;
  std::int64_t reps = 1000;
  std::uint64_t seed = 0;
  std::string out = ".";
  int threads = 1;
  bool rescale_ci = false;
  bool per_rep_csv = false;
  // Debug overrides: explicit egos (external ids) and their arms (1/0).
  std::vector<ExternalId> egos;
  std::vector<int> ego_arms;
  // Input partition for sigma-report; defaults to <out>/partition.json.
  std::string partition;
};

// Parses "kind:p1,p2,..." (for example "convex_exp:2,1,3").
absl::StatusOr<ModelSpec> ParseModelFlag(const std::string& text,
                                         double noise_sd);

// Applies the keys present in `j` on top of `config`. Relative graph and
// partition paths are resolved against `base_dir`.
absl::Status ApplyConfigJson(const nlohmann::json& j,
                             const std::string& base_dir, RunConfig* config);

absl::StatusOr<RunConfig> LoadConfigFile(const std::string& path);

// Checks ranges and that referenced files exist.
absl::Status ValidateConfig(const RunConfig& config);

// Design-relevant settings only; execution knobs (threads, output directory)
// are left out so reports do not depend on them.
nlohmann::ordered_json ConfigEcho(const RunConfig& config);

}  // namespace egp::cli

#endif  // EGP_TOOLS_CONFIG_H_
