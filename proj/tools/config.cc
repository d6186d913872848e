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

#include "config.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "egp/status_macros.h"

namespace egp::cli {
namespace {

namespace fs = std::filesystem;

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute() || base_dir.empty()) {
    return path;
  }
  return (fs::path(base_dir) / path).lexically_normal().string();
}

}  // namespace

absl::StatusOr<ModelSpec> ParseModelFlag(const std::string& text,
                                         double noise_sd) {
  const std::size_t colon = text.find(':');
  ModelSpec spec;
  spec.noise_sd = noise_sd;
  EGP_ASSIGN_OR_RETURN(spec.kind, ParseOutcomeKind(text.substr(0, colon)));
  spec.params.clear();
  if (colon != std::string::npos) {
    for (absl::string_view field :
         absl::StrSplit(text.substr(colon + 1), ',', absl::SkipEmpty())) {
      double value;
      if (!absl::SimpleAtod(field, &value)) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad model parameter '", field, "' in '", text, "'"));
      }
      spec.params.push_back(value);
    }
  }
  // Building the model checks arity and shape.
  EGP_RETURN_IF_ERROR(
      OutcomeModel::FromParams(spec.kind, spec.params, spec.noise_sd).status());
  return spec;
}

absl::Status ApplyConfigJson(const nlohmann::json& j,
                             const std::string& base_dir, RunConfig* config) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("config must be a JSON object");
  }
  try {
    if (j.contains("graph")) {
      config->graph = Resolve(base_dir, j.at("graph").get<std::string>());
    }
    if (j.contains("format")) {
      EGP_ASSIGN_OR_RETURN(config->format,
                           ParseGraphFormat(j.at("format").get<std::string>()));
    }
    if (j.contains("algo")) {
      EGP_ASSIGN_OR_RETURN(config->design.algorithm,
                           ParseAlgorithm(j.at("algo").get<std::string>()));
    }
    if (j.contains("q")) config->design.q = j.at("q").get<double>();
    if (j.contains("theta")) config->design.theta = j.at("theta").get<double>();
    if (j.contains("model")) {
      const auto& m = j.at("model");
      if (m.is_string()) {
        EGP_ASSIGN_OR_RETURN(
            config->model,
            ParseModelFlag(m.get<std::string>(), config->model.noise_sd));
      } else {
        if (m.contains("kind")) {
          EGP_ASSIGN_OR_RETURN(config->model.kind,
                               ParseOutcomeKind(m.at("kind").get<std::string>()));
        }
        if (m.contains("params")) {
          config->model.params = m.at("params").get<std::vector<double>>();
        }
        if (m.contains("noise_sd")) {
          config->model.noise_sd = m.at("noise_sd").get<double>();
        }
      }
    }
    if (j.contains("noise_sd")) {
      config->model.noise_sd = j.at("noise_sd").get<double>();
    }
    if (j.contains("reps")) config->reps = j.at("reps").get<std::int64_t>();
    if (j.contains("seed")) config->seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) config->out = Resolve(base_dir, j.at("out").get<std::string>());
    if (j.contains("threads")) config->threads = j.at("threads").get<int>();
    if (j.contains("rescale_ci")) {
      config->rescale_ci = j.at("rescale_ci").get<bool>();
    }
    if (j.contains("per_rep_csv")) {
      config->per_rep_csv = j.at("per_rep_csv").get<bool>();
    }
    if (j.contains("egos")) {
      config->egos = j.at("egos").get<std::vector<ExternalId>>();
    }
    if (j.contains("ego_arms")) {
      config->ego_arms = j.at("ego_arms").get<std::vector<int>>();
    }
    if (j.contains("partition")) {
      config->partition =
          Resolve(base_dir, j.at("partition").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config field has the wrong type: ", e.what()));
  }
  return absl::OkStatus();
}

absl::StatusOr<RunConfig> LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open config ", path));
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": invalid JSON: ", e.what()));
  }
  RunConfig config;
  const std::string base = fs::path(path).parent_path().string();
  EGP_RETURN_IF_ERROR(ApplyConfigJson(j, base, &config));
  return config;
}

absl::Status ValidateConfig(const RunConfig& config) {
  if (config.graph.empty()) {
    return absl::InvalidArgumentError("no graph file given (--graph)");
  }
  if (!fs::is_regular_file(config.graph)) {
    return absl::NotFoundError(
        absl::StrCat("graph file not found: ", config.graph));
  }
  EGP_RETURN_IF_ERROR(ValidateDesign(config.design));
  if (config.reps < 1) {
    return absl::InvalidArgumentError("reps must be >= 1");
  }
  if (config.threads < 1) {
    return absl::InvalidArgumentError("threads must be >= 1");
  }
  if (config.egos.size() != config.ego_arms.size()) {
    return absl::InvalidArgumentError(
        "--egos and --ego-arms must list the same number of entries");
  }
  for (int a : config.ego_arms) {
    if (a != 0 && a != 1) {
      return absl::InvalidArgumentError("--ego-arms entries must be 0 or 1");
    }
  }
  if (!config.partition.empty() && !fs::is_regular_file(config.partition)) {
    return absl::NotFoundError(
        absl::StrCat("partition file not found: ", config.partition));
  }
  return OutcomeModel::FromParams(config.model.kind, config.model.params,
                                  config.model.noise_sd)
      .status();
}

nlohmann::ordered_json ConfigEcho(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["graph"] = config.graph;
  j["format"] = GraphFormatName(config.format);
  j["algo"] = AlgorithmName(config.design.algorithm);
  j["q"] = config.design.q;
  j["theta"] = config.design.theta;
  j["model"] = {{"kind", OutcomeKindName(config.model.kind)},
                {"params", config.model.params},
                {"noise_sd", config.model.noise_sd}};
  j["reps"] = config.reps;
  j["seed"] = config.seed;
  j["rescale_ci"] = config.rescale_ci;
  if (!config.egos.empty()) {
    j["egos"] = config.egos;
    j["ego_arms"] = config.ego_arms;
  }
  return j;
}

}  // namespace egp::cli
