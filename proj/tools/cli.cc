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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <unordered_map>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "egp/estimation.h"
#include "egp/status_macros.h"
#include "serialization.h"

namespace egp::cli {
namespace {

namespace fs = std::filesystem;

absl::Status WriteOutput(const RunConfig& config, const std::string& name,
                         const std::string& contents) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) {
    return absl::PermissionDeniedError(absl::StrCat(
        "cannot create output directory ", config.out, ": ", ec.message()));
  }
  const fs::path path = fs::path(config.out) / name;
  std::ofstream file(path, std::ios::binary);
  file << contents;
  if (!file) {
    return absl::InternalError(absl::StrCat("failed writing ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<Graph> LoadConfiguredGraph(const RunConfig& config,
                                          std::vector<std::string>* warnings,
                                          std::ostream& log) {
  LoadSummary summary;
  EGP_ASSIGN_OR_RETURN(Graph g, LoadGraph(config.graph, config.format, &summary));
  *warnings = summary.Warnings();
  for (const auto& w : *warnings) log << "warning: " << w << "\n";
  return g;
}

absl::StatusOr<Partition> OverridePartition(const Graph& g,
                                            const RunConfig& config) {
  std::unordered_map<ExternalId, NodeId> internal;
  for (NodeId v = 0; v < g.num_nodes(); ++v) internal[g.external_id(v)] = v;
  std::vector<NodeId> egos;
  std::vector<Arm> arms;
  for (std::size_t k = 0; k < config.egos.size(); ++k) {
    auto it = internal.find(config.egos[k]);
    if (it == internal.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("--egos: ", config.egos[k], " is not a node"));
    }
    egos.push_back(it->second);
    arms.push_back(config.ego_arms[k] ? Arm::kTreatment : Arm::kControl);
  }
  return PartitionFromEgoArms(g.num_nodes(), egos, arms);
}

nlohmann::ordered_json NumberOrNull(double x) {
  return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json();
}

std::string Dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

absl::Status CmdPartition(const RunConfig& config, std::ostream& log) {
  EGP_RETURN_IF_ERROR(ValidateConfig(config));
  std::vector<std::string> warnings;
  EGP_ASSIGN_OR_RETURN(Graph g, LoadConfiguredGraph(config, &warnings, log));

  Partition p;
  if (!config.egos.empty()) {
    EGP_ASSIGN_OR_RETURN(Partition assigned, OverridePartition(g, config));
    EGP_ASSIGN_OR_RETURN(p, CompleteDesign(g, config.design, std::move(assigned),
                                           config.threads));
    p.meta.q = config.design.q;
  } else {
    // Same seed derivation as replication 0 of `simulate`.
    EGP_ASSIGN_OR_RETURN(p, RunDesign(g, config.design,
                                      ReplicationSeed(config.seed, 0),
                                      config.threads));
  }
  p.meta.seed = config.seed;
  EGP_ASSIGN_OR_RETURN(ExposureSummary exposure, ComputeExposure(g, p));
  EGP_RETURN_IF_ERROR(WriteOutput(
      config, "partition.json",
      Dump(PartitionToJson(g, p, exposure, warnings))));
  log << "partition: " << p.meta.algorithm << ", " << p.n1 << " treated and "
      << p.n0 << " control egos, R = " << exposure.r_statistic << "\n";
  return absl::OkStatus();
}

absl::Status CmdSimulate(const RunConfig& config, std::ostream& log) {
  EGP_RETURN_IF_ERROR(ValidateConfig(config));
  if (!config.egos.empty()) {
    return absl::InvalidArgumentError(
        "--egos/--ego-arms apply to partition only; simulate re-draws egos "
        "in every replication");
  }
  std::vector<std::string> warnings;
  EGP_ASSIGN_OR_RETURN(Graph g, LoadConfiguredGraph(config, &warnings, log));
  EGP_ASSIGN_OR_RETURN(
      OutcomeModel model,
      OutcomeModel::FromParams(config.model.kind, config.model.params,
                               config.model.noise_sd));

  const auto start = std::chrono::steady_clock::now();
  EGP_ASSIGN_OR_RETURN(SimReport report,
                       MonteCarloBias(g, config.design, model, config.reps,
                                      config.seed, config.threads));
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();

  nlohmann::ordered_json j;
  j["config"] = ConfigEcho(config);
  j["true_tau"] = report.true_tau;
  j["mean_tau_hat"] = report.mean_tau_hat;
  j["mean_bias"] = report.mean_bias;
  j["bias_sd"] = NumberOrNull(report.bias_sd);
  j["mean_sigma_t"] = report.mean_sigma_t;
  j["mean_sigma_c"] = report.mean_sigma_c;
  j["mean_ci_width"] = NumberOrNull(report.mean_ci_width);
  j["reps"] = report.reps;
  j["replication_scheme"] =
      "each replication re-draws egos, ego arms and outcome noise";

  nlohmann::ordered_json diag;
  if (model.kind() == OutcomeKind::kLinear) {
    diag["kind"] = "analytic_linear";
    diag["value"] = model.spillover_coefficient() *
                    (report.mean_sigma_t - report.mean_sigma_c - 1.0);
  } else {
    diag["kind"] = "approx_additive";
    auto approx = ApproxBiasConvex(
        [&model](double s) { return model.ExposureTerm(s); },
        report.mean_sigma_t, report.mean_sigma_c);
    diag["value"] = approx.ok() ? nlohmann::ordered_json(*approx)
                                : nlohmann::ordered_json();
  }
  j["bias_diagnostic"] = diag;

  if (config.rescale_ci) {
    if (!std::isfinite(report.mean_ci_width) || report.mean_ci_width <= 0) {
      return absl::FailedPreconditionError(
          "rescale_ci needs a positive confidence interval width (at least "
          "two egos per arm and non-constant outcomes)");
    }
    const double w = report.mean_ci_width;
    auto entry = [w](double x) {
      RescaledValue r = Rescale(x, w);
      return nlohmann::ordered_json{{"value", r.value}, {"display", r.display}};
    };
    j["rescaled"] = {{"ci_width", w},
                     {"mean_tau_hat", entry(report.mean_tau_hat)},
                     {"true_tau", entry(report.true_tau)},
                     {"mean_bias", entry(report.mean_bias)},
                     {"bias_sd", NumberOrNull(report.bias_sd / w)}};
  }
  EGP_RETURN_IF_ERROR(WriteOutput(config, "report.json", Dump(j)));
  EGP_RETURN_IF_ERROR(WriteOutput(
      config, "timing.json",
      Dump(nlohmann::ordered_json{{"wall_time_seconds", wall},
                                  {"threads", config.threads}})));
  if (config.per_rep_csv) {
    EGP_RETURN_IF_ERROR(WriteOutput(config, "per_rep.csv", PerRepCsv(report)));
  }
  log << "simulate: " << report.reps << " replications, mean bias "
      << report.mean_bias << " (true tau " << report.true_tau << "), "
      << wall << " s\n";
  return absl::OkStatus();
}

absl::Status CmdSigmaReport(const RunConfig& config, std::ostream& log) {
  EGP_RETURN_IF_ERROR(ValidateConfig(config));
  const std::string partition_path =
      config.partition.empty()
          ? (fs::path(config.out) / "partition.json").string()
          : config.partition;
  std::ifstream in(partition_path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open partition file ", partition_path));
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(partition_path, ": invalid JSON: ", e.what()));
  }
  std::vector<std::string> warnings;
  EGP_ASSIGN_OR_RETURN(Graph g, LoadConfiguredGraph(config, &warnings, log));
  EGP_ASSIGN_OR_RETURN(Partition p, PartitionFromJson(doc, g));
  EGP_ASSIGN_OR_RETURN(ExposureSummary exposure, ComputeExposure(g, p));
  EGP_RETURN_IF_ERROR(
      WriteOutput(config, "sigma.csv", SigmaCsv(g, p, exposure)));
  EGP_RETURN_IF_ERROR(WriteOutput(
      config, "sigma.svg",
      SigmaSvg(p, exposure,
               absl::StrCat("Treated neighbor ratio by ego arm: ",
                            p.meta.algorithm))));
  log << "sigma-report: " << exposure.ego_ids.size() << " egos, mean sigma "
      << exposure.mean_sigma_treated << " (treated) vs "
      << exposure.mean_sigma_control << " (control)\n";
  return absl::OkStatus();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Ego group partition experiment design toolkit", "egp"};
  app.require_subcommand(1);

  struct Flags {
    std::string config, graph, format, algo, model, out, partition;
    double q = 0, theta = 0, noise_sd = 0;
    std::int64_t reps = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<ExternalId> egos;
    std::vector<int> ego_arms;
  } flags;
  std::unordered_map<std::string, CLI::Option*> opts;
  bool rescale_ci = false, per_rep_csv = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON run configuration");
    opts["graph"] = sub->add_option("--graph", flags.graph, "graph file");
    opts["format"] =
        sub->add_option("--format", flags.format, "edgelist or mtx");
    opts["algo"] =
        sub->add_option("--algo", flags.algo, "linear, convex or snc");
    opts["q"] = sub->add_option("--q", flags.q, "ego fraction in (0, 1)");
    opts["theta"] =
        sub->add_option("--theta", flags.theta, "convex threshold >= 0");
    opts["model"] = sub->add_option(
        "--model", flags.model,
        "outcome model kind:params, e.g. linear:1,1,1 or convex_exp:2,1,3");
    opts["noise_sd"] =
        sub->add_option("--noise-sd", flags.noise_sd, "outcome noise sd");
    opts["reps"] = sub->add_option("--reps", flags.reps, "replications");
    opts["seed"] = sub->add_option("--seed", flags.seed, "master seed");
    opts["out"] = sub->add_option("--out", flags.out, "output directory");
    opts["threads"] =
        sub->add_option("--threads", flags.threads, "worker cap (>= 1)");
    opts["rescale_ci"] = sub->add_flag("--rescale-ci", rescale_ci,
                                       "report metrics scaled to CI width 1");
    opts["per_rep_csv"] = sub->add_flag("--per-rep-csv", per_rep_csv,
                                        "also write per_rep.csv");
    opts["egos"] = sub->add_option("--egos", flags.egos,
                                   "debug: explicit ego external ids")
                       ->delimiter(',');
    opts["ego_arms"] = sub->add_option("--ego-arms", flags.ego_arms,
                                       "debug: arms (1/0) for --egos")
                           ->delimiter(',');
    opts["partition"] = sub->add_option("--partition", flags.partition,
                                        "partition.json for sigma-report");
  };
  // Each subcommand gets its own option objects; remember per subcommand.
  std::unordered_map<CLI::App*, std::unordered_map<std::string, CLI::Option*>>
      per_sub;
  std::vector<CLI::App*> subs = {
      app.add_subcommand("partition", "assign egos and alters to arms"),
      app.add_subcommand("simulate", "Monte Carlo bias of the ego estimator"),
      app.add_subcommand("sigma-report", "sigma table and histogram")};
  for (CLI::App* sub : subs) {
    opts.clear();
    add_common(sub);
    per_sub[sub] = opts;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  CLI::App* chosen = nullptr;
  for (CLI::App* sub : subs) {
    if (sub->parsed()) chosen = sub;
  }
  const auto& given = per_sub[chosen];
  auto set = [&](const char* name) { return given.at(name)->count() > 0; };

  RunConfig config;
  absl::Status status;
  if (!flags.config.empty()) {
    auto loaded = LoadConfigFile(flags.config);
    if (!loaded.ok()) {
      err << "error: " << loaded.status().message() << "\n";
      return 1;
    }
    config = *std::move(loaded);
  }
  auto apply = [&]() -> absl::Status {
    if (set("graph")) config.graph = flags.graph;
    if (set("format")) {
      EGP_ASSIGN_OR_RETURN(config.format, ParseGraphFormat(flags.format));
    }
    if (set("algo")) {
      EGP_ASSIGN_OR_RETURN(config.design.algorithm, ParseAlgorithm(flags.algo));
    }
    if (set("q")) config.design.q = flags.q;
    if (set("theta")) config.design.theta = flags.theta;
    if (set("noise_sd")) config.model.noise_sd = flags.noise_sd;
    if (set("model")) {
      EGP_ASSIGN_OR_RETURN(config.model,
                           ParseModelFlag(flags.model, config.model.noise_sd));
    }
    if (set("reps")) config.reps = flags.reps;
    if (set("seed")) config.seed = flags.seed;
    if (set("out")) config.out = flags.out;
    if (set("threads")) config.threads = flags.threads;
    if (set("rescale_ci")) config.rescale_ci = rescale_ci;
    if (set("per_rep_csv")) config.per_rep_csv = per_rep_csv;
    if (set("egos")) config.egos = flags.egos;
    if (set("ego_arms")) config.ego_arms = flags.ego_arms;
    if (set("partition")) config.partition = flags.partition;
    return absl::OkStatus();
  };
  status = apply();
  if (status.ok()) {
    const std::string name = chosen->get_name();
    if (name == "partition") {
      status = CmdPartition(config, err);
    } else if (name == "simulate") {
      status = CmdSimulate(config, err);
    } else {
      status = CmdSigmaReport(config, err);
    }
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace egp::cli
