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

#ifndef EGP_ESTIMATION_H_
#define EGP_ESTIMATION_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "egp/graph.h"
#include "egp/outcome.h"
#include "egp/partition.h"

namespace egp {

// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct EstimateRecord {
  double tau_hat = 0.0;
  std::int64_t n1 = 0;
  std::int64_t n0 = 0;
  // Unpooled standard error; NaN (with NaN interval bounds) when either arm
  // has fewer than two egos.
  double se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_sigma_t = 0.0;
  double mean_sigma_c = 0.0;
  double r_statistic = 0.0;
};

// Difference in mean ego outcome between arms with an unpooled (Welch)
// standard error and 95% normal interval. `outcomes` is aligned with
// exposure.ego_ids.
absl::StatusOr<EstimateRecord> EgoDiffInMeans(std::span<const double> outcomes,
                                              const Partition& p,
                                              const ExposureSummary& exposure);

// Exact bias of the ego estimator under the linear model:
// b2 * (R - 1).
absl::StatusOr<double> AnalyticBiasLinear(const OutcomeModel& model,
                                          const ExposureSummary& exposure);

// First-order bias approximation for an additive model:
// g2(mean_t) - g2(mean_c) - (g2(1) - g2(0)).
// Requires 0 <= mean_sigma_c <= mean_sigma_t <= 1.
absl::StatusOr<double> ApproxBiasConvex(const std::function<double(double)>& g2,
                                        double mean_sigma_t,
                                        double mean_sigma_c);

struct SimReport {
  Design design;
  std::int64_t reps = 0;
  std::uint64_t master_seed = 0;
  double true_tau = 0.0;
  double mean_tau_hat = 0.0;
  double mean_bias = 0.0;
  double bias_sd = 0.0;  // sample sd of tau_hat; NaN for a single replication
  double mean_sigma_t = 0.0;
  double mean_sigma_c = 0.0;
  double mean_ci_width = 0.0;  // NaN when no replication had a defined SE
  std::vector<EstimateRecord> per_rep;
};

// Seed used by replication `rep` of a Monte Carlo run.
std::uint64_t ReplicationSeed(std::uint64_t master_seed, std::int64_t rep);

// One replication: design, exposures, outcomes (noise from the replication's
// noise stream) and the ego estimate.
absl::StatusOr<EstimateRecord> RunReplication(const Graph& g,
                                              const Design& design,
                                              const OutcomeModel& model,
                                              std::uint64_t seed,
                                              int threads = 1);

// Repeats the full pipeline `reps` times. Each replication re-draws egos,
// ego arms and noise from seeds derived from `master_seed`. Replications run
// on up to `threads` workers and are aggregated in index order, so the report
// does not depend on the worker count.
absl::StatusOr<SimReport> MonteCarloBias(const Graph& g, const Design& design,
                                         const OutcomeModel& model,
                                         std::int64_t reps,
                                         std::uint64_t master_seed,
                                         int threads = 1);

}  // namespace egp

#endif  // EGP_ESTIMATION_H_
