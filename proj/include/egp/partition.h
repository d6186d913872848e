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

#ifndef EGP_PARTITION_H_
#define EGP_PARTITION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "egp/clustering.h"
#include "egp/graph.h"

namespace egp {

enum class Arm : std::uint8_t { kControl = 0, kTreatment = 1, kUnassigned = 2 };

// Per-node ego indicator; 1 marks an ego.
using EgoFlags = std::vector<std::uint8_t>;

enum class Algorithm { kLinear, kConvex, kSnc };

absl::StatusOr<Algorithm> ParseAlgorithm(const std::string& name);
std::string AlgorithmName(Algorithm algorithm);

struct PartitionMeta {
  std::string algorithm;  // "linear", "convex(0.5)", "snc", or "" while egos-only
  double q = 0.0;
  double theta = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const PartitionMeta&, const PartitionMeta&) = default;
};

// Ego flags plus a treatment arm for every node. Alters stay kUnassigned
// until one of the AssignAlters* rules completes the partition.
struct Partition {
  EgoFlags ego_flags;
  std::vector<Arm> arm;
  std::int64_t n1 = 0;  // treated egos
  std::int64_t n0 = 0;  // control egos
  PartitionMeta meta;

  std::int64_t num_nodes() const { return static_cast<std::int64_t>(arm.size()); }
  bool is_ego(NodeId v) const { return ego_flags[v] != 0; }
  bool treated(NodeId v) const { return arm[v] == Arm::kTreatment; }
  bool complete() const;
  std::vector<NodeId> Egos() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Checks the ego-count and arm-total invariants.
absl::Status ValidatePartition(const Partition& p, bool require_complete);

// Uniformly samples max(2, round(q * n)) egos from the nodes with degree >= 1.
absl::StatusOr<EgoFlags> SelectEgos(const Graph& g, double q,
                                    std::uint64_t seed);

// Complete randomization: ceil(k / 2) of the k egos are treated.
absl::StatusOr<Partition> RandomizeEgos(const EgoFlags& ego_flags,
                                        std::uint64_t seed);

// Builds an ego-assigned partition from explicit ego ids and arms. Used by
// debug overrides and tests.
absl::StatusOr<Partition> PartitionFromEgoArms(NodeId num_nodes,
                                               std::span<const NodeId> egos,
                                               std::span<const Arm> arms);

// Ego-affinity scores of every alter. For alter j:
//   treated_affinity[j] = sum over treated egos i adjacent to j of 1/(n1 d_i)
//   control_affinity[j] = sum over control egos i adjacent to j of 1/(n0 d_i)
//   delta[j]            = treated_affinity[j] - control_affinity[j]
//   delta_tilde[j]      = delta[j] / control_affinity[j]
// delta_tilde is +infinity when only treated egos touch j and NaN when no ego
// does. Entries at ego positions are 0 (affinities, delta) and NaN
// (delta_tilde) and carry no meaning.
struct DeltaScores {
  std::vector<double> treated_affinity;
  std::vector<double> control_affinity;
  std::vector<double> delta;
  std::vector<double> delta_tilde;
};

inline bool IsUndefinedScore(double delta_tilde) {
  return delta_tilde != delta_tilde;
}

// Fills every DeltaScores field. Requires both ego arms to be non-empty.
// Parallel over alters with at least one ego neighbor.
absl::StatusOr<DeltaScores> ComputeDeltaScores(const Graph& g,
                                               const Partition& p,
                                               int threads = 1);

// Treats alter j iff delta[j] > 0; other alters go to control.
absl::StatusOr<Partition> AssignAltersLinear(const Graph& g, Partition p,
                                             int threads = 1);

// Treats alter j iff delta_tilde[j] > theta. +infinity always exceeds theta
// and an undefined score never does.
absl::StatusOr<Partition> AssignAltersConvex(const Graph& g, Partition p,
                                             double theta, int threads = 1);

// Second-neighborhood clustering design: clusters the ego second-neighborhood
// graph, sends shuffled clusters to whichever arm currently holds fewer egos,
// then applies the linear alter rule. Fails when every ego lands in one arm.
absl::StatusOr<Partition> AssignAltersSnc(const Graph& g,
                                          const EgoFlags& ego_flags,
                                          std::uint64_t seed,
                                          const ClusterFn& cluster_fn,
                                          int threads = 1);

// Counts edges of the ego second-neighborhood graph whose endpoints sit in
// different arms.
std::int64_t CountCrossArmEdges(const EgoSubgraph& sg, const Partition& p);

// Exposure of each ego: the fraction of its neighbors that are treated.
struct ExposureSummary {
  std::vector<NodeId> ego_ids;  // sorted
  std::vector<double> sigma;    // aligned with ego_ids
  double mean_sigma_treated = 0.0;
  double mean_sigma_control = 0.0;
  double r_statistic = 0.0;  // mean_sigma_treated - mean_sigma_control
};

absl::StatusOr<ExposureSummary> ComputeExposure(const Graph& g,
                                                const Partition& p);

struct Design {
  Algorithm algorithm = Algorithm::kLinear;
  double q = 0.025;
  double theta = 0.0;
};

absl::Status ValidateDesign(const Design& design);

// Full pipeline for one seed: ego selection, ego arms (or cluster arms for
// kSnc), alter rule. Every random step draws from its own stream derived
// from `seed`.
absl::StatusOr<Partition> RunDesign(const Graph& g, const Design& design,
                                    std::uint64_t seed, int threads = 1);

// Same as RunDesign but with egos and arms supplied by the caller. Only the
// alter rule runs; kSnc is rejected because it owns the ego arms.
absl::StatusOr<Partition> CompleteDesign(const Graph& g, const Design& design,
                                         Partition egos_assigned,
                                         int threads = 1);

}  // namespace egp

#endif  // EGP_PARTITION_H_
