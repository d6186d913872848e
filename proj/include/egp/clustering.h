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

#ifndef EGP_CLUSTERING_H_
#define EGP_CLUSTERING_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "egp/graph.h"

namespace egp {

// Assignment of each ego (by local index in an EgoSubgraph) to a cluster.
// Cluster ids are dense from 0 and numbered by first appearance in local
// index order.
struct Clustering {
  std::vector<std::int32_t> cluster_of;

  std::int32_t num_clusters() const;
  std::vector<std::int32_t> ClusterSizes() const;
};

inline constexpr int kDefaultLabelPropagationIters = 20;

// Asynchronous label propagation. Every ego starts with its own label; in
// each sweep egos are visited in a seeded random order and adopt the most
// frequent label among their neighbors, ties broken toward the smallest
// label. Stops at a fixpoint or after `max_iters` sweeps. Egos with no
// neighbors keep singleton clusters.
absl::StatusOr<Clustering> LabelPropagation(const EgoSubgraph& sg,
                                            std::uint64_t seed,
                                            int max_iters =
                                                kDefaultLabelPropagationIters);

// Pluggable clustering routine for the second-neighborhood design.
using ClusterFn =
    std::function<absl::StatusOr<Clustering>(const EgoSubgraph&, std::uint64_t)>;

ClusterFn DefaultClusterFn();

}  // namespace egp

#endif  // EGP_CLUSTERING_H_
