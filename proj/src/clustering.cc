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

#include "egp/clustering.h"

#include <algorithm>
#include <numeric>

#include "absl/status/status.h"
#include "egp/random.h"

namespace egp {

std::int32_t Clustering::num_clusters() const {
  std::int32_t max_id = -1;
  for (std::int32_t c : cluster_of) max_id = std::max(max_id, c);
  return max_id + 1;
}

std::vector<std::int32_t> Clustering::ClusterSizes() const {
  std::vector<std::int32_t> sizes(num_clusters(), 0);
  for (std::int32_t c : cluster_of) ++sizes[c];
  return sizes;
}

absl::StatusOr<Clustering> LabelPropagation(const EgoSubgraph& sg,
                                            std::uint64_t seed,
                                            int max_iters) {
  if (max_iters < 1) {
    return absl::InvalidArgumentError("max_iters must be at least 1");
  }
  const std::int32_t k = sg.size();
  std::vector<std::int32_t> label(k);
  std::iota(label.begin(), label.end(), 0);

  std::vector<std::int32_t> order(label);
  Engine engine(seed);
  // Per-label counts, reset after each node via the touched list.
  std::vector<std::int32_t> count(k, 0);
  std::vector<std::int32_t> touched;

  for (int iter = 0; iter < max_iters; ++iter) {
    Shuffle(order, engine);
    bool changed = false;
    for (std::int32_t v : order) {
      auto nbrs = sg.neighbors_of(v);
      if (nbrs.empty()) continue;
      touched.clear();
      for (std::int32_t u : nbrs) {
        if (count[label[u]]++ == 0) touched.push_back(label[u]);
      }
      std::int32_t best = label[v];
      std::int32_t best_count = -1;
      for (std::int32_t l : touched) {
        if (count[l] > best_count || (count[l] == best_count && l < best)) {
          best = l;
          best_count = count[l];
        }
      }
      for (std::int32_t l : touched) count[l] = 0;
      if (best != label[v]) {
        label[v] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }

  Clustering out;
  out.cluster_of.assign(k, -1);
  std::vector<std::int32_t> dense(k, -1);
  std::int32_t next = 0;
  for (std::int32_t v = 0; v < k; ++v) {
    if (dense[label[v]] < 0) dense[label[v]] = next++;
    out.cluster_of[v] = dense[label[v]];
  }
  return out;
}

ClusterFn DefaultClusterFn() {
  return [](const EgoSubgraph& sg, std::uint64_t seed) {
    return LabelPropagation(sg, seed, kDefaultLabelPropagationIters);
  };
}

}  // namespace egp
