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

#ifndef EGP_TESTING_FIXTURES_H_
#define EGP_TESTING_FIXTURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "egp/graph.h"
#include "egp/partition.h"
#include "egp/random.h"

namespace egp::testing {

// The five-node toy graph {0-2, 1-2, 0-3, 1-4}, loaded from the edge list
// "1 3", "2 3", "1 4", "2 5".
inline constexpr char kToyEdgeList[] = "1 3\n2 3\n1 4\n2 5\n";
Graph ToyGraph();

// Toy graph with egos {0, 1}, ego 0 treated and ego 1 control.
Partition ToyEgoPartition();

// Erdos-Renyi G(n, p); retries until at least one edge exists.
Graph RandomGraph(NodeId n, double p, Engine& engine);

// Planted-partition graph: `blocks` groups of `block_size` nodes, edge
// probability p_in inside a group and p_out across.
Graph PlantedPartitionGraph(int blocks, int block_size, double p_in,
                            double p_out, Engine& engine);

// Uniformly picks `count` egos among nodes of degree >= 1 and completely
// randomizes them (ceil(count / 2) treated). `count` is capped at the
// number of eligible nodes.
Partition RandomEgoPartition(const Graph& g, int count, Engine& engine);

// Fresh directory under the system temp dir.
std::string MakeTempDir(const std::string& prefix);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace egp::testing

#endif  // EGP_TESTING_FIXTURES_H_
