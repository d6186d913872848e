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

#include "testing/fixtures.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace egp::testing {
namespace {

double Uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * (1.0 / 9007199254740992.0);
}

Graph Build(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges) {
  auto g = Graph::FromEdges(n, std::move(edges));
  if (!g.ok()) throw std::runtime_error(std::string(g.status().message()));
  return *std::move(g);
}

}  // namespace

Graph ToyGraph() {
  auto g = ParseGraph(kToyEdgeList, GraphFormat::kEdgeList);
  if (!g.ok()) throw std::runtime_error(std::string(g.status().message()));
  return *std::move(g);
}

Partition ToyEgoPartition() {
  const NodeId egos[] = {0, 1};
  const Arm arms[] = {Arm::kTreatment, Arm::kControl};
  return *PartitionFromEgoArms(5, egos, arms);
}

Graph RandomGraph(NodeId n, double p, Engine& engine) {
  while (true) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (Uniform01(engine) < p) edges.emplace_back(u, v);
      }
    }
    if (!edges.empty()) return Build(n, std::move(edges));
  }
}

Graph PlantedPartitionGraph(int blocks, int block_size, double p_in,
                            double p_out, Engine& engine) {
  const NodeId n = blocks * block_size;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = (u / block_size == v / block_size) ? p_in : p_out;
      if (Uniform01(engine) < p) edges.emplace_back(u, v);
    }
  }
  return Build(n, std::move(edges));
}

Partition RandomEgoPartition(const Graph& g, int count, Engine& engine) {
  std::vector<NodeId> eligible;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) > 0) eligible.push_back(v);
  }
  count = std::min(count, static_cast<int>(eligible.size()));
  Shuffle(eligible, engine);
  EgoFlags flags(g.num_nodes(), 0);
  for (int k = 0; k < count; ++k) flags[eligible[k]] = 1;
  auto p = RandomizeEgos(flags, engine());
  if (!p.ok()) throw std::runtime_error(std::string(p.status().message()));
  return *std::move(p);
}

std::string MakeTempDir(const std::string& prefix) {
  static std::atomic<int> counter{0};
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() /
      (prefix + "_" + std::to_string(::getpid()) + "_" +
       std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

}  // namespace egp::testing
