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

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/fixtures.h"

namespace egp {
namespace {

using ::testing::ElementsAre;

// EgoSubgraph over local ids 0..k-1 from an undirected edge list.
EgoSubgraph MakeSubgraph(std::int32_t k,
                         std::vector<std::pair<std::int32_t, std::int32_t>> edges) {
  std::vector<std::vector<std::int32_t>> adj(k);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  EgoSubgraph sg;
  sg.ego_ids.resize(k);
  std::iota(sg.ego_ids.begin(), sg.ego_ids.end(), 0);
  sg.offsets.push_back(0);
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    sg.neighbors.insert(sg.neighbors.end(), row.begin(), row.end());
    sg.offsets.push_back(static_cast<std::int64_t>(sg.neighbors.size()));
  }
  return sg;
}

// Connected component of each local id.
std::vector<std::int32_t> Components(const EgoSubgraph& sg) {
  std::vector<std::int32_t> comp(sg.size(), -1);
  std::int32_t next = 0;
  for (std::int32_t s = 0; s < sg.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::int32_t> stack = {s};
    comp[s] = next;
    while (!stack.empty()) {
      std::int32_t a = stack.back();
      stack.pop_back();
      for (std::int32_t b : sg.neighbors_of(a)) {
        if (comp[b] < 0) {
          comp[b] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }
  return comp;
}

TEST(LabelPropagationTest, EdgelessGivesSingletons) {
  auto c = LabelPropagation(MakeSubgraph(5, {}), 1);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c->num_clusters(), 5);
  EXPECT_THAT(c->cluster_of, ElementsAre(0, 1, 2, 3, 4));
}

TEST(LabelPropagationTest, TriangleIsOneCluster) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = LabelPropagation(MakeSubgraph(3, {{0, 1}, {1, 2}, {0, 2}}), seed);
    ASSERT_TRUE(c.ok());
    EXPECT_THAT(c->ClusterSizes(), ElementsAre(3));
  }
}

TEST(LabelPropagationTest, TwoDisjointCliquesAreTwoClusters) {
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  for (int base : {0, 4}) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) edges.emplace_back(base + a, base + b);
    }
  }
  EgoSubgraph sg = MakeSubgraph(8, edges);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = LabelPropagation(sg, seed);
    ASSERT_TRUE(c.ok());
    EXPECT_THAT(c->cluster_of, ElementsAre(0, 0, 0, 0, 1, 1, 1, 1));
  }
}

TEST(LabelPropagationTest, RejectsNonPositiveIterations) {
  EXPECT_FALSE(LabelPropagation(MakeSubgraph(2, {{0, 1}}), 1, 0).ok());
}

TEST(LabelPropagationTest, RandomSubgraphInvariants) {
  Engine engine(77);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = testing::RandomGraph(120, 0.03, engine);
    std::vector<NodeId> egos;
    for (NodeId v = 0; v < g.num_nodes(); v += 3) egos.push_back(v);
    auto sg = SecondNeighborhoodEgoGraph(g, egos);
    ASSERT_TRUE(sg.ok());
    auto c = LabelPropagation(*sg, trial);
    ASSERT_TRUE(c.ok());
    ASSERT_EQ(static_cast<std::int32_t>(c->cluster_of.size()), sg->size());

    // Dense ids numbered by first appearance.
    std::int32_t next = 0;
    for (std::int32_t id : c->cluster_of) {
      ASSERT_LE(id, next);
      if (id == next) ++next;
    }
    EXPECT_EQ(c->num_clusters(), next);
    auto sizes = c->ClusterSizes();
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), 0), sg->size());

    // A cluster never spans two components.
    auto comp = Components(*sg);
    std::vector<std::int32_t> comp_of_cluster(c->num_clusters(), -1);
    for (std::int32_t a = 0; a < sg->size(); ++a) {
      auto& cc = comp_of_cluster[c->cluster_of[a]];
      if (cc < 0) cc = comp[a];
      EXPECT_EQ(cc, comp[a]);
    }

    auto again = LabelPropagation(*sg, trial);
    EXPECT_EQ(c->cluster_of, again->cluster_of);
  }
}

TEST(DefaultClusterFnTest, MatchesLabelPropagation) {
  EgoSubgraph sg = MakeSubgraph(4, {{0, 1}, {2, 3}});
  auto a = DefaultClusterFn()(sg, 9);
  auto b = LabelPropagation(sg, 9);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->cluster_of, b->cluster_of);
  EXPECT_EQ(a->num_clusters(), 2);
}

}  // namespace
}  // namespace egp
