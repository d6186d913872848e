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

#ifndef EGP_GRAPH_H_
#define EGP_GRAPH_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace egp {

// Dense zero-based node index. External ids from input files are remapped.
using NodeId = std::int32_t;
using ExternalId = std::int64_t;

enum class GraphFormat { kEdgeList, kMatrixMarket };

absl::StatusOr<GraphFormat> ParseGraphFormat(const std::string& name);
std::string GraphFormatName(GraphFormat format);

// Counts of input records that were normalized away while loading.
struct LoadSummary {
  std::int64_t lines_read = 0;
  std::int64_t self_loops_dropped = 0;
  std::int64_t duplicate_edges_collapsed = 0;
  std::int64_t extra_columns_ignored = 0;

  // Human-readable warnings, empty when the input was already clean.
  std::vector<std::string> Warnings() const;
};

// Immutable undirected simple graph in compressed sparse row form.
//
// Neighbor lists are sorted and free of duplicates and self-loops; every
// edge {u, v} is stored twice (v in N(u) and u in N(v)). Safe for concurrent
// reads.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on `num_nodes` nodes from an arbitrary list of endpoint
  // pairs. Pairs are symmetrized; self-loops and repeats are dropped and
  // counted in `summary` when it is non-null. `external_ids` (optional) maps
  // internal index to the caller's id and must have `num_nodes` entries.
  static absl::StatusOr<Graph> FromEdges(
      NodeId num_nodes, std::vector<std::pair<NodeId, NodeId>> edges,
      std::vector<ExternalId> external_ids = {},
      LoadSummary* summary = nullptr);

  NodeId num_nodes() const { return static_cast<NodeId>(degree_size()); }
  std::int64_t num_edges() const {
    return static_cast<std::int64_t>(neighbors_.size()) / 2;
  }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v],
            neighbors_.data() + offsets_[v + 1]};
  }
  std::int32_t degree(NodeId v) const {
    return static_cast<std::int32_t>(offsets_[v + 1] - offsets_[v]);
  }
  bool HasEdge(NodeId u, NodeId v) const;

  ExternalId external_id(NodeId v) const { return external_ids_[v]; }
  const std::vector<ExternalId>& external_ids() const { return external_ids_; }

  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  const std::vector<NodeId>& flat_neighbors() const { return neighbors_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t degree_size() const {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }

  std::vector<std::int64_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<ExternalId> external_ids_;
};

// Loads an edge list or MatrixMarket pattern file.
//
// Edge lists hold one pair per line separated by whitespace or commas; lines
// starting with '%' or '#' are comments. Node ids are remapped to dense
// indices in ascending order of their numeric value. MatrixMarket files are
// 1-based; every row index up to the declared dimension becomes a node, so
// isolated nodes are preserved. Fails on unparsable lines (reporting the line
// number) and on graphs without edges.
absl::StatusOr<Graph> LoadGraph(const std::string& path, GraphFormat format,
                                LoadSummary* summary = nullptr);

// Parses graph text already held in memory. Same rules as LoadGraph.
absl::StatusOr<Graph> ParseGraph(const std::string& text, GraphFormat format,
                                 LoadSummary* summary = nullptr);

// Writes every edge once as "u v" in external ids, u < v by internal index.
std::string FormatEdgeList(const Graph& g);

// Second-neighborhood graph restricted to a set of egos.
//
// Egos a != b are adjacent iff they are not adjacent in the source graph and
// share at least one common neighbor there.
struct EgoSubgraph {
  std::vector<NodeId> ego_ids;  // sorted; local index = position
  std::vector<std::int64_t> offsets;
  std::vector<std::int32_t> neighbors;  // local ego indices, sorted

  std::int32_t size() const { return static_cast<std::int32_t>(ego_ids.size()); }
  std::span<const std::int32_t> neighbors_of(std::int32_t local) const {
    return {neighbors.data() + offsets[local],
            neighbors.data() + offsets[local + 1]};
  }
  std::int64_t num_edges() const {
    return static_cast<std::int64_t>(neighbors.size()) / 2;
  }
};

// Builds the ego-restricted second-neighborhood graph by two-hop expansion
// from each ego; the full n x n matrix is never formed. `egos` need not be
// sorted but must be distinct valid node ids.
absl::StatusOr<EgoSubgraph> SecondNeighborhoodEgoGraph(
    const Graph& g, std::span<const NodeId> egos);

}  // namespace egp

#endif  // EGP_GRAPH_H_
