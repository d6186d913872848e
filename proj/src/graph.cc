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

#include "egp/graph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace egp {
namespace {

// Splits on whitespace and commas, dropping empty fields.
std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool ParseInt(std::string_view token, std::int64_t* out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

absl::Status LineError(std::int64_t line_no, std::string_view what,
                       std::string_view line) {
  return absl::InvalidArgumentError(absl::StrCat(
      "line ", line_no, ": ", std::string(what), ": '", std::string(line),
      "'"));
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

absl::StatusOr<Graph> ParseEdgeList(std::istream& in, LoadSummary* summary) {
  std::vector<std::pair<ExternalId, ExternalId>> raw;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    std::size_t first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (view[first] == '%' || view[first] == '#') continue;
    auto tokens = Tokenize(view);
    if (tokens.size() < 2) {
      return LineError(line_no, "expected a pair of node ids", line);
    }
    ExternalId u, v;
    if (!ParseInt(tokens[0], &u) || !ParseInt(tokens[1], &v)) {
      return LineError(line_no, "node ids must be integers", line);
    }
    if (tokens.size() > 2) ++summary->extra_columns_ignored;
    raw.emplace_back(u, v);
  }
  summary->lines_read = line_no;

  std::vector<ExternalId> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index_of = [&ids](ExternalId id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) -
                               ids.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) edges.emplace_back(index_of(u), index_of(v));
  if (ids.size() > static_cast<std::size_t>(INT32_MAX)) {
    return absl::OutOfRangeError("too many distinct node ids");
  }
  const auto n = static_cast<NodeId>(ids.size());
  return Graph::FromEdges(n, std::move(edges), std::move(ids), summary);
}

absl::StatusOr<Graph> ParseMatrixMarket(std::istream& in,
                                        LoadSummary* summary) {
  std::string line;
  std::int64_t line_no = 0;
  std::int64_t dimension = -1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (IsBlank(view)) continue;
    std::size_t first = view.find_first_not_of(" \t");
    if (view[first] == '%' || view[first] == '#') continue;
    auto tokens = Tokenize(view);
    if (dimension < 0) {
      std::int64_t rows, cols;
      if (tokens.size() < 2 || !ParseInt(tokens[0], &rows) ||
          !ParseInt(tokens[1], &cols) || rows < 0 || cols < 0) {
        return LineError(line_no, "malformed size line", line);
      }
      dimension = std::max(rows, cols);
      if (dimension > INT32_MAX) {
        return LineError(line_no, "dimension too large", line);
      }
      continue;
    }
    std::int64_t u, v;
    if (tokens.size() < 2 || !ParseInt(tokens[0], &u) ||
        !ParseInt(tokens[1], &v)) {
      return LineError(line_no, "expected a pair of 1-based indices", line);
    }
    if (u < 1 || v < 1 || u > dimension || v > dimension) {
      return LineError(line_no, "index outside declared dimension", line);
    }
    if (tokens.size() > 2) ++summary->extra_columns_ignored;
    edges.emplace_back(static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1));
  }
  summary->lines_read = line_no;
  if (dimension < 0) {
    return absl::InvalidArgumentError("MatrixMarket file has no size line");
  }
  std::vector<ExternalId> ids(dimension);
  for (std::int64_t i = 0; i < dimension; ++i) ids[i] = i + 1;
  return Graph::FromEdges(static_cast<NodeId>(dimension), std::move(edges),
                          std::move(ids), summary);
}

absl::StatusOr<Graph> Parse(std::istream& in, GraphFormat format,
                            LoadSummary* summary) {
  LoadSummary local;
  LoadSummary* s = summary != nullptr ? summary : &local;
  *s = LoadSummary{};
  return format == GraphFormat::kEdgeList ? ParseEdgeList(in, s)
                                          : ParseMatrixMarket(in, s);
}

}  // namespace

absl::StatusOr<GraphFormat> ParseGraphFormat(const std::string& name) {
  if (name == "edgelist") return GraphFormat::kEdgeList;
  if (name == "mtx") return GraphFormat::kMatrixMarket;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown graph format '", name,
                   "' (expected edgelist or mtx)"));
}

std::string GraphFormatName(GraphFormat format) {
  return format == GraphFormat::kEdgeList ? "edgelist" : "mtx";
}

std::vector<std::string> LoadSummary::Warnings() const {
  std::vector<std::string> out;
  if (self_loops_dropped > 0) {
    out.push_back(absl::StrCat("dropped ", self_loops_dropped, " self-loop(s)"));
  }
  if (duplicate_edges_collapsed > 0) {
    out.push_back(absl::StrCat("collapsed ", duplicate_edges_collapsed,
                               " duplicate edge record(s)"));
  }
  if (extra_columns_ignored > 0) {
    out.push_back(absl::StrCat("ignored extra columns on ",
                               extra_columns_ignored, " line(s)"));
  }
  return out;
}

absl::StatusOr<Graph> Graph::FromEdges(
    NodeId num_nodes, std::vector<std::pair<NodeId, NodeId>> edges,
    std::vector<ExternalId> external_ids, LoadSummary* summary) {
  if (num_nodes < 0) return absl::InvalidArgumentError("negative node count");
  if (external_ids.empty()) {
    external_ids.resize(num_nodes);
    for (NodeId v = 0; v < num_nodes; ++v) external_ids[v] = v;
  }
  if (external_ids.size() != static_cast<std::size_t>(num_nodes)) {
    return absl::InvalidArgumentError("external id table size mismatch");
  }

  std::int64_t self_loops = 0;
  std::vector<std::pair<NodeId, NodeId>> directed;
  directed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      return absl::OutOfRangeError(
          absl::StrCat("edge (", u, ", ", v, ") outside [0, ", num_nodes, ")"));
    }
    if (u == v) {
      ++self_loops;
      continue;
    }
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  const std::size_t before = directed.size();
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()),
                 directed.end());
  if (directed.empty()) {
    return absl::InvalidArgumentError(
        "graph has no edges after dropping self-loops");
  }

  Graph g;
  g.offsets_.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
  g.neighbors_.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++g.offsets_[u + 1];
    g.neighbors_.push_back(v);
  }
  for (NodeId v = 0; v < num_nodes; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.external_ids_ = std::move(external_ids);

  if (summary != nullptr) {
    summary->self_loops_dropped += self_loops;
    // Each surplus directed copy corresponds to half an undirected record.
    summary->duplicate_edges_collapsed +=
        static_cast<std::int64_t>(before - directed.size()) / 2;
  }
  return g;
}

bool Graph::HasEdge(NodeId u, NodeId v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

absl::StatusOr<Graph> LoadGraph(const std::string& path, GraphFormat format,
                                LoadSummary* summary) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open graph file ", path));
  }
  auto g = Parse(in, format, summary);
  if (!g.ok()) {
    return absl::Status(g.status().code(),
                        absl::StrCat(path, ": ", g.status().message()));
  }
  return g;
}

absl::StatusOr<Graph> ParseGraph(const std::string& text, GraphFormat format,
                                 LoadSummary* summary) {
  std::istringstream in(text);
  return Parse(in, format, summary);
}

std::string FormatEdgeList(const Graph& g) {
  std::string out;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v) {
        absl::StrAppend(&out, g.external_id(u), " ", g.external_id(v), "\n");
      }
    }
  }
  return out;
}

absl::StatusOr<EgoSubgraph> SecondNeighborhoodEgoGraph(
    const Graph& g, std::span<const NodeId> egos) {
  const NodeId n = g.num_nodes();
  EgoSubgraph sg;
  sg.ego_ids.assign(egos.begin(), egos.end());
  std::sort(sg.ego_ids.begin(), sg.ego_ids.end());
  for (std::size_t k = 0; k < sg.ego_ids.size(); ++k) {
    NodeId e = sg.ego_ids[k];
    if (e < 0 || e >= n) {
      return absl::OutOfRangeError(absl::StrCat("ego ", e, " is not a node"));
    }
    if (k > 0 && sg.ego_ids[k - 1] == e) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate ego ", e));
    }
  }

  std::vector<std::int32_t> local(n, -1);
  for (std::int32_t k = 0; k < sg.size(); ++k) local[sg.ego_ids[k]] = k;

  // stamp[v] == a + 1 marks v as adjacent to (or equal to) the current ego a;
  // seen[b] == a + 1 marks ego b as already emitted for a.
  std::vector<std::int32_t> adjacent_stamp(n, 0);
  std::vector<std::int32_t> seen_stamp(sg.size(), 0);
  sg.offsets.assign(sg.ego_ids.size() + 1, 0);
  std::vector<std::int32_t> row;
  for (std::int32_t a = 0; a < sg.size(); ++a) {
    const NodeId ego = sg.ego_ids[a];
    const std::int32_t stamp = a + 1;
    adjacent_stamp[ego] = stamp;
    for (NodeId v : g.neighbors(ego)) adjacent_stamp[v] = stamp;
    row.clear();
    for (NodeId k : g.neighbors(ego)) {
      for (NodeId b_node : g.neighbors(k)) {
        const std::int32_t b = local[b_node];
        if (b < 0 || adjacent_stamp[b_node] == stamp) continue;
        if (seen_stamp[b] == stamp) continue;
        seen_stamp[b] = stamp;
        row.push_back(b);
      }
    }
    std::sort(row.begin(), row.end());
    sg.neighbors.insert(sg.neighbors.end(), row.begin(), row.end());
    sg.offsets[a + 1] = static_cast<std::int64_t>(sg.neighbors.size());
  }
  return sg;
}

}  // namespace egp
