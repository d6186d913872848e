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

#include "egp/partition.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "egp/parallel.h"
#include "egp/random.h"
#include "egp/status_macros.h"

namespace egp {
namespace {

absl::Status RequireEgosAssigned(const Graph& g, const Partition& p) {
  if (p.num_nodes() != g.num_nodes() ||
      p.ego_flags.size() != p.arm.size()) {
    return absl::InvalidArgumentError("partition does not match graph size");
  }
  EGP_RETURN_IF_ERROR(ValidatePartition(p, /*require_complete=*/false));
  if (p.n1 == 0 || p.n0 == 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "degenerate ego randomization: n1=", p.n1, ", n0=", p.n0));
  }
  return absl::OkStatus();
}

// Alters adjacent to at least one ego, ascending.
std::vector<NodeId> EgoAdjacentAlters(const Graph& g, const Partition& p) {
  std::vector<std::uint8_t> mark(g.num_nodes(), 0);
  std::vector<NodeId> out;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (!p.is_ego(i)) continue;
    for (NodeId j : g.neighbors(i)) {
      if (!p.is_ego(j) && !mark[j]) {
        mark[j] = 1;
        out.push_back(j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Rule>
absl::StatusOr<Partition> AssignAlters(const Graph& g, Partition p,
                                       int threads, Rule treat) {
  EGP_ASSIGN_OR_RETURN(DeltaScores scores, ComputeDeltaScores(g, p, threads));
  for (NodeId j = 0; j < g.num_nodes(); ++j) {
    if (p.is_ego(j)) continue;
    p.arm[j] = treat(scores, j) ? Arm::kTreatment : Arm::kControl;
  }
  return p;
}

}  // namespace

absl::StatusOr<Algorithm> ParseAlgorithm(const std::string& name) {
  if (name == "linear") return Algorithm::kLinear;
  if (name == "convex") return Algorithm::kConvex;
  if (name == "snc") return Algorithm::kSnc;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown algorithm '", name, "' (expected linear, convex or snc)"));
}

std::string AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kLinear:
      return "linear";
    case Algorithm::kConvex:
      return "convex";
    case Algorithm::kSnc:
      return "snc";
  }
  return "unknown";
}

bool Partition::complete() const {
  return std::none_of(arm.begin(), arm.end(),
                      [](Arm a) { return a == Arm::kUnassigned; });
}

std::vector<NodeId> Partition::Egos() const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < ego_flags.size(); ++v) {
    if (ego_flags[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

absl::Status ValidatePartition(const Partition& p, bool require_complete) {
  if (p.ego_flags.size() != p.arm.size()) {
    return absl::InvalidArgumentError("ego flags and arms differ in length");
  }
  std::int64_t n1 = 0, n0 = 0;
  for (std::size_t v = 0; v < p.arm.size(); ++v) {
    const Arm a = p.arm[v];
    if (p.ego_flags[v]) {
      if (a == Arm::kUnassigned) {
        return absl::FailedPreconditionError(
            absl::StrCat("ego ", v, " has no arm"));
      }
      (a == Arm::kTreatment ? n1 : n0)++;
    } else if (require_complete && a == Arm::kUnassigned) {
      return absl::FailedPreconditionError(
          absl::StrCat("alter ", v, " has no arm"));
    }
  }
  if (n1 != p.n1 || n0 != p.n0) {
    return absl::InternalError(absl::StrCat(
        "stored arm counts (", p.n1, ", ", p.n0, ") disagree with arms (", n1,
        ", ", n0, ")"));
  }
  return absl::OkStatus();
}

absl::StatusOr<EgoFlags> SelectEgos(const Graph& g, double q,
                                    std::uint64_t seed) {
  if (!(q > 0.0 && q < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("q must lie in (0, 1), got ", q));
  }
  std::vector<NodeId> eligible;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) > 0) eligible.push_back(v);
  }
  if (eligible.size() < 2) {
    return absl::FailedPreconditionError(
        "fewer than 2 nodes with degree >= 1 are eligible as egos");
  }
  const std::int64_t wanted = std::max<std::int64_t>(
      2, std::llround(q * static_cast<double>(g.num_nodes())));
  if (wanted > static_cast<std::int64_t>(eligible.size())) {
    return absl::FailedPreconditionError(absl::StrCat(
        "q=", q, " asks for ", wanted, " egos but only ", eligible.size(),
        " nodes have degree >= 1"));
  }

  Engine engine(seed);
  // Partial Fisher-Yates: the first `wanted` slots are a uniform sample.
  for (std::int64_t i = 0; i < wanted; ++i) {
    const auto j = i + static_cast<std::int64_t>(UniformBelow(
                           engine, eligible.size() - static_cast<std::size_t>(i)));
    std::swap(eligible[i], eligible[j]);
  }
  EgoFlags flags(g.num_nodes(), 0);
  for (std::int64_t i = 0; i < wanted; ++i) flags[eligible[i]] = 1;
  return flags;
}

absl::StatusOr<Partition> RandomizeEgos(const EgoFlags& ego_flags,
                                        std::uint64_t seed) {
  Partition p;
  p.ego_flags = ego_flags;
  p.arm.assign(ego_flags.size(), Arm::kUnassigned);
  std::vector<NodeId> egos = p.Egos();
  if (egos.size() < 2) {
    return absl::FailedPreconditionError("need at least 2 egos to randomize");
  }
  Engine engine(seed);
  Shuffle(egos, engine);
  const std::size_t treated = (egos.size() + 1) / 2;
  for (std::size_t k = 0; k < egos.size(); ++k) {
    p.arm[egos[k]] = k < treated ? Arm::kTreatment : Arm::kControl;
  }
  p.n1 = static_cast<std::int64_t>(treated);
  p.n0 = static_cast<std::int64_t>(egos.size() - treated);
  return p;
}

absl::StatusOr<Partition> PartitionFromEgoArms(NodeId num_nodes,
                                               std::span<const NodeId> egos,
                                               std::span<const Arm> arms) {
  if (egos.size() != arms.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        egos.size(), " egos but ", arms.size(), " arms were given"));
  }
  Partition p;
  p.ego_flags.assign(num_nodes, 0);
  p.arm.assign(num_nodes, Arm::kUnassigned);
  for (std::size_t k = 0; k < egos.size(); ++k) {
    const NodeId v = egos[k];
    if (v < 0 || v >= num_nodes) {
      return absl::OutOfRangeError(absl::StrCat("ego ", v, " is not a node"));
    }
    if (p.ego_flags[v]) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate ego ", v));
    }
    if (arms[k] == Arm::kUnassigned) {
      return absl::InvalidArgumentError("ego arm must be treatment or control");
    }
    p.ego_flags[v] = 1;
    p.arm[v] = arms[k];
    (arms[k] == Arm::kTreatment ? p.n1 : p.n0)++;
  }
  return p;
}

absl::StatusOr<DeltaScores> ComputeDeltaScores(const Graph& g,
                                               const Partition& p,
                                               int threads) {
  EGP_RETURN_IF_ERROR(RequireEgosAssigned(g, p));
  const NodeId n = g.num_nodes();
  DeltaScores s;
  s.treated_affinity.assign(n, 0.0);
  s.control_affinity.assign(n, 0.0);
  s.delta.assign(n, 0.0);
  s.delta_tilde.assign(n, std::numeric_limits<double>::quiet_NaN());

  const std::vector<NodeId> alters = EgoAdjacentAlters(g, p);
  const double n1 = static_cast<double>(p.n1);
  const double n0 = static_cast<double>(p.n0);
  ParallelFor(static_cast<std::int64_t>(alters.size()), threads,
              [&](std::int64_t begin, std::int64_t end) {
                for (std::int64_t k = begin; k < end; ++k) {
                  const NodeId j = alters[k];
                  double t = 0.0, c = 0.0;
                  for (NodeId i : g.neighbors(j)) {
                    if (!p.is_ego(i)) continue;
                    const double d = static_cast<double>(g.degree(i));
                    if (p.treated(i)) {
                      t += 1.0 / (n1 * d);
                    } else {
                      c += 1.0 / (n0 * d);
                    }
                  }
                  s.treated_affinity[j] = t;
                  s.control_affinity[j] = c;
                  s.delta[j] = t - c;
                  if (c > 0.0) {
                    s.delta_tilde[j] = (t - c) / c;
                  } else if (t > 0.0) {
                    s.delta_tilde[j] = std::numeric_limits<double>::infinity();
                  }
                }
              });
  return s;
}

absl::StatusOr<Partition> AssignAltersLinear(const Graph& g, Partition p,
                                             int threads) {
  EGP_ASSIGN_OR_RETURN(
      p, AssignAlters(g, std::move(p), threads,
                      [](const DeltaScores& s, NodeId j) {
                        return s.delta[j] > 0.0;
                      }));
  p.meta.algorithm = "linear";
  p.meta.theta = 0.0;
  return p;
}

absl::StatusOr<Partition> AssignAltersConvex(const Graph& g, Partition p,
                                             double theta, int threads) {
  if (!(theta >= 0.0) || std::isinf(theta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("theta must be finite and >= 0, got ", theta));
  }
  EGP_ASSIGN_OR_RETURN(
      p, AssignAlters(g, std::move(p), threads,
                      [theta](const DeltaScores& s, NodeId j) {
                        // NaN compares false, sending undefined scores to
                        // control.
                        return s.delta_tilde[j] > theta;
                      }));
  p.meta.algorithm = absl::StrCat("convex(", theta, ")");
  p.meta.theta = theta;
  return p;
}

absl::StatusOr<Partition> AssignAltersSnc(const Graph& g,
                                          const EgoFlags& ego_flags,
                                          std::uint64_t seed,
                                          const ClusterFn& cluster_fn,
                                          int threads) {
  if (ego_flags.size() != static_cast<std::size_t>(g.num_nodes())) {
    return absl::InvalidArgumentError("ego flags do not match graph size");
  }
  Partition p;
  p.ego_flags = ego_flags;
  p.arm.assign(ego_flags.size(), Arm::kUnassigned);
  const std::vector<NodeId> egos = p.Egos();
  if (egos.size() < 2) {
    return absl::FailedPreconditionError("need at least 2 egos");
  }
  EGP_ASSIGN_OR_RETURN(EgoSubgraph sg, SecondNeighborhoodEgoGraph(g, egos));
  EGP_ASSIGN_OR_RETURN(Clustering clusters,
                       cluster_fn(sg, DeriveSeed(seed, Stream::kClusterOrder)));
  if (clusters.cluster_of.size() != egos.size()) {
    return absl::InternalError("clustering does not cover every ego");
  }

  const std::vector<std::int32_t> sizes = clusters.ClusterSizes();
  std::vector<std::int32_t> order(sizes.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    order[c] = static_cast<std::int32_t>(c);
  }
  Engine engine = MakeEngine(seed, Stream::kClusterArms);
  Shuffle(order, engine);
  std::vector<Arm> cluster_arm(sizes.size(), Arm::kControl);
  for (std::int32_t c : order) {
    if (p.n1 <= p.n0) {
      cluster_arm[c] = Arm::kTreatment;
      p.n1 += sizes[c];
    } else {
      p.n0 += sizes[c];
    }
  }
  for (std::size_t k = 0; k < egos.size(); ++k) {
    p.arm[egos[k]] = cluster_arm[clusters.cluster_of[k]];
  }
  if (p.n1 == 0 || p.n0 == 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "second-neighborhood clustering put all ", egos.size(),
        " egos in one arm (", clusters.num_clusters(), " cluster(s))"));
  }
  EGP_ASSIGN_OR_RETURN(p, AssignAltersLinear(g, std::move(p), threads));
  p.meta.algorithm = "snc";
  return p;
}

std::int64_t CountCrossArmEdges(const EgoSubgraph& sg, const Partition& p) {
  std::int64_t count = 0;
  for (std::int32_t a = 0; a < sg.size(); ++a) {
    for (std::int32_t b : sg.neighbors_of(a)) {
      if (a < b && p.arm[sg.ego_ids[a]] != p.arm[sg.ego_ids[b]]) ++count;
    }
  }
  return count;
}

absl::StatusOr<ExposureSummary> ComputeExposure(const Graph& g,
                                                const Partition& p) {
  if (p.num_nodes() != g.num_nodes()) {
    return absl::InvalidArgumentError("partition does not match graph size");
  }
  EGP_RETURN_IF_ERROR(ValidatePartition(p, /*require_complete=*/true));
  if (p.n1 == 0 || p.n0 == 0) {
    return absl::FailedPreconditionError("both ego arms must be non-empty");
  }
  ExposureSummary out;
  out.ego_ids = p.Egos();
  out.sigma.reserve(out.ego_ids.size());
  double sum_t = 0.0, sum_c = 0.0;
  for (NodeId i : out.ego_ids) {
    const std::int32_t d = g.degree(i);
    if (d == 0) {
      return absl::FailedPreconditionError(
          absl::StrCat("ego ", g.external_id(i), " has no neighbors"));
    }
    std::int32_t treated = 0;
    for (NodeId j : g.neighbors(i)) treated += p.treated(j) ? 1 : 0;
    const double sigma = static_cast<double>(treated) / d;
    out.sigma.push_back(sigma);
    (p.treated(i) ? sum_t : sum_c) += sigma;
  }
  out.mean_sigma_treated = sum_t / static_cast<double>(p.n1);
  out.mean_sigma_control = sum_c / static_cast<double>(p.n0);
  out.r_statistic = out.mean_sigma_treated - out.mean_sigma_control;
  return out;
}

absl::Status ValidateDesign(const Design& design) {
  if (!(design.q > 0.0 && design.q < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("q must lie in (0, 1), got ", design.q));
  }
  if (!(design.theta >= 0.0) || std::isinf(design.theta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("theta must be finite and >= 0, got ", design.theta));
  }
  return absl::OkStatus();
}

absl::StatusOr<Partition> RunDesign(const Graph& g, const Design& design,
                                    std::uint64_t seed, int threads) {
  EGP_RETURN_IF_ERROR(ValidateDesign(design));
  EGP_ASSIGN_OR_RETURN(
      EgoFlags flags,
      SelectEgos(g, design.q, DeriveSeed(seed, Stream::kEgoSelection)));
  Partition p;
  if (design.algorithm == Algorithm::kSnc) {
    EGP_ASSIGN_OR_RETURN(
        p, AssignAltersSnc(g, flags, seed, DefaultClusterFn(), threads));
  } else {
    EGP_ASSIGN_OR_RETURN(
        Partition egos_assigned,
        RandomizeEgos(flags, DeriveSeed(seed, Stream::kEgoArms)));
    EGP_ASSIGN_OR_RETURN(
        p, CompleteDesign(g, design, std::move(egos_assigned), threads));
  }
  p.meta.q = design.q;
  p.meta.seed = seed;
  return p;
}

absl::StatusOr<Partition> CompleteDesign(const Graph& g, const Design& design,
                                         Partition egos_assigned,
                                         int threads) {
  EGP_RETURN_IF_ERROR(ValidateDesign(design));
  switch (design.algorithm) {
    case Algorithm::kLinear:
      return AssignAltersLinear(g, std::move(egos_assigned), threads);
    case Algorithm::kConvex:
      return AssignAltersConvex(g, std::move(egos_assigned), design.theta,
                                threads);
    case Algorithm::kSnc:
      break;
  }
  return absl::InvalidArgumentError(
      "snc assigns ego arms itself; explicit ego arms are not supported");
}

}  // namespace egp
