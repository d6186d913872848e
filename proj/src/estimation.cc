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

#include "egp/estimation.h"

#include <cmath>
#include <limits>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "egp/parallel.h"
#include "egp/random.h"
#include "egp/status_macros.h"

namespace egp {
namespace {

struct ArmMoments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations (Welford)

  void Add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double SampleVariance() const {
    return m2 / static_cast<double>(count - 1);
  }
};

}  // namespace

absl::StatusOr<EstimateRecord> EgoDiffInMeans(std::span<const double> outcomes,
                                              const Partition& p,
                                              const ExposureSummary& exposure) {
  if (outcomes.size() != exposure.ego_ids.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        outcomes.size(), " outcomes for ", exposure.ego_ids.size(), " egos"));
  }
  ArmMoments treated, control;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const NodeId i = exposure.ego_ids[k];
    if (i < 0 || i >= p.num_nodes() || !p.is_ego(i)) {
      return absl::InvalidArgumentError(
          absl::StrCat("node ", i, " is not an ego"));
    }
    switch (p.arm[i]) {
      case Arm::kTreatment:
        treated.Add(outcomes[k]);
        break;
      case Arm::kControl:
        control.Add(outcomes[k]);
        break;
      case Arm::kUnassigned:
        return absl::FailedPreconditionError(
            absl::StrCat("ego ", i, " has no arm"));
    }
  }
  if (treated.count == 0 || control.count == 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "empty arm: ", treated.count, " treated and ", control.count,
        " control egos"));
  }

  EstimateRecord r;
  r.n1 = treated.count;
  r.n0 = control.count;
  r.tau_hat = treated.mean - control.mean;
  if (treated.count >= 2 && control.count >= 2) {
    r.se = std::sqrt(treated.SampleVariance() / treated.count +
                     control.SampleVariance() / control.count);
    r.ci_low = r.tau_hat - kZ95 * r.se;
    r.ci_high = r.tau_hat + kZ95 * r.se;
  } else {
    r.se = std::numeric_limits<double>::quiet_NaN();
    r.ci_low = r.ci_high = std::numeric_limits<double>::quiet_NaN();
  }
  r.mean_sigma_t = exposure.mean_sigma_treated;
  r.mean_sigma_c = exposure.mean_sigma_control;
  r.r_statistic = exposure.r_statistic;
  return r;
}

absl::StatusOr<double> AnalyticBiasLinear(const OutcomeModel& model,
                                          const ExposureSummary& exposure) {
  if (model.kind() != OutcomeKind::kLinear) {
    return absl::InvalidArgumentError(
        absl::StrCat("analytic bias needs a linear model, got ",
                     OutcomeKindName(model.kind())));
  }
  return model.spillover_coefficient() * (exposure.r_statistic - 1.0);
}

absl::StatusOr<double> ApproxBiasConvex(const std::function<double(double)>& g2,
                                        double mean_sigma_t,
                                        double mean_sigma_c) {
  if (!(0.0 <= mean_sigma_c && mean_sigma_c <= mean_sigma_t &&
        mean_sigma_t <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need 0 <= mean_sigma_c <= mean_sigma_t <= 1, got mean_sigma_c=",
        mean_sigma_c, ", mean_sigma_t=", mean_sigma_t));
  }
  return (g2(mean_sigma_t) - g2(mean_sigma_c)) - (g2(1.0) - g2(0.0));
}

std::uint64_t ReplicationSeed(std::uint64_t master_seed, std::int64_t rep) {
  return DeriveSeed(master_seed, Stream::kReplication,
                    static_cast<std::uint64_t>(rep));
}

absl::StatusOr<EstimateRecord> RunReplication(const Graph& g,
                                              const Design& design,
                                              const OutcomeModel& model,
                                              std::uint64_t seed,
                                              int threads) {
  EGP_ASSIGN_OR_RETURN(Partition p, RunDesign(g, design, seed, threads));
  EGP_ASSIGN_OR_RETURN(ExposureSummary exposure, ComputeExposure(g, p));
  EGP_ASSIGN_OR_RETURN(
      std::vector<double> y,
      GenerateOutcomes(model, p, exposure, DeriveSeed(seed, Stream::kNoise)));
  return EgoDiffInMeans(y, p, exposure);
}

absl::StatusOr<SimReport> MonteCarloBias(const Graph& g, const Design& design,
                                         const OutcomeModel& model,
                                         std::int64_t reps,
                                         std::uint64_t master_seed,
                                         int threads) {
  if (reps < 1) return absl::InvalidArgumentError("reps must be >= 1");
  EGP_RETURN_IF_ERROR(ValidateDesign(design));

  std::vector<std::optional<absl::StatusOr<EstimateRecord>>> results(reps);
  ParallelFor(reps, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t r = begin; r < end; ++r) {
      results[r] =
          RunReplication(g, design, model, ReplicationSeed(master_seed, r));
    }
  });

  SimReport report;
  report.design = design;
  report.reps = reps;
  report.master_seed = master_seed;
  report.true_tau = TrueGate(model);
  report.per_rep.reserve(reps);
  double sum_tau = 0.0, sum_t = 0.0, sum_c = 0.0, sum_width = 0.0;
  std::int64_t widths = 0;
  for (std::int64_t r = 0; r < reps; ++r) {
    const auto& result = *results[r];
    if (!result.ok()) {
      return absl::Status(result.status().code(),
                          absl::StrCat("replication ", r, ": ",
                                       result.status().message()));
    }
    const EstimateRecord& rec = *result;
    sum_tau += rec.tau_hat;
    sum_t += rec.mean_sigma_t;
    sum_c += rec.mean_sigma_c;
    if (std::isfinite(rec.se)) {
      sum_width += rec.ci_high - rec.ci_low;
      ++widths;
    }
    report.per_rep.push_back(rec);
  }
  const double count = static_cast<double>(reps);
  report.mean_tau_hat = sum_tau / count;
  report.mean_bias = report.mean_tau_hat - report.true_tau;
  report.mean_sigma_t = sum_t / count;
  report.mean_sigma_c = sum_c / count;
  report.mean_ci_width = widths > 0
                             ? sum_width / static_cast<double>(widths)
                             : std::numeric_limits<double>::quiet_NaN();
  if (reps > 1) {
    double ss = 0.0;
    for (const auto& rec : report.per_rep) {
      const double d = rec.tau_hat - report.mean_tau_hat;
      ss += d * d;
    }
    report.bias_sd = std::sqrt(ss / (count - 1.0));
  } else {
    report.bias_sd = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace egp
