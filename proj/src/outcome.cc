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

#include "egp/outcome.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "egp/random.h"
#include "egp/status_macros.h"

namespace egp {
namespace {

absl::Status CheckNoise(double noise_sd) {
  if (!(noise_sd >= 0.0) || std::isinf(noise_sd)) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise_sd must be finite and >= 0, got ", noise_sd));
  }
  return absl::OkStatus();
}

// Relative slack for rounding in the grid checks.
constexpr double kGridTolerance = 1e-12;

}  // namespace

absl::StatusOr<OutcomeKind> ParseOutcomeKind(const std::string& name) {
  if (name == "linear") return OutcomeKind::kLinear;
  if (name == "convex_exp") return OutcomeKind::kConvexExp;
  if (name == "clipped_linear") return OutcomeKind::kClippedLinear;
  if (name == "custom_additive") return OutcomeKind::kCustomAdditive;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown outcome model '", name,
      "' (expected linear, convex_exp or clipped_linear)"));
}

std::string OutcomeKindName(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kLinear:
      return "linear";
    case OutcomeKind::kConvexExp:
      return "convex_exp";
    case OutcomeKind::kClippedLinear:
      return "clipped_linear";
    case OutcomeKind::kCustomAdditive:
      return "custom_additive";
  }
  return "unknown";
}

absl::Status ValidateExposureResponse(const std::function<double(double)>& g2,
                                      double step) {
  const int steps = static_cast<int>(std::lround(1.0 / step));
  std::vector<double> values(steps + 1);
  double scale = 0.0;
  for (int k = 0; k <= steps; ++k) {
    values[k] = g2(std::min(1.0, k * step));
    if (!std::isfinite(values[k])) {
      return absl::InvalidArgumentError(
          absl::StrCat("g2 is not finite at sigma=", k * step));
    }
    scale = std::max(scale, std::abs(values[k]));
  }
  const double slack = kGridTolerance * std::max(1.0, scale);
  for (int k = 1; k <= steps; ++k) {
    if (values[k] < values[k - 1] - slack) {
      return absl::InvalidArgumentError(absl::StrCat(
          "g2 decreases near sigma=", k * step, "; it must be non-decreasing"));
    }
  }
  for (int k = 1; k < steps; ++k) {
    const double second = values[k + 1] - 2.0 * values[k] + values[k - 1];
    if (second > slack) {
      return absl::InvalidArgumentError(absl::StrCat(
          "g2 has positive curvature near sigma=", k * step,
          "; its second derivative must be <= 0"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<OutcomeModel> OutcomeModel::Linear(double b0, double b1,
                                                  double b2, double noise_sd) {
  EGP_RETURN_IF_ERROR(CheckNoise(noise_sd));
  OutcomeModel m;
  m.kind_ = OutcomeKind::kLinear;
  m.params_ = {b0, b1, b2};
  m.noise_sd_ = noise_sd;
  m.g1_ = [b0, b1](int w) { return b0 + b1 * w; };
  m.g2_ = [b2](double s) { return b2 * s; };
  return m;
}

absl::StatusOr<OutcomeModel> OutcomeModel::ConvexExp(double a, double b,
                                                     double c,
                                                     double noise_sd) {
  EGP_RETURN_IF_ERROR(CheckNoise(noise_sd));
  OutcomeModel m;
  m.kind_ = OutcomeKind::kConvexExp;
  m.params_ = {a, b, c};
  m.noise_sd_ = noise_sd;
  m.g1_ = [a, b](int w) { return a + b * w; };
  m.g2_ = [c](double s) { return -std::exp(-c * s); };
  EGP_RETURN_IF_ERROR(ValidateExposureResponse(m.g2_));
  return m;
}

absl::StatusOr<OutcomeModel> OutcomeModel::ClippedLinear(double b1, double b2,
                                                         double b3, double cap,
                                                         double noise_sd) {
  EGP_RETURN_IF_ERROR(CheckNoise(noise_sd));
  if (!(cap >= 0.0)) {
    return absl::InvalidArgumentError("clipping level must be >= 0");
  }
  OutcomeModel m;
  m.kind_ = OutcomeKind::kClippedLinear;
  m.params_ = {b1, b2, b3, cap};
  m.noise_sd_ = noise_sd;
  m.g1_ = [b1, b2](int w) { return b1 + b2 * w; };
  m.g2_ = [b3, cap](double s) { return b3 * std::min(s, cap); };
  EGP_RETURN_IF_ERROR(ValidateExposureResponse(m.g2_));
  return m;
}

absl::StatusOr<OutcomeModel> OutcomeModel::CustomAdditive(
    std::function<double(int)> g1, std::function<double(double)> g2,
    double noise_sd) {
  EGP_RETURN_IF_ERROR(CheckNoise(noise_sd));
  if (!g1 || !g2) {
    return absl::InvalidArgumentError("custom model needs both g1 and g2");
  }
  EGP_RETURN_IF_ERROR(ValidateExposureResponse(g2));
  OutcomeModel m;
  m.kind_ = OutcomeKind::kCustomAdditive;
  m.noise_sd_ = noise_sd;
  m.g1_ = std::move(g1);
  m.g2_ = std::move(g2);
  return m;
}

absl::StatusOr<OutcomeModel> OutcomeModel::FromParams(
    OutcomeKind kind, const std::vector<double>& params, double noise_sd) {
  auto need = [&](std::size_t count) -> absl::Status {
    if (params.size() != count) {
      return absl::InvalidArgumentError(
          absl::StrCat(OutcomeKindName(kind), " takes ", count,
                       " parameters, got ", params.size()));
    }
    return absl::OkStatus();
  };
  switch (kind) {
    case OutcomeKind::kLinear:
      EGP_RETURN_IF_ERROR(need(3));
      return Linear(params[0], params[1], params[2], noise_sd);
    case OutcomeKind::kConvexExp:
      EGP_RETURN_IF_ERROR(need(3));
      return ConvexExp(params[0], params[1], params[2], noise_sd);
    case OutcomeKind::kClippedLinear:
      EGP_RETURN_IF_ERROR(need(4));
      return ClippedLinear(params[0], params[1], params[2], params[3],
                           noise_sd);
    case OutcomeKind::kCustomAdditive:
      break;
  }
  return absl::InvalidArgumentError(
      "custom_additive models cannot be built from numeric parameters");
}

double OutcomeModel::TreatmentTerm(int w) const { return g1_(w); }

double OutcomeModel::ExposureTerm(double sigma) const { return g2_(sigma); }

double OutcomeModel::spillover_coefficient() const {
  return kind_ == OutcomeKind::kLinear ? params_[2] : 0.0;
}

absl::StatusOr<std::vector<double>> GenerateOutcomes(
    const OutcomeModel& model, const Partition& p,
    const ExposureSummary& exposure, std::uint64_t seed) {
  if (exposure.sigma.size() != exposure.ego_ids.size()) {
    return absl::InvalidArgumentError("exposure summary is malformed");
  }
  Engine engine(seed);
  std::vector<double> y;
  y.reserve(exposure.ego_ids.size());
  for (std::size_t k = 0; k < exposure.ego_ids.size(); ++k) {
    const NodeId i = exposure.ego_ids[k];
    if (i < 0 || i >= p.num_nodes() || !p.is_ego(i) ||
        p.arm[i] == Arm::kUnassigned) {
      return absl::FailedPreconditionError(
          absl::StrCat("node ", i, " is not an assigned ego"));
    }
    double value = model.Mean(p.treated(i) ? 1 : 0, exposure.sigma[k]);
    if (model.noise_sd() > 0.0) value += model.noise_sd() * StandardNormal(engine);
    y.push_back(value);
  }
  return y;
}

double TrueGate(const OutcomeModel& model) {
  const auto& b = model.params();
  switch (model.kind()) {
    case OutcomeKind::kLinear:
      return b[1] + b[2];
    case OutcomeKind::kConvexExp:
      return b[1] + 1.0 - std::exp(-b[2]);
    case OutcomeKind::kClippedLinear:
      return b[1] + b[2] * std::min(b[3], 1.0);
    case OutcomeKind::kCustomAdditive:
      break;
  }
  return (model.TreatmentTerm(1) - model.TreatmentTerm(0)) +
         (model.ExposureTerm(1.0) - model.ExposureTerm(0.0));
}

}  // namespace egp
