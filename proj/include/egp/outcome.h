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

#ifndef EGP_OUTCOME_H_
#define EGP_OUTCOME_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "egp/partition.h"

namespace egp {

enum class OutcomeKind { kLinear, kConvexExp, kClippedLinear, kCustomAdditive };

absl::StatusOr<OutcomeKind> ParseOutcomeKind(const std::string& name);
std::string OutcomeKindName(OutcomeKind kind);

// Additive potential-outcome model Y_i = g1(W_i) + g2(sigma_i) + e_i with
// e_i ~ Normal(0, noise_sd^2).
//
//   linear          params {b0, b1, b2}:      Y = b0 + b1 W + b2 sigma
//   convex_exp      params {a, b, c}:         Y = a + b W - exp(-c sigma)
//   clipped_linear  params {b1, b2, b3, cap}: Y = b1 + b2 W + b3 min(sigma, cap)
//   custom_additive g1 and g2 supplied by the caller
//
// Non-linear kinds must have an exposure response that is non-decreasing
// with a non-positive second derivative on [0, 1]; this is checked on a grid
// at construction.
class OutcomeModel {
 public:
  static absl::StatusOr<OutcomeModel> Linear(double b0, double b1, double b2,
                                             double noise_sd = 0.0);
  static absl::StatusOr<OutcomeModel> ConvexExp(double a, double b, double c,
                                                double noise_sd = 0.0);
  static absl::StatusOr<OutcomeModel> ClippedLinear(double b1, double b2,
                                                    double b3, double cap,
                                                    double noise_sd = 0.0);
  static absl::StatusOr<OutcomeModel> CustomAdditive(
      std::function<double(int)> g1, std::function<double(double)> g2,
      double noise_sd = 0.0);
  // Dispatches on kind with the positional params listed above.
  static absl::StatusOr<OutcomeModel> FromParams(OutcomeKind kind,
                                                 const std::vector<double>& params,
                                                 double noise_sd);

  OutcomeKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  double noise_sd() const { return noise_sd_; }

  double TreatmentTerm(int w) const;       // g1
  double ExposureTerm(double sigma) const;  // g2
  double Mean(int w, double sigma) const {
    return TreatmentTerm(w) + ExposureTerm(sigma);
  }

  // Coefficient on sigma; only meaningful for kLinear.
  double spillover_coefficient() const;

 private:
  OutcomeModel() = default;

  OutcomeKind kind_ = OutcomeKind::kLinear;
  std::vector<double> params_;
  double noise_sd_ = 0.0;
  std::function<double(int)> g1_;
  std::function<double(double)> g2_;
};

// Checks that g2 is non-decreasing and has non-positive discrete second
// differences on a grid of spacing `step` over [0, 1].
absl::Status ValidateExposureResponse(const std::function<double(double)>& g2,
                                      double step = 1e-3);

// Outcomes of the egos listed in `exposure`, aligned with exposure.ego_ids.
// Noise is drawn in ego order from Engine(seed).
absl::StatusOr<std::vector<double>> GenerateOutcomes(
    const OutcomeModel& model, const Partition& p,
    const ExposureSummary& exposure, std::uint64_t seed);

// Global average treatment effect: (g1(1) - g1(0)) + (g2(1) - g2(0)).
double TrueGate(const OutcomeModel& model);

}  // namespace egp

#endif  // EGP_OUTCOME_H_
