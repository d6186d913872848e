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

#ifndef EGP_TOOLS_SERIALIZATION_H_
#define EGP_TOOLS_SERIALIZATION_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "egp/estimation.h"
#include "egp/graph.h"
#include "egp/partition.h"
#include "json.hpp"

namespace egp::cli {

// Treatment bitset over internal ids: bit v lives in byte v / 8 at position
// v % 8 (least significant first), base64-encoded with padding.
std::string EncodeTreatment(const Partition& p);
absl::StatusOr<std::vector<bool>> DecodeTreatment(const std::string& encoded,
                                                  std::int64_t num_nodes);

// partition.json document. `load_warnings` come from the graph load summary.
nlohmann::ordered_json PartitionToJson(
    const Graph& g, const Partition& p, const ExposureSummary& exposure,
    const std::vector<std::string>& load_warnings);

// Rebuilds the Partition recorded in a partition.json document. The graph
// must be the one the partition was produced on.
absl::StatusOr<Partition> PartitionFromJson(const nlohmann::json& j,
                                            const Graph& g);

// Shortest decimal that round-trips to the same double.
std::string FormatDouble(double x);

// "ego_external_id,arm,sigma" rows, one per ego in internal id order.
std::string SigmaCsv(const Graph& g, const Partition& p,
                     const ExposureSummary& exposure);

inline constexpr int kSigmaBins = 20;

// Bin of sigma in [0, 1] among kSigmaBins equal bins; 1.0 falls in the last.
int SigmaBin(double sigma);

// Overlaid treated/control sigma histograms with mean markers.
std::string SigmaSvg(const Partition& p, const ExposureSummary& exposure,
                     const std::string& title);

// Metric pair in the "x% ± 0.5%" style after scaling so that the reference
// confidence interval has width one.
struct RescaledValue {
  double value = 0.0;
  std::string display;
};
RescaledValue Rescale(double value, double ci_width);

std::string PerRepCsv(const SimReport& report);

}  // namespace egp::cli

#endif  // EGP_TOOLS_SERIALIZATION_H_
