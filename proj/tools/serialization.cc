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

#include "serialization.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "absl/status/status.h"
#include "absl/strings/escaping.h"
#include "absl/strings/str_cat.h"

namespace egp::cli {

std::string EncodeTreatment(const Partition& p) {
  std::string bytes((p.num_nodes() + 7) / 8, '\0');
  for (std::int64_t v = 0; v < p.num_nodes(); ++v) {
    if (p.arm[v] == Arm::kTreatment) {
      bytes[v >> 3] = static_cast<char>(bytes[v >> 3] | (1 << (v & 7)));
    }
  }
  return absl::Base64Escape(bytes);
}

absl::StatusOr<std::vector<bool>> DecodeTreatment(const std::string& encoded,
                                                  std::int64_t num_nodes) {
  std::string bytes;
  if (!absl::Base64Unescape(encoded, &bytes)) {
    return absl::InvalidArgumentError("treatment is not valid base64");
  }
  if (static_cast<std::int64_t>(bytes.size()) != (num_nodes + 7) / 8) {
    return absl::InvalidArgumentError(absl::StrCat(
        "treatment bitset has ", bytes.size(), " bytes, expected ",
        (num_nodes + 7) / 8));
  }
  std::vector<bool> bits(num_nodes);
  for (std::int64_t v = 0; v < num_nodes; ++v) {
    bits[v] = (static_cast<unsigned char>(bytes[v >> 3]) >> (v & 7)) & 1;
  }
  return bits;
}

nlohmann::ordered_json PartitionToJson(
    const Graph& g, const Partition& p, const ExposureSummary& exposure,
    const std::vector<std::string>& load_warnings) {
  nlohmann::ordered_json j;
  j["n"] = g.num_nodes();
  j["m"] = g.num_edges();
  j["q"] = p.meta.q;
  j["theta"] = p.meta.theta;
  j["seed"] = p.meta.seed;
  j["algorithm"] = p.meta.algorithm;
  std::vector<ExternalId> egos;
  for (NodeId v : p.Egos()) egos.push_back(g.external_id(v));
  j["egos"] = egos;
  j["treatment"] = EncodeTreatment(p);
  j["id_remap"] = g.external_ids();
  j["n1"] = p.n1;
  j["n0"] = p.n0;
  j["sigma_summary"] = {{"mean_t", exposure.mean_sigma_treated},
                        {"mean_c", exposure.mean_sigma_control},
                        {"r", exposure.r_statistic}};
  j["load_warnings"] = load_warnings;
  return j;
}

absl::StatusOr<Partition> PartitionFromJson(const nlohmann::json& j,
                                            const Graph& g) {
  try {
    const auto n = j.at("n").get<std::int64_t>();
    if (n != g.num_nodes()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "partition is for ", n, " nodes but the graph has ", g.num_nodes()));
    }
    const auto remap = j.at("id_remap").get<std::vector<ExternalId>>();
    if (remap != g.external_ids()) {
      return absl::InvalidArgumentError(
          "partition id_remap does not match the graph's node ids");
    }
    std::unordered_map<ExternalId, NodeId> internal;
    for (NodeId v = 0; v < g.num_nodes(); ++v) internal[g.external_id(v)] = v;

    Partition p;
    p.ego_flags.assign(n, 0);
    for (ExternalId id : j.at("egos").get<std::vector<ExternalId>>()) {
      auto it = internal.find(id);
      if (it == internal.end()) {
        return absl::InvalidArgumentError(
            absl::StrCat("ego ", id, " is not a node of the graph"));
      }
      p.ego_flags[it->second] = 1;
    }
    auto bits = DecodeTreatment(j.at("treatment").get<std::string>(), n);
    if (!bits.ok()) return bits.status();
    p.arm.resize(n);
    for (std::int64_t v = 0; v < n; ++v) {
      p.arm[v] = (*bits)[v] ? Arm::kTreatment : Arm::kControl;
      if (p.ego_flags[v]) ++(p.arm[v] == Arm::kTreatment ? p.n1 : p.n0);
    }
    if (p.n1 != j.at("n1").get<std::int64_t>() ||
        p.n0 != j.at("n0").get<std::int64_t>()) {
      return absl::InvalidArgumentError(
          "n1/n0 disagree with the egos and treatment bitset");
    }
    p.meta.algorithm = j.at("algorithm").get<std::string>();
    p.meta.q = j.at("q").get<double>();
    p.meta.theta = j.at("theta").get<double>();
    p.meta.seed = j.at("seed").get<std::uint64_t>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed partition document: ", e.what()));
  }
}

std::string FormatDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string SigmaCsv(const Graph& g, const Partition& p,
                     const ExposureSummary& exposure) {
  std::string out = "ego_external_id,arm,sigma\n";
  for (std::size_t k = 0; k < exposure.ego_ids.size(); ++k) {
    const NodeId v = exposure.ego_ids[k];
    absl::StrAppend(&out, g.external_id(v), ",", p.treated(v) ? "T" : "C", ",",
                    FormatDouble(exposure.sigma[k]), "\n");
  }
  return out;
}

int SigmaBin(double sigma) {
  const int bin = static_cast<int>(std::floor(sigma * kSigmaBins));
  return std::clamp(bin, 0, kSigmaBins - 1);
}

namespace {

std::string Fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

}  // namespace

std::string SigmaSvg(const Partition& p, const ExposureSummary& exposure,
                     const std::string& title) {
  constexpr double kWidth = 640, kHeight = 360;
  constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;
  constexpr double kPlotW = kWidth - kLeft - kRight;
  constexpr double kPlotH = kHeight - kTop - kBottom;

  std::vector<double> treated(kSigmaBins, 0), control(kSigmaBins, 0);
  double n_t = 0, n_c = 0;
  for (std::size_t k = 0; k < exposure.ego_ids.size(); ++k) {
    const bool t = p.treated(exposure.ego_ids[k]);
    (t ? treated : control)[SigmaBin(exposure.sigma[k])] += 1;
    (t ? n_t : n_c) += 1;
  }
  double peak = 0;
  for (int b = 0; b < kSigmaBins; ++b) {
    if (n_t > 0) treated[b] /= n_t;
    if (n_c > 0) control[b] /= n_c;
    peak = std::max({peak, treated[b], control[b]});
  }
  if (peak <= 0) peak = 1;

  auto x_of = [&](double sigma) { return kLeft + sigma * kPlotW; };
  auto y_of = [&](double frac) { return kTop + kPlotH * (1.0 - frac / peak); };

  std::string svg = absl::StrCat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"", kWidth,
      "\" height=\"", kHeight, "\" viewBox=\"0 0 ", kWidth, " ", kHeight,
      "\">\n", "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      "<text x=\"", kWidth / 2, "\" y=\"22\" text-anchor=\"middle\" "
      "font-family=\"sans-serif\" font-size=\"15\">", title, "</text>\n");

  const double bar_w = kPlotW / kSigmaBins;
  auto bars = [&](const std::vector<double>& h, const char* color,
                  const char* name) {
    absl::StrAppend(&svg, "<g id=\"", name, "\" fill=\"", color,
                    "\" fill-opacity=\"0.45\" stroke=\"", color, "\">\n");
    for (int b = 0; b < kSigmaBins; ++b) {
      if (h[b] <= 0) continue;
      const double y = y_of(h[b]);
      absl::StrAppend(&svg, "<rect x=\"", Fixed(kLeft + b * bar_w), "\" y=\"",
                      Fixed(y), "\" width=\"", Fixed(bar_w), "\" height=\"",
                      Fixed(kTop + kPlotH - y), "\"/>\n");
    }
    absl::StrAppend(&svg, "</g>\n");
  };
  bars(treated, "#1f77b4", "treated");
  bars(control, "#ff7f0e", "control");

  auto marker = [&](double mean, const char* name) {
    absl::StrAppend(&svg, "<line id=\"mean_", name, "\" x1=\"",
                    Fixed(x_of(mean)), "\" y1=\"", Fixed(kTop), "\" x2=\"",
                    Fixed(x_of(mean)), "\" y2=\"", Fixed(kTop + kPlotH),
                    "\" stroke=\"#808080\" stroke-width=\"2\" "
                    "stroke-dasharray=\"6,3\"/>\n");
  };
  marker(exposure.mean_sigma_treated, "treated");
  marker(exposure.mean_sigma_control, "control");

  // Axes and ticks.
  absl::StrAppend(&svg, "<g stroke=\"black\" font-family=\"sans-serif\" "
                        "font-size=\"11\">\n");
  absl::StrAppend(&svg, "<line x1=\"", kLeft, "\" y1=\"", kTop + kPlotH,
                  "\" x2=\"", kLeft + kPlotW, "\" y2=\"", kTop + kPlotH,
                  "\"/>\n<line x1=\"", kLeft, "\" y1=\"", kTop, "\" x2=\"",
                  kLeft, "\" y2=\"", kTop + kPlotH, "\"/>\n");
  for (int t = 0; t <= 5; ++t) {
    const double s = t / 5.0;
    absl::StrAppend(&svg, "<text x=\"", Fixed(x_of(s)), "\" y=\"",
                    kTop + kPlotH + 16, "\" text-anchor=\"middle\" "
                    "stroke=\"none\">", Fixed(s, 1), "</text>\n");
  }
  absl::StrAppend(&svg, "<text x=\"", Fixed(kLeft - 6), "\" y=\"", kTop + 4,
                  "\" text-anchor=\"end\" stroke=\"none\">", Fixed(peak),
                  "</text>\n");
  absl::StrAppend(&svg, "<text x=\"", kWidth / 2, "\" y=\"", kHeight - 12,
                  "\" text-anchor=\"middle\" stroke=\"none\">treated neighbor "
                  "ratio (sigma)</text>\n</g>\n");

  // Legend.
  absl::StrAppend(
      &svg, "<g font-family=\"sans-serif\" font-size=\"12\">\n",
      "<rect x=\"", kWidth - 170, "\" y=\"", kTop, "\" width=\"12\" "
      "height=\"12\" fill=\"#1f77b4\"/>\n<text x=\"", kWidth - 152, "\" y=\"",
      kTop + 10, "\">treated egos (mean ", Fixed(exposure.mean_sigma_treated, 3),
      ")</text>\n<rect x=\"", kWidth - 170, "\" y=\"", kTop + 18,
      "\" width=\"12\" height=\"12\" fill=\"#ff7f0e\"/>\n<text x=\"",
      kWidth - 152, "\" y=\"", kTop + 28, "\">control egos (mean ",
      Fixed(exposure.mean_sigma_control, 3), ")</text>\n</g>\n</svg>\n");
  return svg;
}

RescaledValue Rescale(double value, double ci_width) {
  RescaledValue r;
  r.value = value / ci_width;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.3f%% ± 0.5%%", r.value);
  r.display = buf;
  return r;
}

std::string PerRepCsv(const SimReport& report) {
  std::string out =
      "rep,tau_hat,n1,n0,se,ci_low,ci_high,mean_sigma_t,mean_sigma_c,r\n";
  for (std::size_t r = 0; r < report.per_rep.size(); ++r) {
    const EstimateRecord& e = report.per_rep[r];
    absl::StrAppend(&out, r, ",", FormatDouble(e.tau_hat), ",", e.n1, ",",
                    e.n0, ",", FormatDouble(e.se), ",", FormatDouble(e.ci_low),
                    ",", FormatDouble(e.ci_high), ",",
                    FormatDouble(e.mean_sigma_t), ",",
                    FormatDouble(e.mean_sigma_c), ",",
                    FormatDouble(e.r_statistic), "\n");
  }
  return out;
}

}  // namespace egp::cli
