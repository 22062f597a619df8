#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heatgraph/stats.hpp"

namespace heatgraph::plot {

// Mean curve with its uniform band drawn as a translucent polygon.
std::string band_svg(const ConfidenceBand& band, const std::string& title = "");
// Columns: t, mean, lower, upper.
std::string band_csv(const ConfidenceBand& band);

struct RateCurve {
  std::string label;
  std::vector<double> sizes;
  std::vector<double> rates;
  std::vector<double> lower;  // 95% interval per size
  std::vector<double> upper;
};

/// Reads the per-size rates of an experiment summary JSON.
RateCurve rate_curve_from_json(const nlohmann::json& summary, const std::string& label);

/// Rejection (or coverage) rate against sample size with interval bars; a
/// dashed horizontal reference line is drawn at `reference` when given.
std::string rate_svg(const std::vector<RateCurve>& curves, std::optional<double> reference,
                     const std::string& title = "");
// Columns: label, size, rate, lower, upper.
std::string rate_csv(const std::vector<RateCurve>& curves);

}  // namespace heatgraph::plot
