#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "heatgraph/generators.hpp"
#include "heatgraph/graph.hpp"
#include "heatgraph/persistence.hpp"
#include "heatgraph/stats.hpp"

namespace heatgraph::io {

using nlohmann::json;

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

// Graph: {"n": int, "edges": [[u, v, w], ...]} with u < v.
json to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const json& j);

// {"ord0": [[b, d], ...], "rel1": ..., "ext0": ..., "ext1": ...}
json to_json(const ExtendedDiagramSet& d);
ExtendedDiagramSet diagrams_from_json(const json& j);

// Model configuration, e.g. {"model": "er", "n": 50, "p": 0.5}.
json to_json(const GraphModel& m);
GraphModel graph_model_from_json(const json& j);
json to_json(const WeightScheme& w);
WeightScheme weight_scheme_from_json(const json& j);
json to_json(const PairModel& pm);
PairModel pair_model_from_json(const json& j);

struct Dataset {
  PairModel config;
  std::uint64_t seed = 0;
  std::vector<GraphPair> pairs;
};

// {"config": <pair model>, "seed": s, "pairs": [{"first": g, "second": g}, ...]}
json to_json(const Dataset& d);
Dataset dataset_from_json(const json& j);

// CSV: header row = grid times, then one row per pair.
std::string process_to_csv(const ProcessMatrix& pm);
ProcessMatrix process_from_csv(std::string_view text);

json to_json(const ConfidenceBand& band);
ConfidenceBand band_from_json(const json& j);
json to_json(const TwoSampleResult& r);

std::string read_file(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);
/// Refuses to replace an existing file unless `force` is set (ValidationError).
void write_file(const std::filesystem::path& path, std::string_view content, bool force = true);
// Pretty-printed JSON with a trailing newline.
std::string dump(const json& j);

}  // namespace heatgraph::io
