#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gstarx/explain.hpp"
#include "gstarx/graph.hpp"
#include "gstarx/metrics.hpp"
#include "gstarx/payoff.hpp"
#include "gstarx/values.hpp"

namespace gstarx {

using Json = nlohmann::ordered_json;

/// {"n": int, "edges": [[u,v],...], "features": [[...],...]?}
/// Exact duplicate edges are rejected; a reversed duplicate is treated as
/// directed notation for the same undirected edge and reported to
/// `warnings`. 0-based indices throughout.
Graph graph_from_json(const Json& j, std::ostream* warnings = nullptr);
Graph load_graph_file(const std::string& path, std::ostream* warnings = nullptr);

/// {"n": int, "entries": {"<mask as decimal>": value, ...}, "default": v?}
std::unique_ptr<TabularGame> payoff_from_json(const Json& j);
std::unique_ptr<TabularGame> load_payoff_file(const std::string& path);

/// {"layers": [W1, W2, ...], "pooling": "mean"|"max",
///  "readout_weight": [[...]], "readout_bias": [...]?}
/// Weight matrices are row-major nested arrays.
ToyMpModel model_from_json(const Json& j);
ToyMpModel load_model_file(const std::string& path);

/// Either {"graphs": [graph, ...]} or a bare array of graphs.
std::vector<Graph> dataset_from_json(const Json& j,
                                     std::ostream* warnings = nullptr);
std::vector<Graph> load_dataset_file(const std::string& path,
                                     std::ostream* warnings = nullptr);

Json to_json(const ValueVector& vv);
Json to_json(const MetricsBlock& m);
Json to_json(const ExplanationReport& report);

/// Serialized with two-space indentation and a trailing newline.
std::string dump_pretty(const Json& j);

Json parse_file(const std::string& path);

}  // namespace gstarx
