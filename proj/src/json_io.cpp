#include "gstarx/json_io.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <utility>

#include "gstarx/errors.hpp"

namespace gstarx {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key))
    throw InvalidInputError(std::string("missing \"") + key + "\" field");
  return j.at(key);
}

Eigen::MatrixXd matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw InvalidInputError(std::string(what) +
                            " must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InvalidInputError(std::string(what) + " rows have ragged widths");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = row.at(c).get<double>();
  }
  return m;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(path + ": " + e.what());
  }
}

Graph graph_from_json(const Json& j, std::ostream* warnings) {
  const int n = require(j, "n").get<int>();
  Graph g(n);
  std::set<std::pair<int, int>> seen;
  for (const Json& e : require(j, "edges")) {
    if (!e.is_array() || e.size() != 2)
      throw InvalidInputError("edges must be [u,v] pairs");
    const int u = e.at(0).get<int>();
    const int v = e.at(1).get<int>();
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidInputError("edge endpoint outside [0,n)");
    if (u == v) throw InvalidInputError("self-loop at node " + std::to_string(u));
    if (seen.count({u, v}))
      throw InvalidInputError("duplicate edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ")");
    if (seen.count({v, u})) {
      // Directed notation for an edge we already have; keep it undirected.
      if (warnings)
        *warnings << "warning: edge [" << u << "," << v
                  << "] repeats [" << v << "," << u
                  << "]; edges are undirected\n";
      seen.insert({u, v});
      continue;
    }
    seen.insert({u, v});
    g.add_edge(u, v);
  }
  if (j.contains("features") && !j.at("features").is_null())
    g.set_features(matrix_from_json(j.at("features"), "features"));
  return g;
}

Graph load_graph_file(const std::string& path, std::ostream* warnings) {
  return graph_from_json(parse_file(path), warnings);
}

std::unique_ptr<TabularGame> payoff_from_json(const Json& j) {
  const int n = require(j, "n").get<int>();
  if (n < 1 || n > 62)
    throw InvalidInputError("payoff tables support 1..62 players");
  TabularGame::Table entries;
  for (const auto& [key, value] : require(j, "entries").items()) {
    std::uint64_t mask = 0;
    try {
      mask = std::stoull(key);
    } catch (const std::exception&) {
      throw InvalidInputError("payoff table key \"" + key +
                              "\" is not a decimal coalition mask");
    }
    if (mask >= (std::uint64_t{1} << n))
      throw InvalidInputError("payoff table key " + key +
                              " outside the 2^n range");
    entries.emplace(Coalition::from_mask(mask), value.get<double>());
  }
  std::optional<double> fallback;
  if (j.contains("default") && !j.at("default").is_null())
    fallback = j.at("default").get<double>();
  return std::make_unique<TabularGame>(n, std::move(entries), fallback);
}

std::unique_ptr<TabularGame> load_payoff_file(const std::string& path) {
  return payoff_from_json(parse_file(path));
}

ToyMpModel model_from_json(const Json& j) {
  ToyMpModel model;
  for (const Json& layer : require(j, "layers"))
    model.layers.push_back(matrix_from_json(layer, "layer"));
  const std::string pooling = require(j, "pooling").get<std::string>();
  if (pooling == "mean") {
    model.pooling = ToyMpModel::Pooling::kMean;
  } else if (pooling == "max") {
    model.pooling = ToyMpModel::Pooling::kMax;
  } else {
    throw InvalidInputError("pooling must be \"mean\" or \"max\"");
  }
  model.readout_weight = matrix_from_json(require(j, "readout_weight"),
                                          "readout_weight");
  if (j.contains("readout_bias") && !j.at("readout_bias").is_null()) {
    const Json& b = j.at("readout_bias");
    model.readout_bias.resize(static_cast<Eigen::Index>(b.size()));
    for (Eigen::Index i = 0; i < model.readout_bias.size(); ++i)
      model.readout_bias[i] = b.at(i).get<double>();
  } else {
    model.readout_bias = Eigen::VectorXd::Zero(model.readout_weight.rows());
  }
  if (model.readout_bias.size() != model.readout_weight.rows())
    throw InvalidInputError("readout bias length must match class count");
  for (std::size_t l = 1; l < model.layers.size(); ++l) {
    if (model.layers[l].cols() != model.layers[l - 1].rows())
      throw InvalidInputError("layer " + std::to_string(l) +
                              " width does not match the previous layer");
  }
  if (!model.layers.empty() &&
      model.readout_weight.cols() != model.layers.back().rows())
    throw InvalidInputError("readout width does not match the last layer");
  return model;
}

ToyMpModel load_model_file(const std::string& path) {
  return model_from_json(parse_file(path));
}

std::vector<Graph> dataset_from_json(const Json& j, std::ostream* warnings) {
  const Json& list = j.is_array() ? j : require(j, "graphs");
  if (!list.is_array()) throw InvalidInputError("dataset must be an array");
  std::vector<Graph> graphs;
  graphs.reserve(list.size());
  for (const Json& g : list) graphs.push_back(graph_from_json(g, warnings));
  return graphs;
}

std::vector<Graph> load_dataset_file(const std::string& path,
                                     std::ostream* warnings) {
  return dataset_from_json(parse_file(path), warnings);
}

Json to_json(const ValueVector& vv) {
  Json out;
  out["method"] = vv.method;
  out["phi"] = vector_to_json(vv.phi);
  if (vv.tau) out["tau"] = *vv.tau;
  if (vv.iterations) out["iterations"] = *vv.iterations;
  if (vv.seed) out["seed"] = *vv.seed;
  if (vv.samples) out["samples"] = *vv.samples;
  return out;
}

Json to_json(const MetricsBlock& m) {
  Json out;
  out["fidelity"] = m.fidelity;
  out["inv_fidelity"] = m.inv_fidelity;
  out["sparsity"] = m.sparsity;
  out["n_fidelity"] = m.n_fidelity;
  out["n_inv_fidelity"] = m.n_inv_fidelity;
  out["h_fidelity"] = m.h_fidelity;
  out["entropy_sparsity"] = m.entropy_sparsity;
  out["control_fidelity_empty"] = m.fidelity_empty_control;
  out["degenerate_removal"] = m.degenerate_removal;
  out["h_fidelity_degenerate"] = m.h_fidelity_degenerate;
  out["entropy_abs_normalized"] = true;
  return out;
}

Json to_json(const ExplanationReport& report) {
  Json out;
  out["selected"] = report.selected.nodes();
  out["gamma"] = report.gamma;
  out["phi"] = to_json(report.phi);
  out["c_star"] = report.c_star;
  if (report.metrics) out["metrics"] = to_json(*report.metrics);
  out["coverage"] = report.uncovered;
  out["k_floored_to_one"] = report.k_floored_to_one;
  return out;
}

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gstarx
