#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gstarx/graph.hpp"
#include "gstarx/mc.hpp"
#include "gstarx/metrics.hpp"
#include "gstarx/payoff.hpp"
#include "gstarx/values.hpp"

namespace gstarx {

struct ExplainOptions {
  double gamma = 0.5;                 // sparsity budget, in (0,1)
  std::optional<double> tau;          // defaults to default_tau(n)
  int max_exact = 10;                 // exact solve up to this many nodes
  std::optional<int> samples;         // defaults to n
  std::uint64_t seed = 0;
  bool with_metrics = false;
  int threads = 1;
  HnOptions hn;
};

struct ExplanationReport {
  Coalition selected;
  double gamma = 0.0;
  ValueVector phi;
  int c_star = 0;
  std::optional<MetricsBlock> metrics;
  std::vector<int> uncovered;   // nodes never sampled (Monte-Carlo runs)
  bool k_floored_to_one = false;  // budget rounded down to zero nodes
};

/// Scores nodes with the Hamiache-Navarro value of the scorer-induced game
/// (exactly for small graphs, by sampling otherwise) and keeps the
/// max(1, floor(gamma * n)) best ones. Ties break toward lower node indices.
ExplanationReport gstarx_explain(const Graph& g, const GraphScorer& f,
                                 const Eigen::VectorXd& baseline,
                                 const ExplainOptions& opts);

/// Node indices sorted by descending score, ascending index on ties.
std::vector<int> rank_nodes(const Eigen::VectorXd& phi);

/// Ego graph for node-classification tasks: the `hops`-neighborhood of u as
/// its own graph, plus u's position in it so a scorer can read out the
/// center instead of pooling.
struct EgoGraph {
  Graph graph;
  int center = 0;
  std::vector<int> nodes;  // new index -> original index
};

EgoGraph ego_convert(const Graph& g, int u, int hops);

/// Nodes within `hops` of i; restricts coalition enumeration when scoring a
/// single node. Useless once `hops` reaches the graph diameter.
Coalition lhop_restrict(const Graph& g, int i, int hops);

}  // namespace gstarx
