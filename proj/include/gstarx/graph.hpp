#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "gstarx/coalition.hpp"

namespace gstarx {

/// Undirected simple graph with optional node features. Immutable once built.
class Graph {
 public:
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  void add_edge(int u, int v);
  void set_features(Eigen::MatrixXd features);

  int node_count() const { return n_; }
  int edge_count() const { return edge_count_; }
  bool has_edge(int u, int v) const;
  const Coalition& neighbors(int u) const;
  int degree(int u) const { return neighbors(u).size(); }
  Coalition nodes() const { return Coalition::full(n_); }

  bool has_features() const { return features_.rows() > 0; }
  const Eigen::MatrixXd& features() const { return features_; }
  int feature_dim() const { return static_cast<int>(features_.cols()); }

 private:
  void check_node(int u) const;

  int n_ = 0;
  int edge_count_ = 0;
  std::vector<Coalition> adj_;
  Eigen::MatrixXd features_;  // n x d, or 0 x 0 when absent
};

/// Components of the subgraph induced on a coalition, each one a Coalition.
/// Ordered by smallest member.
using Partition = std::vector<Coalition>;

/// S together with all graph neighbors of S.
Coalition neighbor_closure(const Graph& g, const Coalition& s);

/// Connected components of the subgraph induced on s.
Partition partition(const Graph& g, const Coalition& s);

/// True when the subgraph induced on s has exactly one component.
bool is_connected(const Graph& g, const Coalition& s);

/// Subgraph induced on a nonempty coalition, nodes reindexed to 0..|s|-1 in
/// ascending original order. `nodes[k]` is the original index of new node k.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> nodes;
};

InducedSubgraph induced_subgraph(const Graph& g, const Coalition& s);

/// Nodes within `hops` of i (including i itself).
Coalition khop_neighborhood(const Graph& g, int i, int hops);

}  // namespace gstarx
