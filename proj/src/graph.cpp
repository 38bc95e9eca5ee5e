#include "gstarx/graph.hpp"

#include <string>

#include "gstarx/errors.hpp"

namespace gstarx {

Graph::Graph(int n) : n_(n) {
  if (n < 1) throw InvalidInputError("graph needs at least one node");
  if (n > kMaxNodes)
    throw InvalidInputError("graph exceeds the " + std::to_string(kMaxNodes) +
                            "-node build limit");
  adj_.resize(static_cast<std::size_t>(n));
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_node(int u) const {
  if (u < 0 || u >= n_)
    throw NodeOutOfRangeError("node " + std::to_string(u) + " outside [0," +
                              std::to_string(n_) + ")");
}

void Graph::add_edge(int u, int v) {
  check_node(u);
  check_node(v);
  if (u == v)
    throw InvalidInputError("self-loop at node " + std::to_string(u));
  if (has_edge(u, v))
    throw InvalidInputError("duplicate edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ")");
  adj_[u].insert(v);
  adj_[v].insert(u);
  ++edge_count_;
}

bool Graph::has_edge(int u, int v) const {
  check_node(u);
  check_node(v);
  return adj_[u].contains(v);
}

const Coalition& Graph::neighbors(int u) const {
  check_node(u);
  return adj_[u];
}

void Graph::set_features(Eigen::MatrixXd features) {
  if (features.rows() != n_)
    throw DimensionMismatchError("feature rows (" +
                                 std::to_string(features.rows()) +
                                 ") must equal node count (" +
                                 std::to_string(n_) + ")");
  features_ = std::move(features);
}

namespace {

void check_members(const Graph& g, const Coalition& s) {
  if (!s.is_subset_of(g.nodes()))
    throw NodeOutOfRangeError("coalition has members outside the graph");
}

}  // namespace

Coalition neighbor_closure(const Graph& g, const Coalition& s) {
  check_members(g, s);
  Coalition out = s;
  s.for_each([&](int u) { out |= g.neighbors(u); });
  return out;
}

Partition partition(const Graph& g, const Coalition& s) {
  check_members(g, s);
  Partition comps;
  Coalition seen;
  // Visiting members in ascending order yields components ordered by their
  // smallest member.
  s.for_each([&](int u) {
    if (seen.contains(u)) return;
    Coalition comp = Coalition::single(u);
    Coalition frontier = comp;
    while (!frontier.empty()) {
      Coalition next;
      frontier.for_each([&](int w) { next |= g.neighbors(w); });
      next &= s;
      next -= comp;
      comp |= next;
      frontier = next;
    }
    seen |= comp;
    comps.push_back(comp);
  });
  return comps;
}

bool is_connected(const Graph& g, const Coalition& s) {
  if (s.empty()) throw EmptyCoalitionError("is_connected: empty coalition");
  return partition(g, s).size() == 1;
}

InducedSubgraph induced_subgraph(const Graph& g, const Coalition& s) {
  if (s.empty()) throw EmptyCoalitionError("induced_subgraph: empty coalition");
  check_members(g, s);

  std::vector<int> nodes = s.nodes();
  const int k = static_cast<int>(nodes.size());
  Graph sub(k);
  for (int a = 0; a < k; ++a) {
    Coalition shared = g.neighbors(nodes[a]) & s;
    shared.for_each([&](int orig) {
      if (orig > nodes[a]) sub.add_edge(a, s.rank_of(orig));
    });
  }
  if (g.has_features()) {
    Eigen::MatrixXd f(k, g.feature_dim());
    for (int a = 0; a < k; ++a) f.row(a) = g.features().row(nodes[a]);
    sub.set_features(std::move(f));
  }
  return {std::move(sub), std::move(nodes)};
}

Coalition khop_neighborhood(const Graph& g, int i, int hops) {
  if (i < 0 || i >= g.node_count())
    throw NodeOutOfRangeError("node " + std::to_string(i) +
                              " outside the graph");
  Coalition reached = Coalition::single(i);
  Coalition frontier = reached;
  for (int h = 0; h < hops && !frontier.empty(); ++h) {
    Coalition next;
    frontier.for_each([&](int u) { next |= g.neighbors(u); });
    next -= reached;
    reached |= next;
    frontier = next;
  }
  return reached;
}

}  // namespace gstarx
