#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gstarx/graph.hpp"
#include "gstarx/json_io.hpp"
#include "gstarx/numeric.hpp"
#include "gstarx/payoff.hpp"

namespace gstarx::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(GSTARX_TEST_FIXTURES) + "/" + name;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph random_graph(int n, double p, SplitMix64& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform() < p) g.add_edge(u, v);
  return g;
}

inline std::unique_ptr<TabularGame> random_game(int n, SplitMix64& rng,
                                                double lo = -1.0,
                                                double hi = 1.0) {
  TabularGame::Table table;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < size; ++mask)
    table.emplace(Coalition::from_mask(mask), rng.uniform(lo, hi));
  return std::make_unique<TabularGame>(n, std::move(table));
}

/// Additive game v(S) = sum of per-node weights.
inline std::unique_ptr<TabularGame> additive_game(
    const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  TabularGame::Table table;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    double v = 0.0;
    Coalition::from_mask(mask).for_each([&](int i) { v += weights[i]; });
    table.emplace(Coalition::from_mask(mask), v);
  }
  return std::make_unique<TabularGame>(n, std::move(table));
}

/// Scorer that returns the same distribution for every graph.
class ConstantScorer : public GraphScorer {
 public:
  explicit ConstantScorer(Eigen::VectorXd probs) : probs_(std::move(probs)) {}
  Eigen::VectorXd forward(const Graph&) const override { return probs_; }
  int class_count() const override { return static_cast<int>(probs_.size()); }

 private:
  Eigen::VectorXd probs_;
};

/// Superseded aggregation coefficient for connected explanations; it
/// hard-codes two boundary edges for every subgraph, which is only right in
/// the interior of a line graph. Kept as a counterexample fixture.
inline double legacy_cshapley_coefficient(int subgraph_size) {
  const double u = subgraph_size;
  return 2.0 / ((u + 2.0) * (u + 1.0) * u);
}

/// Words of the running sentence example, with a dependency-style edge set.
/// Index map: 0 is, 1 still, 2 quite, 3 good, 4 natured, 5 and, 6 not, 7 a,
/// 8 bad, 9 way, 10 to, 11 spend, 12 an, 13 hour.
inline Graph sentence_graph() {
  return Graph(14, {{0, 3},
                    {1, 3},
                    {2, 3},
                    {4, 3},
                    {3, 9},
                    {6, 8},
                    {7, 8},
                    {8, 9},
                    {9, 10},
                    {10, 11},
                    {11, 13},
                    {12, 13}});
}

}  // namespace gstarx::test
