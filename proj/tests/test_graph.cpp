#include <doctest.h>

#include <sstream>

#include "gstarx/errors.hpp"
#include "gstarx/graph.hpp"
#include "gstarx/json_io.hpp"
#include "helpers.hpp"

using namespace gstarx;
using test::complete_graph;
using test::path_graph;
using test::random_graph;

TEST_CASE("coalition basics") {
  Coalition c = Coalition::of({0, 2, 5});
  CHECK(c.size() == 3);
  CHECK(c.contains(2));
  CHECK(!c.contains(1));
  CHECK(c.lowest() == 0);
  CHECK(c.rank_of(5) == 2);
  CHECK(c.nth(1) == 2);
  CHECK(c.to_string() == "{0,2,5}");
  CHECK(Coalition{}.empty());
  CHECK(Coalition{}.lowest() == -1);
  CHECK((c - Coalition::single(2)) == Coalition::of({0, 5}));
  CHECK(Coalition::from_mask(0b101).nodes() == std::vector<int>{0, 2});

  Coalition wide = Coalition::of({3, 200});
  CHECK(wide.size() == 2);
  CHECK(wide.rank_of(200) == 1);
}

TEST_CASE("neighbor closure") {
  Graph p3 = path_graph(3);
  CHECK(neighbor_closure(p3, Coalition::single(0)) == Coalition::of({0, 1}));
  CHECK(neighbor_closure(p3, Coalition{}).empty());

  // {is, an, hour} pulls in exactly {good} and {spend}.
  Graph sentence = test::sentence_graph();
  Coalition s = Coalition::of({0, 12, 13});
  CHECK(neighbor_closure(sentence, s) == Coalition::of({0, 3, 11, 12, 13}));

  CHECK_THROWS_AS(neighbor_closure(p3, Coalition::single(7)),
                  NodeOutOfRangeError);
}

TEST_CASE("partition into connected components") {
  Graph sentence = test::sentence_graph();
  Partition parts = partition(sentence, Coalition::of({0, 12, 13}));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Coalition::single(0));     // {is}
  CHECK(parts[1] == Coalition::of({12, 13}));  // {an, hour}

  Graph p3 = path_graph(3);
  Partition ends = partition(p3, Coalition::of({0, 2}));
  REQUIRE(ends.size() == 2);
  CHECK(ends[0] == Coalition::single(0));
  CHECK(ends[1] == Coalition::single(2));

  Graph k4 = complete_graph(4);
  SplitMix64 rng(11);
  for (int t = 0; t < 10; ++t) {
    std::uint64_t mask = 1 + rng.bounded(15);
    Partition p = partition(k4, Coalition::from_mask(mask));
    CHECK(p.size() == 1);
    CHECK(p[0] == Coalition::from_mask(mask));
  }

  CHECK(partition(p3, Coalition{}).empty());
}

TEST_CASE("is_connected") {
  Graph p3 = path_graph(3);
  CHECK(!is_connected(p3, Coalition::of({0, 2})));
  CHECK(is_connected(p3, Coalition::of({0, 1, 2})));
  CHECK(is_connected(Graph(1), Coalition::single(0)));
  CHECK_THROWS_AS(is_connected(p3, Coalition{}), EmptyCoalitionError);
}

TEST_CASE("induced subgraph") {
  Graph p3 = path_graph(3);

  InducedSubgraph adj = induced_subgraph(p3, Coalition::of({0, 1}));
  CHECK(adj.graph.node_count() == 2);
  CHECK(adj.graph.edge_count() == 1);
  CHECK(adj.nodes == std::vector<int>{0, 1});

  InducedSubgraph apart = induced_subgraph(p3, Coalition::of({0, 2}));
  CHECK(apart.graph.node_count() == 2);
  CHECK(apart.graph.edge_count() == 0);
  CHECK(apart.nodes == std::vector<int>{0, 2});

  InducedSubgraph k3 =
      induced_subgraph(complete_graph(4), Coalition::of({0, 1, 2}));
  CHECK(k3.graph.edge_count() == 3);

  CHECK_THROWS_AS(induced_subgraph(p3, Coalition{}), EmptyCoalitionError);
}

TEST_CASE("induced subgraph keeps feature rows") {
  Graph p3 = path_graph(3);
  Eigen::MatrixXd f(3, 2);
  f << 1, 2, 3, 4, 5, 6;
  p3.set_features(f);
  InducedSubgraph sub = induced_subgraph(p3, Coalition::of({0, 2}));
  CHECK(sub.graph.features().row(0) == f.row(0));
  CHECK(sub.graph.features().row(1) == f.row(2));
}

TEST_CASE("closure and partition properties on random graphs") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.bounded(6));
    Graph g = random_graph(n, 0.4, rng);
    const std::uint64_t universe = (std::uint64_t{1} << n) - 1;
    Coalition s = Coalition::from_mask(rng.bounded(universe + 1));
    Coalition t = s | Coalition::from_mask(rng.bounded(universe + 1));

    Coalition closure = neighbor_closure(g, s);
    CHECK(s.is_subset_of(closure));
    CHECK(closure.size() <= n);
    // monotone in the coalition
    CHECK(closure.is_subset_of(neighbor_closure(g, t)));

    Partition parts = partition(g, s);
    Coalition covered;
    int total = 0;
    for (const Coalition& comp : parts) {
      CHECK(!comp.empty());
      CHECK(!covered.intersects(comp));
      CHECK(is_connected(g, comp));
      // maximality: no edges from a component back into s
      CHECK(((neighbor_closure(g, comp) - comp) & s).empty());
      covered |= comp;
      total += comp.size();
    }
    CHECK(covered == s);
    CHECK(total == s.size());
  }
}

TEST_CASE("inducing on the full set reproduces the graph") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.bounded(7));
    Graph g = random_graph(n, 0.5, rng);
    InducedSubgraph sub = induced_subgraph(g, g.nodes());
    CHECK(sub.graph.edge_count() == g.edge_count());
    for (int u = 0; u < n; ++u) {
      CHECK(sub.nodes[u] == u);
      CHECK(sub.graph.neighbors(u) == g.neighbors(u));
    }
  }
}

TEST_CASE("graph construction rejects bad edges") {
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 0), InvalidInputError);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(1, 0), InvalidInputError);
  CHECK_THROWS_AS(g.add_edge(0, 3), NodeOutOfRangeError);
  CHECK_THROWS_AS(Graph(0), InvalidInputError);
}

TEST_CASE("graph json validation") {
  Json ok = Json::parse(R"({"n":3,"edges":[[0,1],[1,2]]})");
  Graph g = graph_from_json(ok);
  CHECK(g.node_count() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(!g.has_features());

  CHECK_THROWS_AS(
      graph_from_json(Json::parse(R"({"n":2,"edges":[[0,1],[0,1]]})")),
      InvalidInputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n":2,"edges":[[0,0]]})")),
                  InvalidInputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n":2,"edges":[[0,2]]})")),
                  InvalidInputError);
  CHECK_THROWS_AS(
      graph_from_json(
          Json::parse(R"({"n":2,"edges":[[0,1]],"features":[[1]]})")),
      DimensionMismatchError);

  // reversed pair is directed notation: symmetrized with a warning
  std::ostringstream warn;
  Graph rev =
      graph_from_json(Json::parse(R"({"n":2,"edges":[[0,1],[1,0]]})"), &warn);
  CHECK(rev.edge_count() == 1);
  CHECK(warn.str().find("undirected") != std::string::npos);
}

TEST_CASE("khop neighborhood") {
  Graph p5 = path_graph(5);
  CHECK(khop_neighborhood(p5, 0, 2) == Coalition::of({0, 1, 2}));
  CHECK(khop_neighborhood(p5, 2, 0) == Coalition::single(2));
  CHECK(khop_neighborhood(p5, 2, 10) == p5.nodes());
}
