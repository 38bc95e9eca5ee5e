#include <doctest.h>

#include <cmath>

#include "gstarx/errors.hpp"
#include "gstarx/json_io.hpp"
#include "gstarx/mc.hpp"
#include "helpers.hpp"

using namespace gstarx;
using test::fixture_path;
using test::path_graph;
using test::random_game;

namespace {

/// Always hands back the full node set; turns the estimator into the exact
/// solver.
class FullSetSampler : public SamplingStrategy {
 public:
  Coalition sample(const Graph& g, int, std::uint64_t) const override {
    return g.nodes();
  }
};

}  // namespace

TEST_CASE("sample size bounds") {
  Graph p3 = path_graph(3);
  SplitMix64 rng(1);
  for (int t = 0; t < 50; ++t) {
    Coalition s = sample_subgraph(p3, 1, rng);
    CHECK(s.size() == 1);
  }
  for (int t = 0; t < 50; ++t) {
    Coalition s = sample_subgraph(p3, 3, rng);
    CHECK(s.size() >= 1);
    CHECK(s.size() <= 3);
    CHECK(is_connected(p3, s));
  }
}

TEST_CASE("frontier growth is forced when only one extension exists") {
  Graph p3 = path_graph(3);
  SplitMix64 rng(123);
  for (int t = 0; t < 20; ++t)
    CHECK(grow_connected(p3, 0, 2, rng) == Coalition::of({0, 1}));
  // requesting the whole path always reaches it
  for (int t = 0; t < 20; ++t)
    CHECK(grow_connected(p3, 1, 3, rng) == Coalition::full(3));
}

TEST_CASE("growth stops at the component boundary") {
  Graph two_islands(5, {{0, 1}, {2, 3}});
  SplitMix64 rng(5);
  for (int t = 0; t < 30; ++t) {
    Coalition s = grow_connected(two_islands, 0, 5, rng);
    CHECK(s == Coalition::of({0, 1}));
  }
  CHECK(grow_connected(two_islands, 4, 3, rng) == Coalition::single(4));
}

TEST_CASE("single-node graphs collapse to the singleton payoff") {
  Graph one(1);
  SplitMix64 rng(2);
  auto v = random_game(1, rng);
  McConfig cfg;
  cfg.max_sample_size = 1;
  cfg.samples = 25;
  McResult mc = compute_hn_mc(one, *v, cfg);
  CHECK(std::abs(mc.value.phi[0] - (*v)(Coalition::single(0))) < 1e-12);
  CHECK(mc.uncovered.empty());
  CHECK(mc.dropped_samples == 0);
}

TEST_CASE("a degenerate full-set sampler reproduces the exact solver") {
  SplitMix64 rng(10);
  Graph g = test::random_graph(5, 0.6, rng);
  auto v = random_game(5, rng);
  McConfig cfg;
  cfg.max_sample_size = 5;
  cfg.samples = 1;
  cfg.tau = 0.01;
  FullSetSampler full;
  McResult mc = compute_hn_mc(g, *v, cfg, &full);
  ValueVector exact = compute_hn(g, *v, 0.01);
  for (int i = 0; i < 5; ++i) CHECK(mc.value.phi[i] == exact.phi[i]);

  // averaging repeated identical samples stays within rounding of exact
  cfg.samples = 9;
  McResult mc9 = compute_hn_mc(g, *v, cfg, &full);
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(mc9.value.phi[i] - exact.phi[i]) <=
          4e-16 * std::abs(exact.phi[i]));
}

TEST_CASE("identical seeds give bitwise identical runs") {
  SplitMix64 rng(20);
  Graph g = test::random_graph(7, 0.45, rng);
  auto v = random_game(7, rng);
  McConfig cfg;
  cfg.max_sample_size = 4;
  cfg.samples = 60;
  cfg.seed = 9001;
  McResult a = compute_hn_mc(g, *v, cfg);
  McResult b = compute_hn_mc(g, *v, cfg);
  for (int i = 0; i < 7; ++i) CHECK(a.value.phi[i] == b.value.phi[i]);
  CHECK(a.uncovered == b.uncovered);

  cfg.seed = 1;
  McResult c = compute_hn_mc(g, *v, cfg);
  bool any_different = false;
  for (int i = 0; i < 7; ++i)
    any_different = any_different || (a.value.phi[i] != c.value.phi[i]);
  CHECK(any_different);
}

TEST_CASE("estimator metadata") {
  SplitMix64 rng(30);
  Graph g = test::random_graph(6, 0.5, rng);
  auto v = random_game(6, rng);
  McConfig cfg;
  cfg.max_sample_size = 3;
  cfg.samples = 40;
  cfg.seed = 7;
  McResult mc = compute_hn_mc(g, *v, cfg);
  CHECK(mc.value.method == "hn-mc");
  CHECK(mc.value.seed.value() == 7);
  CHECK(mc.value.samples.value() == 40);
  CHECK(mc.value.tau.value() == cfg.tau);
  CHECK(mc.dropped_samples == 0);
  int listed = 0;
  for (int i = 0; i < 6; ++i) listed += mc.sample_count(i);
  CHECK(listed > 0);
  for (int i : mc.uncovered) CHECK(mc.value.phi[i] == 0.0);
}

TEST_CASE("the frozen benchmark estimate lands inside three standard errors") {
  Graph g = load_graph_file(fixture_path("graph_k6.json"));
  auto v = load_payoff_file(fixture_path("payoff_k6_benchmark.json"));
  ValueVector exact = compute_hn(g, *v, 0.01);

  McConfig cfg;
  cfg.max_sample_size = 6;
  cfg.samples = 2000;
  cfg.seed = 0;
  cfg.tau = 0.01;
  McResult mc = compute_hn_mc(g, *v, cfg);
  CHECK(mc.uncovered.empty());
  for (int i = 0; i < 6; ++i) {
    const double err = std::abs(mc.value.phi[i] - exact.phi[i]);
    CHECK(err <= 3.0 * mc.standard_error(i));
  }
}

TEST_CASE("doubling the sample count does not inflate standard errors") {
  Graph g = load_graph_file(fixture_path("graph_k6.json"));
  auto v = load_payoff_file(fixture_path("payoff_k6_benchmark.json"));
  McConfig cfg;
  cfg.max_sample_size = 6;
  cfg.tau = 0.01;

  for (int i = 0; i < 6; ++i) {
    double se_small = 0.0, se_large = 0.0;
    for (std::uint64_t rep = 0; rep < 5; ++rep) {
      cfg.seed = 100 + rep;
      cfg.samples = 400;
      se_small += compute_hn_mc(g, *v, cfg).standard_error(i);
      cfg.samples = 800;
      se_large += compute_hn_mc(g, *v, cfg).standard_error(i);
    }
    CHECK(se_large <= se_small * 1.02);
  }
}

TEST_CASE("config validation") {
  Graph p3 = path_graph(3);
  SplitMix64 rng(1);
  auto v = random_game(3, rng);
  McConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(compute_hn_mc(p3, *v, cfg), InvalidInputError);
  cfg.samples = 1;
  cfg.max_sample_size = 0;
  CHECK_THROWS_AS(compute_hn_mc(p3, *v, cfg), InvalidInputError);
}
