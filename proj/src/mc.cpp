#include "gstarx/mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gstarx/errors.hpp"

namespace gstarx {

Coalition grow_connected(const Graph& g, int seed_node, int target_size,
                         SplitMix64& rng) {
  Coalition s = Coalition::single(seed_node);
  while (s.size() < target_size) {
    Coalition frontier = neighbor_closure(g, s) - s;
    if (frontier.empty()) break;  // component exhausted
    const int pick = static_cast<int>(
        rng.bounded(static_cast<std::uint64_t>(frontier.size())));
    s.insert(frontier.nth(pick));
  }
  return s;
}

Coalition sample_subgraph(const Graph& g, int max_size, SplitMix64& rng) {
  if (max_size < 1) throw InvalidInputError("sample size bound must be >= 1");
  const int n = g.node_count();
  const int cap = std::min(max_size, n);
  const int size = 1 + static_cast<int>(rng.bounded(cap));
  const int seed_node = static_cast<int>(rng.bounded(n));
  return grow_connected(g, seed_node, size, rng);
}

Coalition FrontierGrowthSampler::sample(const Graph& g, int max_size,
                                        std::uint64_t stream_seed) const {
  SplitMix64 rng(stream_seed);
  return sample_subgraph(g, max_size, rng);
}

namespace {

/// The parent game seen through a sampled coalition: players are reindexed
/// 0..k-1 and payoffs delegate to the parent, so the parent's memo is shared
/// across overlapping samples.
class RestrictedGame : public CharacteristicFunction {
 public:
  RestrictedGame(const CharacteristicFunction& parent,
                 const std::vector<int>& nodes)
      : CharacteristicFunction(static_cast<int>(nodes.size())),
        parent_(parent),
        nodes_(nodes) {}

 protected:
  double evaluate(const Coalition& s) const override {
    Coalition original;
    s.for_each([&](int k) { original.insert(nodes_[k]); });
    return parent_.value(original);
  }

 private:
  const CharacteristicFunction& parent_;
  const std::vector<int>& nodes_;
};

}  // namespace

double McResult::sample_mean(int i) const {
  return node_samples[i].empty() ? 0.0 : compensated_mean(node_samples[i]);
}

double McResult::sample_stddev(int i) const {
  const auto& xs = node_samples[i];
  if (xs.size() < 2) return 0.0;
  const double mean = compensated_mean(xs);
  CompensatedSum sq;
  for (double x : xs) sq.add((x - mean) * (x - mean));
  return std::sqrt(sq.value() / (static_cast<double>(xs.size()) - 1.0));
}

double McResult::standard_error(int i) const {
  const auto& xs = node_samples[i];
  if (xs.empty()) return 0.0;
  return sample_stddev(i) / std::sqrt(static_cast<double>(xs.size()));
}

McResult compute_hn_mc(const Graph& g, const CharacteristicFunction& v,
                       const McConfig& cfg, const SamplingStrategy* strategy) {
  if (cfg.samples < 1) throw InvalidInputError("sample count must be >= 1");
  if (cfg.max_sample_size < 1 || cfg.max_sample_size > cfg.hn.matrix_cap)
    throw InvalidInputError("max sample size must lie in [1, matrix cap]");
  const int n = g.node_count();
  const FrontierGrowthSampler default_strategy;
  const SamplingStrategy& sampler =
      strategy ? *strategy : static_cast<const SamplingStrategy&>(
                                 default_strategy);

  McResult out;
  out.node_samples.resize(n);
  for (int j = 0; j < cfg.samples; ++j) {
    const Coalition s = sampler.sample(
        g, std::min(cfg.max_sample_size, n),
        derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(j)));
    InducedSubgraph sub = induced_subgraph(g, s);
    RestrictedGame game(v, sub.nodes);
    ValueVector phi;
    try {
      phi = compute_hn(sub.graph, game, cfg.tau, cfg.hn);
    } catch (const NoConvergenceError&) {
      ++out.dropped_samples;
      continue;
    }
    for (std::size_t k = 0; k < sub.nodes.size(); ++k)
      out.node_samples[sub.nodes[k]].push_back(phi.phi[k]);
  }

  out.value.method = "hn-mc";
  out.value.tau = cfg.tau;
  out.value.seed = cfg.seed;
  out.value.samples = cfg.samples;
  out.value.phi.resize(n);
  for (int i = 0; i < n; ++i) {
    if (out.node_samples[i].empty()) {
      out.uncovered.push_back(i);
      out.value.phi[i] = 0.0;
    } else {
      out.value.phi[i] = compensated_mean(out.node_samples[i]);
    }
  }
  return out;
}

}  // namespace gstarx
