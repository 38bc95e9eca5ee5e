#pragma once

#include <cstdint>
#include <vector>

#include "gstarx/graph.hpp"
#include "gstarx/numeric.hpp"
#include "gstarx/payoff.hpp"
#include "gstarx/values.hpp"

namespace gstarx {

struct McConfig {
  int max_sample_size = 10;  // largest subgraph solved exactly per sample
  int samples = 1;
  std::uint64_t seed = 0;
  double tau = 0.01;
  HnOptions hn;
};

/// Grows a connected coalition from `seed_node` to `target_size` members by
/// uniform random frontier expansion; stops early when the component is
/// exhausted. Deterministic given the generator state.
Coalition grow_connected(const Graph& g, int seed_node, int target_size,
                         SplitMix64& rng);

/// One sampled coalition: uniform seed node, size uniform in
/// [1, min(max_size, n)], then frontier growth. Always connected.
Coalition sample_subgraph(const Graph& g, int max_size, SplitMix64& rng);

/// Pluggable sampling distribution for the Monte-Carlo estimator.
class SamplingStrategy {
 public:
  virtual ~SamplingStrategy() = default;
  virtual Coalition sample(const Graph& g, int max_size,
                           std::uint64_t stream_seed) const = 0;
};

/// Default strategy: the frontier-growth sampler above.
class FrontierGrowthSampler : public SamplingStrategy {
 public:
  Coalition sample(const Graph& g, int max_size,
                   std::uint64_t stream_seed) const override;
};

struct McResult {
  ValueVector value;            // method "hn-mc"
  std::vector<int> uncovered;   // nodes that appeared in no sample; scored 0
  int dropped_samples = 0;      // samples whose solve failed to converge

  /// Per-node contributions in draw order.
  std::vector<std::vector<double>> node_samples;

  int sample_count(int i) const {
    return static_cast<int>(node_samples[i].size());
  }
  double sample_mean(int i) const;
  double sample_stddev(int i) const;
  /// Standard error of the per-node mean.
  double standard_error(int i) const;
};

/// Monte-Carlo estimate of the Hamiache-Navarro value: solves the induced
/// subgame on each sampled coalition exactly and averages the per-node
/// results. Each sample draws its generator from (seed, sample index), so
/// any execution order reproduces the same estimate.
McResult compute_hn_mc(const Graph& g, const CharacteristicFunction& v,
                       const McConfig& cfg,
                       const SamplingStrategy* strategy = nullptr);

}  // namespace gstarx
