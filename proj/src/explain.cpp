#include "gstarx/explain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "gstarx/errors.hpp"

namespace gstarx {

std::vector<int> rank_nodes(const Eigen::VectorXd& phi) {
  std::vector<int> order(phi.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (phi[a] != phi[b]) return phi[a] > phi[b];
    return a < b;
  });
  return order;
}

ExplanationReport gstarx_explain(const Graph& g, const GraphScorer& f,
                                 const Eigen::VectorXd& baseline,
                                 const ExplainOptions& opts) {
  if (!(opts.gamma > 0.0 && opts.gamma < 1.0))
    throw InvalidInputError("gamma must lie strictly between 0 and 1");

  const int n = g.node_count();
  const double tau = opts.tau.value_or(default_tau(n));
  GstarxGame game(f, g, baseline);

  ExplanationReport report;
  report.gamma = opts.gamma;
  report.c_star = game.predicted_class();

  if (n <= opts.max_exact) {
    HnOptions hn = opts.hn;
    hn.threads = opts.threads;
    report.phi = compute_hn(g, game, tau, hn);
  } else {
    McConfig cfg;
    cfg.max_sample_size = opts.max_exact;
    cfg.samples = opts.samples.value_or(n);
    cfg.seed = opts.seed;
    cfg.tau = tau;
    cfg.hn = opts.hn;
    cfg.hn.threads = opts.threads;
    McResult mc = compute_hn_mc(g, game, cfg);
    report.phi = std::move(mc.value);
    report.uncovered = std::move(mc.uncovered);
  }

  int k = static_cast<int>(std::floor(opts.gamma * n));
  if (k < 1) {
    k = 1;
    report.k_floored_to_one = true;
  }
  const std::vector<int> order = rank_nodes(report.phi.phi);
  for (int r = 0; r < k; ++r) report.selected.insert(order[r]);

  if (opts.with_metrics) {
    report.metrics = compute_metrics(f, g, report.selected, report.c_star,
                                     baseline, report.phi.phi);
  }
  return report;
}

EgoGraph ego_convert(const Graph& g, int u, int hops) {
  if (hops < 1) throw InvalidInputError("ego graph needs at least one hop");
  const Coalition reach = khop_neighborhood(g, u, hops);
  InducedSubgraph sub = induced_subgraph(g, reach);
  return EgoGraph{std::move(sub.graph), reach.rank_of(u),
                  std::move(sub.nodes)};
}

Coalition lhop_restrict(const Graph& g, int i, int hops) {
  if (hops < 0) throw InvalidInputError("hop count must be non-negative");
  return khop_neighborhood(g, i, hops);
}

}  // namespace gstarx
