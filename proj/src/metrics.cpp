#include "gstarx/metrics.hpp"

#include <cmath>

#include "gstarx/errors.hpp"
#include "gstarx/numeric.hpp"

namespace gstarx {

double fidelity(const GraphScorer& f, const Graph& g, const Coalition& sel,
                int c_star, const Eigen::VectorXd& baseline, bool* degenerate) {
  if (degenerate) *degenerate = false;
  const double whole = f.forward(g)[c_star];
  const Coalition rest = g.nodes() - sel;
  if (rest.empty()) {
    if (degenerate) *degenerate = true;
    return whole - baseline[c_star];
  }
  return whole - f.forward(induced_subgraph(g, rest).graph)[c_star];
}

double inv_fidelity(const GraphScorer& f, const Graph& g, const Coalition& sel,
                    int c_star) {
  if (sel.empty())
    throw EmptyCoalitionError("inv_fidelity of an empty selection");
  return f.forward(g)[c_star] -
         f.forward(induced_subgraph(g, sel).graph)[c_star];
}

double sparsity(const Graph& g, const Coalition& sel) {
  return 1.0 - static_cast<double>(sel.size()) / g.node_count();
}

double h_fidelity(double fidelity_value, double inv_fidelity_value,
                  const Graph& g, const Coalition& sel, bool* degenerate) {
  if (degenerate) *degenerate = false;
  const double kept = static_cast<double>(sel.size()) / g.node_count();
  const double m1 = fidelity_value * (1.0 - kept);
  const double m2 = inv_fidelity_value * kept;
  const double denom = 2.0 + m1 - m2;
  if (denom <= 0.0) {
    // Only reachable at m1 = -1, m2 = 1, where the harmonic mean collapses.
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return (1.0 + m1) * (1.0 - m2) / denom;
}

double entropy_sparsity(const Eigen::VectorXd& phi) {
  CompensatedSum total;
  for (Eigen::Index i = 0; i < phi.size(); ++i) total.add(std::abs(phi[i]));
  const double norm = total.value();
  if (norm <= 0.0)
    throw AllZeroScoresError("entropy of an all-zero score vector");
  CompensatedSum entropy;
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    const double p = std::abs(phi[i]) / norm;
    if (p > 0.0) entropy.add(-p * std::log(p));
  }
  return entropy.value();
}

MetricsBlock compute_metrics(const GraphScorer& f, const Graph& g,
                             const Coalition& sel, int c_star,
                             const Eigen::VectorXd& baseline,
                             const Eigen::VectorXd& phi) {
  MetricsBlock m;
  m.fidelity = fidelity(f, g, sel, c_star, baseline, &m.degenerate_removal);
  m.inv_fidelity = inv_fidelity(f, g, sel, c_star);
  m.sparsity = sparsity(g, sel);
  const double kept = static_cast<double>(sel.size()) / g.node_count();
  m.n_fidelity = m.fidelity * (1.0 - kept);
  m.n_inv_fidelity = m.inv_fidelity * kept;
  m.h_fidelity =
      h_fidelity(m.fidelity, m.inv_fidelity, g, sel, &m.h_fidelity_degenerate);
  m.entropy_sparsity = entropy_sparsity(phi);
  m.fidelity_empty_control = fidelity(f, g, Coalition{}, c_star, baseline);
  return m;
}

}  // namespace gstarx
