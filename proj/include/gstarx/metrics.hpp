#pragma once

#include <Eigen/Dense>

#include "gstarx/graph.hpp"
#include "gstarx/payoff.hpp"

namespace gstarx {

struct MetricsBlock {
  double fidelity = 0.0;
  double inv_fidelity = 0.0;
  double sparsity = 0.0;
  double n_fidelity = 0.0;
  double n_inv_fidelity = 0.0;
  double h_fidelity = 0.0;
  double entropy_sparsity = 0.0;
  double fidelity_empty_control = 0.0;  // fidelity of no selection; always 0
  bool degenerate_removal = false;     // fidelity fell back to the baseline
  bool h_fidelity_degenerate = false;  // harmonic mean hit its singular point
};

/// Predicted-class probability drop when the selected nodes are removed.
/// Removing everything is flagged and falls back to the baseline shift.
double fidelity(const GraphScorer& f, const Graph& g, const Coalition& sel,
                int c_star, const Eigen::VectorXd& baseline,
                bool* degenerate = nullptr);

/// Probability drop when only the selected nodes are kept. May be negative
/// when the selection alone predicts better than the whole graph.
double inv_fidelity(const GraphScorer& f, const Graph& g, const Coalition& sel,
                    int c_star);

/// Fraction of nodes excluded from the selection.
double sparsity(const Graph& g, const Coalition& sel);

/// Harmonic mean of size-normalized fidelity and flipped size-normalized
/// inverse fidelity, rescaled into [0, 1].
double h_fidelity(double fidelity_value, double inv_fidelity_value,
                  const Graph& g, const Coalition& sel,
                  bool* degenerate = nullptr);

/// Shannon entropy of the score distribution, using |phi| normalization so
/// signed scores still form a distribution. Natural log; 0 ln 0 = 0.
double entropy_sparsity(const Eigen::VectorXd& phi);

MetricsBlock compute_metrics(const GraphScorer& f, const Graph& g,
                             const Coalition& sel, int c_star,
                             const Eigen::VectorXd& baseline,
                             const Eigen::VectorXd& phi);

}  // namespace gstarx
