#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gstarx/graph.hpp"
#include "gstarx/payoff.hpp"

namespace gstarx {

// Methods that enumerate 2^n payoff tables refuse larger games.
inline constexpr int kDefaultExactCap = 22;
// Methods that build the dense (2^n - 1)^2 coalition matrix need a tighter
// cap; 13 already means a 67-million-entry matrix.
inline constexpr int kDefaultMatrixCap = 13;

/// Per-node attribution with provenance.
struct ValueVector {
  Eigen::VectorXd phi;
  std::string method;
  std::optional<double> tau;
  std::optional<int> iterations;         // squarings to converge
  std::optional<std::uint64_t> seed;     // sampling methods only
  std::optional<int> samples;            // sampling methods only
};

/// tau used when the caller does not pick one: 0.01, lowered to 1/n for very
/// large games so it stays inside the sufficient convergence range.
double default_tau(int n);

/// Sufficient condition for limit convergence: 0 < tau < 2/n.
bool tau_within_sufficient_bound(int n, double tau);

/// Dense payoff table indexed by coalition mask; entry 0 is v(empty) = 0.
/// Worker count never changes the result, only the fill schedule.
std::vector<double> payoff_table(const CharacteristicFunction& v, int n,
                                 int threads = 1);

/// Extra payoff a coalition generates by cooperating with outside player j:
/// p(j, S) = v(S + j) - v(S) - v({j}).
double surplus(const CharacteristicFunction& v, int j, const Coalition& s);

/// One step of the surplus-allocation transform. Connected coalitions absorb
/// a tau fraction of the surplus from each closure neighbor; disconnected
/// ones are the sum of their components' transformed payoffs.
double associated_payoff(const CharacteristicFunction& v, const Graph& g,
                         const Coalition& s, double tau);

/// Matrix form of the surplus-allocation transform over nonempty coalitions.
/// Row and column index of coalition mask m is m - 1.
struct AssociatedMatrix {
  Eigen::MatrixXd h;
  double tau = 0.0;
  int n = 0;
};

AssociatedMatrix build_associated_matrix(const Graph& g, double tau,
                                         int matrix_cap = kDefaultMatrixCap);

struct HnOptions {
  double tol = 1e-9;       // max-abs entry delta between squarings
  int max_squarings = 60;
  int threads = 1;
  int matrix_cap = kDefaultMatrixCap;
};

/// Squares the associated-game matrix to its limit once, then solves any
/// number of games on the same (graph, tau) pair.
class HnSolver {
 public:
  HnSolver(const Graph& g, double tau, HnOptions opts = {});

  const Eigen::MatrixXd& limit() const { return limit_; }
  int squarings() const { return squarings_; }
  double tau() const { return tau_; }

  ValueVector solve(const CharacteristicFunction& v, int threads = 1) const;

 private:
  int n_;
  double tau_;
  Eigen::MatrixXd limit_;
  int squarings_ = 0;
};

/// Hamiache-Navarro value: phi_i is the limit game evaluated on {i}.
ValueVector compute_hn(const Graph& g, const CharacteristicFunction& v,
                       double tau, HnOptions opts = {});

/// Shapley value by direct subset enumeration.
ValueVector shapley_exact(const CharacteristicFunction& v,
                          int exact_cap = kDefaultExactCap, int threads = 1);

/// Component-decomposed payoff table: (v/G)(S) sums v over the connected
/// components of S. Indexed by mask, entry 0 is 0.
std::vector<double> transformed_game_table(const Graph& g,
                                           const CharacteristicFunction& v,
                                           int exact_cap = kDefaultExactCap,
                                           int threads = 1);

/// Myerson value: Shapley value of the component-decomposed game.
ValueVector myerson(const Graph& g, const CharacteristicFunction& v,
                    int exact_cap = kDefaultExactCap, int threads = 1);

/// All connected induced subgraphs that contain node i, in the discovery
/// order of a deterministic grow-from-seed enumeration.
std::vector<Coalition> connected_subgraphs_containing(
    const Graph& g, int i, int exact_cap = kDefaultExactCap);

/// Number of graph edges with exactly one endpoint in u.
int boundary_edge_count(const Graph& g, const Coalition& u);

/// Aggregation coefficient of a connected subgraph u in the corrected
/// C-Shapley sum: l / ((|u|+l)(|u|+l-1)...|u|) with l boundary edges, or 1/n
/// when u has no boundary.
double cshapley_coefficient(const Graph& g, const Coalition& u);

/// Corrected C-Shapley value of node i: coefficients above applied to
/// marginal contributions of the component-decomposed game.
double cshapley_corrected(const Graph& g, const CharacteristicFunction& v,
                          int i, int exact_cap = kDefaultExactCap);

ValueVector cshapley_corrected_all(const Graph& g,
                                   const CharacteristicFunction& v,
                                   int exact_cap = kDefaultExactCap);

}  // namespace gstarx
