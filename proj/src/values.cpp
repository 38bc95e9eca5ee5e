#include "gstarx/values.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <thread>
#include <utility>

#include "gstarx/errors.hpp"
#include "gstarx/numeric.hpp"

namespace gstarx {

namespace {

void check_players(const CharacteristicFunction& v, int n) {
  if (v.players() != n)
    throw DimensionMismatchError("game has " + std::to_string(v.players()) +
                                 " players but the graph has " +
                                 std::to_string(n) + " nodes");
}

void check_exact_cap(int n, int cap, const char* what) {
  if (n > cap)
    throw ExactCapExceededError(std::string(what) + ": " + std::to_string(n) +
                                " players exceeds the cap of " +
                                std::to_string(cap));
}

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> adj(g.node_count());
  for (int u = 0; u < g.node_count(); ++u) adj[u] = g.neighbors(u).low_mask();
  return adj;
}

// Component of the lowest set bit of `mask` within `mask`.
std::uint64_t lowest_component(const std::vector<std::uint64_t>& adj,
                               std::uint64_t mask) {
  std::uint64_t comp = mask & (~mask + 1);
  std::uint64_t frontier = comp;
  while (frontier) {
    std::uint64_t next = 0;
    std::uint64_t it = frontier;
    while (it) {
      next |= adj[std::countr_zero(it)];
      it &= it - 1;
    }
    next &= mask & ~comp;
    comp |= next;
    frontier = next;
  }
  return comp;
}

// Runs fn(chunk_index) over [0, chunks); the schedule is work-stealing but
// every chunk computes an identical, self-contained piece, so the result is
// independent of the worker count.
template <class Fn>
void run_chunks(std::int64_t chunks, int threads, Fn&& fn) {
  if (threads <= 1 || chunks <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::int64_t> cursor{0};
  auto worker = [&] {
    for (std::int64_t c; (c = cursor.fetch_add(1)) < chunks;) fn(c);
  };
  std::vector<std::thread> pool;
  int spawn = std::min<std::int64_t>(threads, chunks) - 1;
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

// next = h * h, computed in fixed 64-row slabs so the arithmetic never
// depends on the thread budget.
void square_into(const Eigen::MatrixXd& h, Eigen::MatrixXd& next,
                 int threads) {
  const Eigen::Index rows = h.rows();
  const Eigen::Index slab = 64;
  const std::int64_t chunks = (rows + slab - 1) / slab;
  run_chunks(chunks, threads, [&](std::int64_t c) {
    Eigen::Index r0 = c * slab;
    Eigen::Index len = std::min(slab, rows - r0);
    next.middleRows(r0, len).noalias() = h.middleRows(r0, len) * h;
  });
}

double binomial(int n, int k) {
  // Exact in 64-bit integers for every n this library accepts.
  std::uint64_t num = 1;
  for (int i = 0; i < k; ++i) num = num * (n - i) / (i + 1);
  return static_cast<double>(num);
}

Eigen::VectorXd shapley_phi_from_table(const std::vector<double>& table,
                                       int n) {
  std::vector<double> weight(n);
  for (int k = 0; k < n; ++k) weight[k] = 1.0 / (n * binomial(n - 1, k));

  const std::uint64_t size = std::uint64_t{1} << n;
  Eigen::VectorXd phi(n);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    CompensatedSum acc;
    for (std::uint64_t mask = 0; mask < size; ++mask) {
      if (mask & bit) continue;
      acc.add(weight[std::popcount(mask)] *
              (table[mask | bit] - table[mask]));
    }
    phi[i] = acc.value();
  }
  return phi;
}

}  // namespace

double default_tau(int n) { return std::min(0.01, 1.0 / n); }

bool tau_within_sufficient_bound(int n, double tau) {
  return tau > 0.0 && tau < 2.0 / n;
}

std::vector<double> payoff_table(const CharacteristicFunction& v, int n,
                                 int threads) {
  check_exact_cap(n, kDefaultExactCap, "payoff table");
  check_players(v, n);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<double> table(size);
  table[0] = 0.0;
  const std::int64_t chunk = 1024;
  const std::int64_t chunks = (size + chunk - 1) / chunk;
  run_chunks(chunks, threads, [&](std::int64_t c) {
    std::uint64_t lo = std::max<std::uint64_t>(1, c * chunk);
    std::uint64_t hi = std::min<std::uint64_t>(size, (c + 1) * chunk);
    for (std::uint64_t mask = lo; mask < hi; ++mask)
      table[mask] = v.value(Coalition::from_mask(mask));
  });
  return table;
}

double surplus(const CharacteristicFunction& v, int j, const Coalition& s) {
  if (s.contains(j))
    throw MemberOverlapError("surplus: node " + std::to_string(j) +
                             " already belongs to the coalition");
  return v(s | Coalition::single(j)) - v(s) - v(Coalition::single(j));
}

double associated_payoff(const CharacteristicFunction& v, const Graph& g,
                         const Coalition& s, double tau) {
  if (s.empty()) throw EmptyCoalitionError("associated_payoff: empty coalition");
  if (tau < 0.0 || tau > 1.0)
    throw InvalidInputError("tau must lie in [0,1]");
  CompensatedSum total;
  for (const Coalition& comp : partition(g, s)) {
    CompensatedSum surpluses;
    (neighbor_closure(g, comp) - comp).for_each([&](int j) {
      surpluses.add(surplus(v, j, comp));
    });
    total.add(v(comp) + tau * surpluses.value());
  }
  return total.value();
}

AssociatedMatrix build_associated_matrix(const Graph& g, double tau,
                                         int matrix_cap) {
  const int n = g.node_count();
  check_exact_cap(n, matrix_cap, "associated matrix");
  if (!(tau > 0.0) || tau > 1.0)
    throw InvalidInputError("tau must lie in (0,1]");

  const auto adj = adjacency_masks(g);
  const std::int64_t dim = (std::int64_t{1} << n) - 1;
  AssociatedMatrix out;
  out.tau = tau;
  out.n = n;
  out.h = Eigen::MatrixXd::Zero(dim, dim);

  for (std::uint64_t mask = 1; mask <= static_cast<std::uint64_t>(dim);
       ++mask) {
    auto row = out.h.row(static_cast<Eigen::Index>(mask) - 1);
    std::uint64_t rest = mask;
    while (rest) {
      const std::uint64_t comp = lowest_component(adj, rest);
      rest &= ~comp;

      std::uint64_t closure = comp;
      std::uint64_t it = comp;
      while (it) {
        closure |= adj[std::countr_zero(it)];
        it &= it - 1;
      }
      std::uint64_t outside = closure & ~comp;
      row[comp - 1] += 1.0 - tau * std::popcount(outside);
      while (outside) {
        const int j = std::countr_zero(outside);
        outside &= outside - 1;
        row[(comp | (std::uint64_t{1} << j)) - 1] += tau;
        row[(std::uint64_t{1} << j) - 1] -= tau;
      }
    }
  }
  return out;
}

HnSolver::HnSolver(const Graph& g, double tau, HnOptions opts)
    : n_(g.node_count()), tau_(tau) {
  AssociatedMatrix am = build_associated_matrix(g, tau, opts.matrix_cap);
  Eigen::MatrixXd h = std::move(am.h);
  Eigen::MatrixXd next(h.rows(), h.cols());
  bool converged = false;
  for (int k = 1; k <= opts.max_squarings; ++k) {
    square_into(h, next, opts.threads);
    const double delta = (next - h).array().abs().maxCoeff();
    h.swap(next);
    squarings_ = k;
    if (std::isfinite(delta) && delta < opts.tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergenceError(
        "limit matrix did not converge within " +
        std::to_string(opts.max_squarings) +
        " squarings (tau=" + std::to_string(tau) + ", n=" +
        std::to_string(n_) + ")");
  limit_ = std::move(h);
}

ValueVector HnSolver::solve(const CharacteristicFunction& v,
                            int threads) const {
  check_players(v, n_);
  const auto table = payoff_table(v, n_, threads);
  const std::int64_t dim = limit_.rows();
  Eigen::VectorXd payoffs(dim);
  for (std::int64_t mask = 1; mask <= dim; ++mask)
    payoffs[mask - 1] = table[mask];

  ValueVector out;
  out.method = "hn";
  out.tau = tau_;
  out.iterations = squarings_;
  out.phi.resize(n_);
  for (int i = 0; i < n_; ++i)
    out.phi[i] = limit_.row((std::int64_t{1} << i) - 1).dot(payoffs);
  return out;
}

ValueVector compute_hn(const Graph& g, const CharacteristicFunction& v,
                       double tau, HnOptions opts) {
  HnSolver solver(g, tau, opts);
  return solver.solve(v, opts.threads);
}

ValueVector shapley_exact(const CharacteristicFunction& v, int exact_cap,
                          int threads) {
  const int n = v.players();
  check_exact_cap(n, exact_cap, "shapley");
  ValueVector out;
  out.method = "shapley";
  out.phi = shapley_phi_from_table(payoff_table(v, n, threads), n);
  return out;
}

std::vector<double> transformed_game_table(const Graph& g,
                                           const CharacteristicFunction& v,
                                           int exact_cap, int threads) {
  const int n = g.node_count();
  check_exact_cap(n, exact_cap, "transformed game");
  const auto table = payoff_table(v, n, threads);
  const auto adj = adjacency_masks(g);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<double> transformed(size);
  transformed[0] = 0.0;
  // Peeling the component of the lowest bit lets every entry reuse the
  // already-filled value of the remaining smaller mask.
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    const std::uint64_t comp = lowest_component(adj, mask);
    transformed[mask] = table[comp] + transformed[mask & ~comp];
  }
  return transformed;
}

ValueVector myerson(const Graph& g, const CharacteristicFunction& v,
                    int exact_cap, int threads) {
  check_players(v, g.node_count());
  ValueVector out;
  out.method = "myerson";
  out.phi = shapley_phi_from_table(
      transformed_game_table(g, v, exact_cap, threads), g.node_count());
  return out;
}

namespace {

void enumerate_connected(const std::vector<std::uint64_t>& adj,
                         std::uint64_t full, std::uint64_t s,
                         std::uint64_t banned,
                         std::vector<Coalition>& out) {
  out.push_back(Coalition::from_mask(s));
  std::uint64_t frontier = 0;
  std::uint64_t it = s;
  while (it) {
    frontier |= adj[std::countr_zero(it)];
    it &= it - 1;
  }
  frontier &= full & ~s & ~banned;
  std::uint64_t used = 0;
  while (frontier) {
    const std::uint64_t c = frontier & (~frontier + 1);
    frontier &= frontier - 1;
    enumerate_connected(adj, full, s | c, banned | used, out);
    used |= c;
  }
}

}  // namespace

std::vector<Coalition> connected_subgraphs_containing(const Graph& g, int i,
                                                      int exact_cap) {
  const int n = g.node_count();
  check_exact_cap(n, exact_cap, "connected subgraph enumeration");
  if (i < 0 || i >= n)
    throw NodeOutOfRangeError("node " + std::to_string(i) +
                              " outside the graph");
  std::vector<Coalition> out;
  enumerate_connected(adjacency_masks(g),
                      (std::uint64_t{1} << n) - 1,
                      std::uint64_t{1} << i, 0, out);
  return out;
}

int boundary_edge_count(const Graph& g, const Coalition& u) {
  int l = 0;
  u.for_each([&](int a) { l += (g.neighbors(a) - u).size(); });
  return l;
}

double cshapley_coefficient(const Graph& g, const Coalition& u) {
  if (u.empty()) throw EmptyCoalitionError("coefficient of an empty subgraph");
  const int l = boundary_edge_count(g, u);
  if (l == 0) return 1.0 / g.node_count();
  double coeff = static_cast<double>(l);
  for (int t = u.size(); t <= u.size() + l; ++t) coeff /= t;
  return coeff;
}

double cshapley_corrected(const Graph& g, const CharacteristicFunction& v,
                          int i, int exact_cap) {
  check_players(v, g.node_count());
  const auto transformed = transformed_game_table(g, v, exact_cap);
  const std::uint64_t bit = std::uint64_t{1} << i;
  CompensatedSum acc;
  for (const Coalition& u : connected_subgraphs_containing(g, i, exact_cap)) {
    const std::uint64_t mask = u.low_mask();
    const double marginal = transformed[mask] - transformed[mask & ~bit];
    acc.add(cshapley_coefficient(g, u) * marginal);
  }
  return acc.value();
}

ValueVector cshapley_corrected_all(const Graph& g,
                                   const CharacteristicFunction& v,
                                   int exact_cap) {
  ValueVector out;
  out.method = "cshapley";
  out.phi.resize(g.node_count());
  for (int i = 0; i < g.node_count(); ++i)
    out.phi[i] = cshapley_corrected(g, v, i, exact_cap);
  return out;
}

}  // namespace gstarx
